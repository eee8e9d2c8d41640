import sys

from scripts import corollary_table
from tests.conftest import PROJECT_ROOT


def test_cable_pattern_is_a_full_cycle():
    pattern = corollary_table.cable_pattern(4)
    assert pattern.index == 4
    assert [letter.generator for letter in pattern.letters] == [1, 2, 3]


def test_corollary_table_reproduces_the_bounds(monkeypatch, capsys):
    monkeypatch.setattr(
        sys, "argv", ["corollary_table.py", "--max-n", "3", "--catalog", str(PROJECT_ROOT / "catalog")],
    )
    assert corollary_table.main() == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 1 + 2 * 3
    assert "MISMATCH" not in "\n".join(lines)
    assert lines[-1].split() == ["figure_eight", "3", "72", "72", "6", "6", "12", "12"]
