import json
import shutil

import pytest

import core.config as config_module
from core.registry import get_registry
from main import main
from plugins.morse.codec import load_morse
from plugins.morse.presentation import width
from tests.conftest import ASSETS, PROJECT_ROOT
from tests.test_foliation import FINGER_TREFOIL_ELIMINATED

CABLE = "index 2; s+ 1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_usage_errors_exit_with_one(capsys):
    for argv in ([], ["frobnicate"], ["satellite", "trefoil"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 1
    capsys.readouterr()


def test_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", str(PROJECT_ROOT / "catalog" / "trefoil.morse"))
    assert code == 0
    assert out == "ok: 7 events\n"

    bad = tmp_path / "bad.morse"
    bad.write_text("cup 0\ncup x\n", encoding="utf-8")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2
    assert "line 2" in err

    link = tmp_path / "link.morse"
    link.write_text("cup 0\ncup 2\ncap 0\ncap 0\n", encoding="utf-8")
    assert run(capsys, "validate", str(link))[0] == 2


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "trefoil")
    assert code == 0
    assert "levels  2 4 2" in out
    assert "width   8" in out

    code, out, _ = run(capsys, "--json", "invariants", "figure_eight")
    assert code == 0
    assert json.loads(out)["width"] == 8

    assert run(capsys, "invariants", "nope")[0] == 3


def test_satellite(capsys, tmp_path):
    out_path = tmp_path / "cable.morse"
    code, out, _ = run(capsys, "--json", "satellite", "trefoil", "--braid", CABLE, "--out", str(out_path))
    assert code == 0
    data = json.loads(out)
    assert (data["width"], data["bridge"], data["trunk"]) == (32, 4, 8)
    assert width(load_morse(out_path)) == 32

    code, out, _ = run(capsys, "satellite", "figure_eight", "--braid", "index 3; s+ 1; s+ 2", "--framing", "1")
    assert code == 0
    assert out.startswith("satellite: winding 3, framing 1")
    assert "width   72" in out


def test_satellite_domain_errors(capsys):
    assert run(capsys, "satellite", "trefoil", "--braid", "index 2")[0] == 3
    assert run(capsys, "satellite", "trefoil", "--braid", CABLE, "--site", "5")[0] == 3
    assert run(capsys, "satellite", "trefoil", "--braid", "index 2; s+ 3")[0] == 3


def test_sweep_writes_dot_files(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", "trefoil", "--braid", CABLE, "--dot", str(tmp_path))
    assert code == 0
    assert "witness level 8: trunk(r) = 4" in out
    dots = sorted(tmp_path.glob("level_*.dot"))
    assert len(dots) == 17
    assert dots[0].read_text(encoding="utf-8") == 'graph level_0 {\n  "root" [label="B 0"];\n}\n'


def test_sweep_without_witness(capsys):
    code, out, _ = run(capsys, "sweep", "unknot", "--braid", CABLE)
    assert code == 3
    assert "witness: none" in out


def test_foliation(capsys):
    code, out, _ = run(capsys, "foliation", "unknot", "--braid", "index 1")
    assert code == 0
    assert out.splitlines()[0] == "tmin t0"

    code, out, _ = run(capsys, "foliation", "--fol", str(ASSETS / "finger_trefoil.fol"), "--eliminate")
    assert code == 0
    assert out == FINGER_TREFOIL_ELIMINATED

    code, out, _ = run(capsys, "--json", "foliation", "--fol", str(ASSETS / "finger_trefoil.fol"), "--eliminate")
    assert json.loads(out)["disk_extremum_audit"] is True

    assert run(capsys, "foliation")[0] == 1


def test_foliation_with_repeated_saddle_input(capsys, tmp_path):
    path = tmp_path / "twice.fol"
    path.write_text("tmin a\nsad i a a -> b\ntmax b\n", encoding="utf-8")
    code, _, err = run(capsys, "foliation", "--fol", str(path))
    assert code == 3
    assert "named twice" in err


def test_search(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "trefoil", "--iters", "0")
    assert code == 0
    assert out.startswith("width 8 -> 8 (chain 0, 0 accepted moves)\n")

    out_path = tmp_path / "best.morse"
    code, out, _ = run(
        capsys, "--json", "search", "trefoil", "--iters", "50", "--seed", "4", "--trace", "--out", str(out_path),
    )
    assert code == 0
    data = json.loads(out)
    assert data["initial_width"] == 8
    assert data["width"] == 8
    assert "trace" in data
    assert width(load_morse(out_path)) == 8


def test_search_bound_and_iteration_errors(capsys):
    assert run(capsys, "search", "trefoil", "--iters", "0", "--winding", "2")[0] == 4
    assert run(capsys, "search", "trefoil", "--iters", "-3")[0] == 1


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    assert "trefoil" in out
    assert "2-bridge, nontrivial" in out

    code, out, _ = run(capsys, "--json", "catalog", "list")
    assert [k["name"] for k in json.loads(out)["knots"]] == ["trefoil", "figure_eight", "unknot"]


@pytest.fixture
def rebuilt_catalog(monkeypatch):
    monkeypatch.setattr(config_module, "_cached_config", None)
    registry = get_registry()
    registry.unregister("knot_catalog")
    yield
    # 恢复按默认配置构建的目录
    registry.unregister("knot_catalog")
    registry.auto_discover(["plugins.catalog"])


def test_catalog_self_check_runs_before_every_command(capsys, tmp_path, rebuilt_catalog):
    broken = tmp_path / "catalog"
    broken.mkdir()
    shutil.copy(PROJECT_ROOT / "catalog" / "trefoil.morse", broken / "trefoil.morse")
    (broken / "catalog.yaml").write_text(
        "knots:\n  - {name: trefoil, file: trefoil.morse, bridge: 2, width: 10}\n", encoding="utf-8",
    )
    config = tmp_path / "config.yaml"
    config.write_text(f"catalog:\n  dir: '{broken.as_posix()}'\n", encoding="utf-8")

    code, out, err = run(capsys, "--config", str(config), "validate", str(PROJECT_ROOT / "catalog" / "unknot.morse"))
    assert code == 4
    assert out == ""
    assert err.startswith("error:")
