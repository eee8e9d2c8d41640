import random
import re

import pytest
from hypothesis import given, settings, strategies as st

from core.errors import IllegalMove
from plugins.morse.generator import random_presentation
from plugins.morse.presentation import cap, crossing, cup, validate, width
from plugins.satellite.cable import cable
from plugins.search.annealer import (
    SearchConfig,
    WidthSearch,
    chain_seed,
    minimize_width,
    run_chain,
)
from plugins.search.moves import (
    Move,
    MoveKind,
    apply_move,
    legal_moves,
    predicted_delta,
    propose_move,
)

TRACE_LINE = re.compile(r"^iter \d+ width \d+ move (far_commute|slide_crossing|cancel_pair|create_pair)$")


@pytest.fixture
def zigzag_unknot():
    return validate([cup(0), cup(2), cap(1), cap(0)])


@pytest.fixture
def fattened_trefoil():
    return validate([cup(0), cup(0), cap(1), cup(2), crossing(1), crossing(1), crossing(1), cap(1), cap(0)])


def test_unknot_only_allows_creation(unknot):
    moves = legal_moves(unknot)
    assert moves == [
        Move(MoveKind.CREATE_PAIR, 1, 0, False),
        Move(MoveKind.CREATE_PAIR, 1, 0, True),
        Move(MoveKind.CREATE_PAIR, 1, 1, False),
        Move(MoveKind.CREATE_PAIR, 1, 1, True),
    ]


def test_cancel_zigzag(zigzag_unknot, unknot):
    move = Move(MoveKind.CANCEL_PAIR, 1)
    assert move in legal_moves(zigzag_unknot)
    assert predicted_delta(zigzag_unknot, move) == -6
    assert apply_move(zigzag_unknot, move) == unknot
    assert width(zigzag_unknot) == 8


@pytest.mark.parametrize("left", [False, True])
def test_create_then_cancel_restores_the_word(unknot, left):
    created = apply_move(unknot, Move(MoveKind.CREATE_PAIR, 1, 0, left))
    assert len(created) == 4
    assert width(created) == width(unknot) + 6
    assert apply_move(created, Move(MoveKind.CANCEL_PAIR, 1)) == unknot


def test_far_commute_is_an_involution(trefoil):
    move = Move(MoveKind.FAR_COMMUTE, 0)
    assert move in legal_moves(trefoil)
    swapped = apply_move(trefoil, move)
    assert swapped.events[:2] == (cup(0), cup(0))
    assert apply_move(swapped, move) == trefoil


def test_slide_crossing_past_a_cap(trefoil):
    # x+ 1 之后的 cap 1 与交叉共享股，不能交换
    assert Move(MoveKind.SLIDE_CROSSING, 4) not in legal_moves(trefoil)
    word = validate([cup(0), cup(2), cup(4), crossing(0), cap(3), cap(1), cap(0)])
    move = Move(MoveKind.SLIDE_CROSSING, 3)
    assert predicted_delta(word, move) == 0
    moved = apply_move(word, move)
    assert moved.events == (cup(0), cup(2), cup(4), cap(3), crossing(0), cap(1), cap(0))
    assert width(moved) == width(word) == 18


def test_illegal_moves(unknot, trefoil):
    with pytest.raises(IllegalMove):
        apply_move(unknot, Move(MoveKind.CANCEL_PAIR, 5))
    with pytest.raises(IllegalMove):
        apply_move(unknot, Move(MoveKind.FAR_COMMUTE, 0))
    with pytest.raises(IllegalMove):
        apply_move(trefoil, Move(MoveKind.SLIDE_CROSSING, 0))
    with pytest.raises(IllegalMove):
        apply_move(unknot, Move(MoveKind.CREATE_PAIR, 1, 2))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_predicted_delta_matches_recomputed_width(seed):
    rng = random.Random(seed)
    p = random_presentation(rng, max_events=30)
    moves = legal_moves(p)
    for move in rng.sample(moves, min(20, len(moves))):
        q = apply_move(p, move)
        assert width(q) - width(p) == predicted_delta(p, move)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_proposed_moves_are_legal(seed):
    rng = random.Random(seed)
    p = random_presentation(rng, max_events=30)
    for _ in range(50):
        move = propose_move(p, rng, max_events=40)
        if move is not None:
            assert move in legal_moves(p)
            assert len(apply_move(p, move)) <= 40


def test_search_config_validation():
    for kwargs in ({"max_iterations": 0}, {"decay": 1.0}, {"chains": 0}, {"initial_temperature": 0}):
        with pytest.raises(ValueError):
            SearchConfig(**kwargs)


def test_chain_seed():
    assert chain_seed(0, 0) == 0
    assert chain_seed(2, 3) == 2_000_009


def test_chains_are_deterministic(fattened_trefoil):
    cfg = SearchConfig(seed=7, max_iterations=300)
    first = run_chain(fattened_trefoil, cfg, chain=1)
    second = run_chain(fattened_trefoil, cfg, chain=1)
    assert first == second
    assert all(TRACE_LINE.match(line) for line in first.trace)
    assert first.width <= first.initial_width == 14


def test_parallel_and_serial_agree(fattened_trefoil):
    serial = minimize_width(fattened_trefoil, SearchConfig(seed=2, max_iterations=200, chains=2))
    parallel = minimize_width(fattened_trefoil, SearchConfig(seed=2, max_iterations=200, chains=2, workers=2))
    assert serial == parallel


def test_search_recovers_trefoil_width(fattened_trefoil):
    result = minimize_width(fattened_trefoil, SearchConfig(seed=1, max_iterations=5000, chains=4))
    assert result.initial_width == 14
    assert result.width == 8


def test_search_never_goes_below_satellite_bound(trefoil_cable2):
    word = cable(trefoil_cable2)
    result = minimize_width(word, SearchConfig(seed=3, max_iterations=500, winding=2))
    assert result.width == 32


def test_width_search_service_overrides():
    service = WidthSearch(seed=5, max_iterations=100)
    cfg = service.config(seed=None, chains=3)
    assert (cfg.seed, cfg.max_iterations, cfg.chains) == (5, 100, 3)
    assert service.defaults.chains == 1


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(1, 11))
def test_long_search_respects_satellite_bound(trefoil_cable2, seed):
    # winding 设置时低于 8n² 会抛 BoundViolation
    result = minimize_width(cable(trefoil_cable2), SearchConfig(seed=seed, max_iterations=100_000, winding=2))
    assert result.width >= 32


def _fatten(p, rng: random.Random, pairs: int):
    for _ in range(pairs):
        creations = [m for m in legal_moves(p) if m.kind is MoveKind.CREATE_PAIR]
        p = apply_move(p, rng.choice(creations))
    return p


@pytest.mark.slow
def test_long_search_recovers_fattened_cable(trefoil_cable2):
    recovered = 0
    for seed in range(1, 11):
        start = _fatten(cable(trefoil_cable2), random.Random(100 + seed), 3)
        assert width(start) > 32
        result = minimize_width(start, SearchConfig(seed=seed, max_iterations=100_000, winding=2))
        assert result.width >= 32
        recovered += result.width == 32
    assert recovered >= 8
