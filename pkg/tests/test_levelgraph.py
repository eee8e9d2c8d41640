import random

import pytest

from core.errors import NoWitness, NotATree, ParseError
from plugins.foliation.induced import induced_foliation
from plugins.levelgraph.graph import (
    audit_level,
    build_graph,
    corollary1_witness,
    lemma5_bound,
    nontrivial_levels,
    trunk_r,
)
from plugins.levelgraph.sphere import (
    ROOT,
    LevelCurve,
    LevelSphere,
    Side,
    dump_level_sphere,
    dump_levels,
    load_level_sphere,
    parse_level_sphere,
    sweep_levels,
)
from plugins.satellite.cable import SatelliteSpec
from tests.conftest import cable_pattern


@pytest.fixture
def trefoil_levels(trefoil_cable2):
    return sweep_levels(induced_foliation(trefoil_cable2), trefoil_cable2)


@pytest.fixture
def six_endpoints(assets) -> LevelSphere:
    return load_level_sphere(assets / "figure3.level")


@pytest.mark.parametrize("m, n, expected", [
    (0, 5, 0),
    (2, 1, 2),
    (3, 1, 4),
    (4, 1, 4),
    (3, 2, 8),
    (4, 2, 8),
    (6, 2, 12),
])
def test_lemma5_bound(m, n, expected):
    assert lemma5_bound(m, n) == expected


def test_empty_level_is_a_single_vertex():
    g = build_graph(LevelSphere())
    assert list(g.graph.nodes) == [ROOT]
    assert trunk_r(g) == 0
    assert g.endpoints_in_a()


def test_trefoil_sweep_levels(trefoil_levels):
    assert len(trefoil_levels) == 17
    assert trefoil_levels[0].total_points == 0
    assert nontrivial_levels(trefoil_levels) == tuple(range(4, 13))
    assert [trunk_r(build_graph(s)) for s in trefoil_levels] == [0] * 4 + [2] * 4 + [4] + [2] * 4 + [0] * 4


def test_two_tubes_form_a_star(trefoil_levels):
    s = trefoil_levels[4]
    g = build_graph(s)
    assert g.side(ROOT) is Side.B
    assert sorted(g.endpoints()) == ["t1", "t2"]
    assert g.is_bipartite()
    assert s.total_points == 4


def test_widest_level_is_a_four_leaf_star(trefoil_levels):
    s = trefoil_levels[8]
    g = build_graph(s)
    assert dict(g.graph.degree())[ROOT] == 4
    assert trunk_r(g) == 4
    assert g.endpoints_in_a()
    assert s.total_points == lemma5_bound(4, 2) == 8
    assert all(abs(c.signed) == 2 for c in s.essential_curves())
    assert audit_level(s, 2)


def test_bubble_points_join_the_outer_region(trefoil_levels):
    s = trefoil_levels[6]
    bubble = s.curve("t3")
    assert not bubble.essential
    assert bubble.extremum == "min"
    root = next(r for r in s.regions() if r.name == ROOT)
    assert root.k_points == 2
    assert root.signed == 0


@pytest.mark.parametrize("name", ["trefoil", "figure_eight"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_every_swept_level_passes(catalog, name, n):
    spec = SatelliteSpec(catalog.load(name), cable_pattern(n))
    levels = sweep_levels(induced_foliation(spec), spec)
    for s in levels:
        g = build_graph(s)
        assert g.is_bipartite()
        assert g.endpoints_in_a()
        assert audit_level(s, n)
        assert s.total_signed == 0
    witness = corollary1_witness(levels)
    assert trunk_r(build_graph(levels[witness])) == 4
    assert levels[witness].total_points == 4 * n


def test_unknotted_tube_has_no_witness(unknot):
    spec = SatelliteSpec(unknot, cable_pattern(2))
    levels = sweep_levels(induced_foliation(spec), spec)
    with pytest.raises(NoWitness):
        corollary1_witness(levels)
    with pytest.raises(NoWitness):
        corollary1_witness([])


def test_six_endpoint_fixture(six_endpoints):
    s = six_endpoints
    g = build_graph(s)
    assert g.graph.number_of_nodes() == 10
    assert trunk_r(g) == 6
    assert g.is_bipartite()
    assert g.endpoints_in_a()
    assert s.total_points == 8
    assert s.region_of("d1") == "g1"
    assert s.region_of("d2") == ROOT
    assert audit_level(s, 1)
    assert not audit_level(s, 2)


def test_six_endpoint_fixture_to_dot(six_endpoints):
    dot = build_graph(six_endpoints).to_dot("fig3")
    assert dot.startswith("graph fig3 {\n")
    assert '  "g4" [label="A 1"];' in dot
    assert '  "root" [label="B 2"];' in dot
    assert dot.count(" -- ") == 9
    assert dot.endswith("}\n")


def test_level_text_round_trip(six_endpoints, trefoil_levels):
    assert parse_level_sphere(dump_level_sphere(six_endpoints)) == six_endpoints
    for s in trefoil_levels:
        assert parse_level_sphere(dump_level_sphere(s)) == s
    assert dump_levels(trefoil_levels[:1]) == "# level 0\nroot B 0 0\n"


def test_inconsistent_nesting_is_not_a_tree():
    with pytest.raises(NotATree):
        build_graph(parse_level_sphere("root B 0 0\ncurve a e b A 0 0\ncurve b e a B 0 0\n"))
    with pytest.raises(NotATree):
        build_graph(parse_level_sphere("root B 0 0\ncurve a i b A 0 0\ncurve b i a A 0 0\n"))


@pytest.mark.parametrize("text", [
    "curve a e root A 0 0\n",
    "root B 0 0\nroot B 0 0\n",
    "root B 0 0\ncurve a e root C 0 0\n",
    "root B 0 0\ncurve a x root A 0 0\n",
    "root B 0 0\ncurve a e nowhere A 0 0\n",
    "root B 0 0\ncurve a e root A one 0\n",
])
def test_level_parse_errors(text):
    with pytest.raises(ParseError):
        parse_level_sphere(text)


def _random_level_sphere(rng: random.Random, n: int):
    """
    随机构造一个满足树结构的层球面，返回 (层球面, 叶子数)。

    根区域在 W 一侧，每个 W 侧区域至少有一个子区域，叶子都落在 V 侧并各带 n 个点；
    非本质曲线只往所在区域里加点。
    """
    essential = []
    sides = {None: Side.B}
    children = {None: 0}
    for i in range(rng.randint(0, 8)):
        parent = rng.choice([None] + [c["name"] for c in essential])
        name = f"e{i}"
        essential.append({"name": name, "parent": parent, "side": sides[parent].opposite})
        sides[name] = sides[parent].opposite
        children[name] = 0
        children[parent] += 1

    extra = 0
    for c in list(essential):
        if c["side"] is Side.B and children[c["name"]] == 0:
            essential.append({"name": f"leaf{extra}", "parent": c["name"], "side": Side.A})
            children[c["name"]] += 1
            extra += 1
    while essential and children[None] < 2:
        essential.append({"name": f"leaf{extra}", "parent": None, "side": Side.A})
        children[None] += 1
        extra += 1

    curves = []
    leaves = 0
    for c in essential:
        leaf = children.get(c["name"], 0) == 0
        leaves += leaf
        curves.append(LevelCurve(
            name=c["name"], essential=True, parent=c["parent"], side=c["side"],
            k_points=n if leaf else 0, signed=rng.choice((n, -n)) if leaf else 0,
        ))

    names = [None] + [c.name for c in curves]
    for i in range(rng.randint(0, 3)):
        parent = rng.choice(names)
        curves.append(LevelCurve(
            name=f"i{i}", essential=False, parent=parent, side=rng.choice((Side.A, Side.B)),
            k_points=rng.randint(0, 2), signed=0, extremum=rng.choice(("min", "max")),
        ))
        names.append(f"i{i}")

    rng.shuffle(curves)
    root_points = n if leaves % 2 else 0
    return LevelSphere(tuple(curves), Side.B, root_points, 0), leaves


def test_random_level_spheres():
    for seed in range(200):
        rng = random.Random(seed)
        n = rng.randint(1, 3)
        s, leaves = _random_level_sphere(rng, n)

        assert parse_level_sphere(dump_level_sphere(s)) == s
        g = build_graph(s)
        assert g.is_bipartite()
        assert g.endpoints_in_a()
        assert g.graph.number_of_nodes() == len(s.essential_curves()) + 1
        assert trunk_r(g) == leaves
        assert audit_level(s, n)
