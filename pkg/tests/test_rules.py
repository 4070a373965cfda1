import pytest
from hypothesis import given
from hypothesis import strategies as st

import sdskernel.rules as rules
from conftest import brute_number, graphs
from sdskernel.errors import InvalidRegionError, UnknownVertexError
from sdskernel.generators import cycle, double_star, path, random_gnp, random_planar, star
from sdskernel.graph import Graph, dumps, is_isomorphic_small
from sdskernel.neighborhoods import partition_pair, partition_vertex
from sdskernel.oracle import domination_number, verify_domination
from sdskernel.planar import SimpleRegion, find_simple_regions
from sdskernel.rules import (
    apply_rule1,
    apply_rule2,
    apply_rule3,
    compute_families,
    lift_solution,
    pairs_within,
    reduce,
)

K2 = Graph.from_edges([(0, 1)])


def sds(g):
    return domination_number(g, "sds")


def region_graph(path_edges: bool) -> Graph:
    """Poles 0 and 1, boundary 2 and 3, interior 4, 5, 6, all adjacent to both poles."""
    edges = [(p, x) for p in (0, 1) for x in range(2, 7)]
    if path_edges:
        edges += [(4, 5), (5, 6)]
    return Graph.from_edges(edges)


# -- candidate families ----------------------------------------------------


def test_families_of_c4():
    fam = compute_families(cycle(4), 0, 2)
    assert fam.family_d == ()
    assert frozenset({0}) in fam.family_dv and frozenset({2}) in fam.family_dw


def test_families_of_two_stars():
    fam = compute_families(double_star(2), 0, 3)
    assert fam.family_d == fam.family_dv == fam.family_dw == ()


def test_families_with_nothing_sealed():
    # path v-x-w-y-z with x also joined to z: every joint vertex sees outside
    g = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (1, 4)])
    assert not partition_pair(g, 0, 2).n3
    fam = compute_families(g, 0, 2)
    assert frozenset() in fam.family_d
    assert fam.family_dv and fam.family_dw


@given(graphs(min_n=2, max_n=9), st.data())
def test_family_members_obey_their_definition(g, data):
    v, w = data.draw(st.lists(st.sampled_from(g.vertices), min_size=2, max_size=2, unique=True))
    part = partition_pair(g, v, w)
    fam = compute_families(g, v, w)

    def covers(s):
        reach = set()
        for x in s:
            reach |= g.neighbors(x)
        return part.n3 <= reach

    for s in fam.family_d:
        assert s <= part.n23 and len(s) <= 3 and covers(s)
    for pole, family in ((v, fam.family_dv), (w, fam.family_dw)):
        for s in family:
            assert pole in s and s <= part.n23 | {pole} and len(s) <= 3 and covers(s)
    flags = rules._family_flags(g, v, w, part.n3, part.n23)
    assert flags[0] == bool(fam.family_d)
    if not flags[0]:
        assert flags[1:] == (bool(fam.family_dv), bool(fam.family_dw))


# -- rule 1 ----------------------------------------------------------------


def test_rule1_on_star():
    h, app = apply_rule1(star(3), 0)
    assert app.effective and app.rule == "R1"
    assert is_isomorphic_small(h, K2)
    assert sds(h) == sds(star(3)) == 2


def test_rule1_single_pendant_is_a_noop():
    g = path(4)
    h, app = apply_rule1(g, 1)
    assert h is g and not app.effective


def test_rule1_nothing_sealed():
    g = cycle(5)
    h, app = apply_rule1(g, 0)
    assert h is g and not app.effective
    with pytest.raises(UnknownVertexError):
        apply_rule1(g, 9)


def test_rule1_fresh_ids_follow_maximum():
    h, app = apply_rule1(star(3), 0, next_id=40)
    assert app.added == (40,)
    assert sorted(h.edges()) == [(0, 40)]


# -- rule 2 ----------------------------------------------------------------


def test_rule2_case1_on_two_stars():
    g = double_star(2)
    h, app = apply_rule2(g, 0, 3)
    assert app.rule == "R2-case1" and app.effective
    assert app.removed == {1, 2, 4, 5}
    assert len(app.added) == 2
    assert sorted(h.edges()) == [(0, 6), (3, 7)]
    assert sds(g) == sds(h) == 4


def test_rule2_c4_unchanged():
    g = cycle(4)
    h, app = apply_rule2(g, 0, 2)
    assert h is g and not app.effective


def test_rule2_dominated_sealed_part_unchanged():
    g = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (1, 4)])
    h, app = apply_rule2(g, 0, 2)
    assert h is g and not app.effective


def test_rule2_adds_common_neighbour_gadget():
    # poles 0, 1 share neighbour 2; each has two private sealed leaves
    g = Graph.from_edges([(0, 2), (1, 2), (0, 3), (0, 4), (1, 5), (1, 6)])
    h, app = apply_rule2(g, 0, 1)
    assert app.rule == "R2-case1" and app.effective
    assert h.n == 5 and sds(h) == sds(g)
    y = app.added[2]
    assert h.neighbors(y) == {0, 1}


def test_rule2_adds_path_gadget():
    # v=0 - x=2 - y=3 - w=1, plus sealed leaves on both poles
    g = Graph.from_edges([(0, 2), (2, 3), (3, 1), (0, 4), (0, 5), (1, 6), (1, 7)])
    h, app = apply_rule2(g, 0, 1)
    assert app.rule == "R2-case1" and app.effective
    y, y2 = app.added[2:]
    assert h.neighbors(y) == {0, y2} and h.neighbors(y2) == {y, 1}
    assert sds(h) == sds(g)


def test_rule2_case1_keeps_distance_two_witnesses():
    # without the guard, vertex 2 disappears and pole 5 loses its witness 0
    g = Graph.from_edges([(0, 2), (0, 4), (0, 6), (1, 6), (2, 5), (3, 5)])
    part = partition_pair(g, 5, 6)
    naive = g.modify(remove=part.n23, add_vertices=[7, 8], add_edges=[(5, 7), (6, 8)])
    assert sds(g) == 3 and sds(naive) == 4
    h, app = apply_rule2(g, 5, 6)
    assert sds(h) == sds(g)


def test_rule2_case2_shrinks_one_side():
    # 1 sealed leaf on v=0 is enough to need v; w=1 reaches its sealed part only through v's side
    g = Graph.from_edges([(0, 2), (0, 3), (0, 4), (2, 5), (5, 1), (1, 6)])
    for v, w in pairs_within(g, 3):
        h, app = apply_rule2(g, v, w)
        assert sds(h) == sds(g)


def test_rule2_rejects_equal_poles():
    with pytest.raises(ValueError):
        apply_rule2(path(3), 1, 1)


# -- rule 3 ----------------------------------------------------------------


def test_rule3_case1_p3_interior():
    g = region_graph(path_edges=True)
    (region,) = find_simple_regions(g, 0, 1)
    assert region.boundary == {2, 3} and region.interior == {4, 5, 6}
    h, app = apply_rule3(g, region)
    assert app.rule == "R3-case1" and len(app.added) == 1
    (after,) = find_simple_regions(h, 0, 1)
    assert after.size == 3
    assert sds(h) == sds(g)


def test_rule3_case2_independent_interior():
    g = region_graph(path_edges=False)
    region = SimpleRegion((0, 1), frozenset({2, 3}), frozenset({4, 5, 6}))
    h, app = apply_rule3(g, region)
    assert app.rule == "R3-case2" and len(app.added) == 2
    assert h.n == 6 and sds(h) == sds(g)
    assert max(r.size for r in find_simple_regions(h, 0, 1)) == 4


def test_rule3_small_region_unchanged():
    g = Graph.from_edges([(p, x) for p in (0, 1) for x in range(2, 6)])
    region = SimpleRegion((0, 1), frozenset({2, 3}), frozenset({4, 5}))
    h, app = apply_rule3(g, region)
    assert h is g and not app.effective


def test_rule3_rejects_stale_region():
    g = region_graph(path_edges=True)
    with pytest.raises(InvalidRegionError):
        apply_rule3(g, SimpleRegion((0, 1), frozenset({2, 3}), frozenset({4, 5, 9})))


# -- driver ----------------------------------------------------------------


def test_reduce_examples():
    h, report = reduce(K2)
    assert h == K2 and report.effective == 0
    star9 = star(9)
    h, report = reduce(star9)
    assert is_isomorphic_small(h, K2)
    assert report.counts["R1"] == 1
    assert sds(h) == sds(star9) == 2


def test_report_serialization_hides_timings():
    _, report = reduce(star(9))
    data = report.as_dict()
    assert "seconds" not in data
    assert data["input"] == {"n": 10, "m": 9} and data["output"] == {"n": 2, "m": 1}
    assert "seconds" in report.as_dict(timings=True)


def test_reduce_is_deterministic_on_a_planar_graph():
    g = random_planar(200, 400, seed=5)
    a, _ = reduce(g)
    b, _ = reduce(g)
    assert dumps(a) == dumps(b)
    assert a.n < g.n


@given(graphs(min_n=2, max_n=9, no_isolated=True))
def test_reduce_preserves_the_optimum(g):
    h, report = reduce(g)
    assert sds(h) == brute_number(g, "sds")
    again, second = reduce(h)
    assert second.effective == 0 and again == h
    for v in h.vertices:
        if len(partition_vertex(h, v).n3) > 1:
            assert not apply_rule1(h, v)[1].effective


@given(graphs(min_n=2, max_n=9, no_isolated=True))
def test_lifted_solution_is_valid_and_optimal(g):
    h, report = reduce(g)
    from sdskernel.oracle import solve_exact

    sol = solve_exact(h, "sds")
    lifted = lift_solution(report.applications, sol.chosen)
    assert verify_domination(g, lifted, "sds")
    assert len(lifted) == sds(g)


@given(graphs(min_n=2, max_n=8, no_isolated=True))
def test_same_size_outcomes_are_isomorphic(g):
    rules.DEBUG_ISOMORPHISM = True
    try:
        for v in g.vertices:
            apply_rule1(g, v)
        for v, w in pairs_within(g, 3):
            apply_rule2(g, v, w)
    finally:
        rules.DEBUG_ISOMORPHISM = False


def test_single_rules_on_seeded_graphs():
    for seed in range(40):
        g = random_gnp(9, 0.3, seed)
        if any(g.degree(v) == 0 for v in g):
            continue
        base = sds(g)
        for v in g.vertices:
            assert sds(apply_rule1(g, v)[0]) == base
        for v, w in pairs_within(g, 3):
            assert sds(apply_rule2(g, v, w)[0]) == base
