import itertools

import pytest
from hypothesis import given

from conftest import brute_number, graphs
from sdskernel.errors import SizeBoundError, UnknownVertexError
from sdskernel.generators import complete, cycle, star
from sdskernel.graph import Graph, distance
from sdskernel.oracle import (
    DominationKind,
    all_minimum_sets,
    domination_number,
    domination_violation,
    greedy_semitotal_set,
    solve_exact,
    verify_domination,
)

K2 = complete(2)


def test_verify_examples():
    assert verify_domination(K2, {0, 1}, "sds")
    assert not verify_domination(K2, {0}, "sds")
    assert verify_domination(star(3), {0}, "ds")
    assert not verify_domination(star(3), {0}, "sds")
    assert domination_violation(K2, {0}, "sds") == "no witness for vertex 0"
    assert domination_violation(star(3), {1}, "ds") == "vertex 2 is not dominated"
    assert domination_violation(star(3), {0}, "tds") == "vertex 0 has no neighbor in the set"
    with pytest.raises(UnknownVertexError):
        verify_domination(K2, {5}, "ds")


def test_kind_aliases():
    assert DominationKind.parse("semitotal") is DominationKind.SEMITOTAL
    assert DominationKind.parse("tds") is DominationKind.TOTAL
    with pytest.raises(ValueError):
        DominationKind.parse("double")


def test_solve_examples():
    assert solve_exact(K2, "sds").size == 2
    sol = solve_exact(star(3), "sds")
    assert sol.size == 2 and 0 in sol.chosen
    assert solve_exact(star(3), "sds").chosen == {0, 1}
    c5 = solve_exact(cycle(5), "sds")
    assert c5.size == 2 and c5.chosen == {0, 2}
    assert solve_exact(Graph([0]), "sds") is None
    assert solve_exact(Graph([0]), "ds").size == 1
    assert solve_exact(star(3), "tds").size == 2


def test_size_cap_and_bound():
    assert solve_exact(cycle(6), "sds", size_cap=1) is None
    with pytest.raises(SizeBoundError):
        solve_exact(cycle(21), "ds")
    assert solve_exact(cycle(21), "ds", bound=21).size == 7


def test_all_minimum_sets_of_c4():
    assert all_minimum_sets(cycle(4), "ds") == [frozenset(s) for s in ([0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3])]


@given(graphs(max_n=8, no_isolated=True))
def test_solver_matches_reference(g):
    for kind in ("ds", "tds", "sds"):
        assert domination_number(g, kind) == brute_number(g, kind)


@given(graphs(max_n=9, no_isolated=True))
def test_domination_chain(g):
    ds, sds, tds = (domination_number(g, k) for k in ("ds", "sds", "tds"))
    assert ds <= sds <= tds


@given(graphs(min_n=2, max_n=9, connected=True))
def test_members_of_a_minimum_ds_are_close(g):
    d = solve_exact(g, "ds").chosen
    if len(d) > 1:
        assert all(any(distance(g, x, y) <= 3 for y in d - {x}) for x in d)


@given(graphs(max_n=8, no_isolated=True))
def test_solutions_are_valid_and_minimal(g):
    for kind in DominationKind:
        sol = solve_exact(g, kind)
        assert verify_domination(g, sol.chosen, kind) and sol.size == len(sol.chosen)
        if sol.size:
            assert not any(
                verify_domination(g, s, kind) for s in itertools.combinations(g.vertices, sol.size - 1)
            )


@given(graphs(max_n=9))
def test_semitotal_implies_plain(g):
    greedy = greedy_semitotal_set(g)
    if greedy is None:
        assert any(g.degree(v) == 0 for v in g)
        return
    assert verify_domination(g, greedy, "sds")
    assert verify_domination(g, greedy, "ds")
