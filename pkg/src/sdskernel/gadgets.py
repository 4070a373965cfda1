"""Hardness constructions: a bipartite gadget and the split graph flip.

``bipartite_gadget`` turns a bipartite graph ``G`` into a bipartite ``G'``
such that a dominating set of ``G`` with ``k`` vertices should correspond to a
semitotal dominating set of ``G'`` with ``k + 2``.  The correspondence is not
trusted: ``check_gadget_equivalence`` measures both sides with the exact
solvers and records whether it held.  On a single edge it does not (one
pendant pair ends up without a witness), which is exactly why the check only
reports.

``split_flip`` repairs a dominating set of a split graph into a semitotal one
by moving every independent-set member onto a clique neighbour.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import EmptyPartError, InvariantError, NotBipartiteError, NotDominatingError, ParameterError
from .graph import Graph
from .oracle import ORACLE_BOUND, DominationKind, solve_exact, verify_domination

ROLES = ("original-X", "original-Y", "A", "B", "u1", "u2", "d1", "d2")


def two_coloring(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Parts of a proper 2-colouring, the smallest vertex of each component in the first part."""
    side: dict[int, int] = {}
    for root in g.vertices:
        if root in side:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y not in side:
                    side[y] = 1 - side[x]
                    stack.append(y)
                elif side[y] == side[x]:
                    return None
    return (
        frozenset(v for v, s in side.items() if s == 0),
        frozenset(v for v, s in side.items() if s == 1),
    )


def _check_parts(g: Graph, xs: frozenset[int], ys: frozenset[int]) -> None:
    g.require(xs | ys)
    if not xs or not ys:
        raise EmptyPartError("both parts must be non-empty")
    if xs & ys or (xs | ys) != set(g.vertices):
        raise NotBipartiteError("the parts must partition the vertex set")
    for a, b in g.edges():
        if (a in xs) == (b in xs):
            raise NotBipartiteError(f"edge {a}-{b} lies inside one part")


@dataclass(frozen=True)
class BipartiteGadgetOutput:
    graph: Graph
    roles: Mapping[int, str]
    a_of: Mapping[int, int]
    b_of: Mapping[int, int]

    def vertex(self, role: str) -> int:
        """The unique vertex with a singleton role (u1, u2, d1 or d2)."""
        (v,) = [x for x, r in self.roles.items() if r == role]
        return v

    def parts(self) -> tuple[frozenset[int], frozenset[int]]:
        """``X + {u2, d1} + B`` and ``Y + {u1, d2} + A``."""
        first = {"original-X", "u2", "d1", "B"}
        left = frozenset(v for v, r in self.roles.items() if r in first)
        return left, frozenset(self.roles) - left

    def as_dict(self) -> dict:
        return {
            "vertices": self.graph.n,
            "edges": [list(e) for e in self.graph.edges()],
            "roles": {str(v): self.roles[v] for v in sorted(self.roles)},
        }


def bipartite_gadget(g: Graph, xs: Iterable[int], ys: Iterable[int]) -> BipartiteGadgetOutput:
    """Pendants ``a_i`` on X and ``b_j`` on Y, plus two paths ``u1-d1`` and ``u2-d2``.

    ``d1`` is joined to every ``a_i`` and ``d2`` to every ``b_j``.  Fresh ids
    follow the largest existing one: the ``a_i`` in ascending order of
    ``x_i``, then the ``b_j``, then ``u1, d1, u2, d2``.
    """
    xs, ys = frozenset(xs), frozenset(ys)
    _check_parts(g, xs, ys)
    fresh = itertools.count(g.next_id())
    roles = {v: "original-X" for v in xs} | {v: "original-Y" for v in ys}
    a_of = {x: next(fresh) for x in sorted(xs)}
    b_of = {y: next(fresh) for y in sorted(ys)}
    u1, d1, u2, d2 = next(fresh), next(fresh), next(fresh), next(fresh)
    roles |= {a: "A" for a in a_of.values()} | {b: "B" for b in b_of.values()}
    roles |= {u1: "u1", d1: "d1", u2: "u2", d2: "d2"}
    edges = list(g.edges())
    edges += [(x, a) for x, a in a_of.items()] + [(y, b) for y, b in b_of.items()]
    edges += [(u1, d1), (u2, d2)]
    edges += [(d1, a) for a in a_of.values()] + [(d2, b) for b in b_of.values()]
    return BipartiteGadgetOutput(Graph(roles, edges), roles, a_of, b_of)


@dataclass(frozen=True)
class GadgetReport:
    gamma: int
    gamma_t2: int | None
    expected: int
    holds: bool
    dominating_set: frozenset[int]
    semitotal_set: frozenset[int] | None

    def as_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "gamma_t2": self.gamma_t2,
            "expected_gamma_t2": self.expected,
            "holds": self.holds,
            "dominating_set": sorted(self.dominating_set),
            "semitotal_set": None if self.semitotal_set is None else sorted(self.semitotal_set),
        }


def check_gadget_equivalence(g: Graph, out: BipartiteGadgetOutput, bound: int = ORACLE_BOUND) -> GadgetReport:
    """Compare ``γ_t2(G')`` with ``γ(G) + 2`` using the exact solvers; never raises on a mismatch."""
    ds = solve_exact(g, DominationKind.PLAIN, bound=bound)
    sds = solve_exact(out.graph, DominationKind.SEMITOTAL, bound=bound)
    gamma_t2 = None if sds is None else sds.size
    return GadgetReport(
        gamma=ds.size,
        gamma_t2=gamma_t2,
        expected=ds.size + 2,
        holds=gamma_t2 == ds.size + 2,
        dominating_set=ds.chosen,
        semitotal_set=None if sds is None else sds.chosen,
    )


# -- split graphs ----------------------------------------------------------


@dataclass(frozen=True)
class SplitPartition:
    clique: frozenset[int]
    independent: frozenset[int]

    def as_dict(self) -> dict:
        return {"clique": sorted(self.clique), "independent": sorted(self.independent)}


def split_violation(g: Graph, part: SplitPartition) -> str | None:
    if part.clique & part.independent or (part.clique | part.independent) != set(g.vertices):
        return "the parts do not partition the vertex set"
    for a, b in g.edges():
        if a in part.independent and b in part.independent:
            return f"edge {a}-{b} inside the independent part"
    k = len(part.clique)
    if any(len(g.neighbors(v) & part.clique) != k - 1 for v in part.clique):
        return "the clique part is not complete"
    return None


def recognize_split(g: Graph) -> SplitPartition | None:
    """Split partition by the degree sequence test of Hammer and Simeone, or ``None``.

    With degrees ``d_1 >= ... >= d_n`` and ``m`` the largest index with
    ``d_m >= m - 1``, the graph is split iff the top ``m`` degrees sum to
    ``m(m-1)`` plus the remaining degrees; the top ``m`` vertices then form
    the clique.
    """
    order = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    degrees = [g.degree(v) for v in order]
    m = max((i for i, d in enumerate(degrees, start=1) if d >= i - 1), default=0)
    if sum(degrees[:m]) != m * (m - 1) + sum(degrees[m:]):
        return None
    part = SplitPartition(frozenset(order[:m]), frozenset(order[m:]))
    problem = split_violation(g, part)
    if problem is not None:
        raise InvariantError(f"degree test accepted a non-split partition: {problem}")
    return part


def split_flip(g: Graph, part: SplitPartition, d: Iterable[int]) -> frozenset[int]:
    """Turn a dominating set of a split graph into a semitotal one with at most one extra vertex.

    Independent members move to their smallest clique neighbour; a lone
    survivor gets its smallest neighbour as witness.
    """
    d = frozenset(d)
    g.require(d)
    if g.n < 2:
        raise ParameterError("split_flip needs at least two vertices")
    problem = split_violation(g, part)
    if problem is not None:
        raise ParameterError(f"invalid split partition: {problem}")
    if not verify_domination(g, d, DominationKind.PLAIN):
        raise NotDominatingError("the input set does not dominate the graph")
    out = set()
    for v in d:
        if v in part.clique:
            out.add(v)
            continue
        nbrs = g.neighbors(v)
        if not nbrs:
            raise ParameterError(f"vertex {v} is isolated, so no semitotal dominating set exists")
        out.add(min(nbrs))
    if len(out) == 1:
        (x,) = out
        if not g.neighbors(x):
            raise ParameterError(f"vertex {x} is isolated, so no semitotal dominating set exists")
        out.add(min(g.neighbors(x)))
    return frozenset(out)
