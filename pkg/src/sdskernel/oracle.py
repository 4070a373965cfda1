"""Checkers and exponential-time exact solvers for dominating set variants.

These are the ground truth every reduction is tested against, so they favour
obviousness over speed: subsets are enumerated by increasing size in
lexicographic order, with a little pruning on undominated vertices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import SizeBoundError
from .graph import Graph, bfs_distances

#: default vertex bound for the exact solvers
ORACLE_BOUND = 20


class DominationKind(str, enum.Enum):
    PLAIN = "ds"
    TOTAL = "tds"
    SEMITOTAL = "sds"

    @classmethod
    def parse(cls, value) -> DominationKind:
        if isinstance(value, cls):
            return value
        aliases = {"plain": cls.PLAIN, "total": cls.TOTAL, "semitotal": cls.SEMITOTAL}
        try:
            return aliases.get(value) or cls(value)
        except ValueError:
            raise ValueError(f"unknown domination kind {value!r}") from None


@dataclass(frozen=True)
class DominationSolution:
    kind: DominationKind
    chosen: frozenset[int]
    size: int

    def as_dict(self) -> dict:
        return {"kind": self.kind.value, "size": self.size, "set": sorted(self.chosen)}


def domination_violation(g: Graph, d: Iterable[int], kind) -> str | None:
    """Describe the first violated requirement, or return ``None`` when ``d`` is valid."""
    kind = DominationKind.parse(kind)
    d = set(d)
    g.require(d)
    for v in g.vertices:
        if kind is DominationKind.TOTAL:
            if g.neighbors(v).isdisjoint(d):
                return f"vertex {v} has no neighbor in the set"
        elif v not in d and g.neighbors(v).isdisjoint(d):
            return f"vertex {v} is not dominated"
    if kind is DominationKind.SEMITOTAL:
        for x in sorted(d):
            near = bfs_distances(g, x, cutoff=2)
            if not any(y != x and y in near for y in d):
                return f"no witness for vertex {x}"
    return None


def verify_domination(g: Graph, d: Iterable[int], kind) -> bool:
    return domination_violation(g, d, kind) is None


class _Masks:
    """Bitmask view of a graph with vertices indexed in ascending order."""

    def __init__(self, g: Graph):
        self.labels = g.vertices
        index = {v: i for i, v in enumerate(self.labels)}
        n = len(self.labels)
        self.n = n
        self.full = (1 << n) - 1
        self.open = [0] * n
        self.ball2 = [0] * n
        for i, v in enumerate(self.labels):
            for x in g.neighbors(v):
                self.open[i] |= 1 << index[x]
        for i in range(n):
            reach = self.open[i]
            for j in _bits(self.open[i]):
                reach |= self.open[j]
            self.ball2[i] = reach & ~(1 << i)
        self.closed = [self.open[i] | (1 << i) for i in range(n)]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _search(mk: _Masks, kind: DominationKind, k: int) -> Iterator[tuple[int, ...]]:
    """All valid sets of exactly ``k`` vertex indices, in lexicographic order."""
    cover = mk.open if kind is DominationKind.TOTAL else mk.closed
    n, full = mk.n, mk.full
    best = max((bin(c).count("1") for c in cover), default=0)
    # last index that can cover each vertex
    last_cover = [max(_bits(_column(cover, u)), default=-1) for u in range(n)]
    chosen: list[int] = []

    def rec(start: int, covered: int) -> Iterator[tuple[int, ...]]:
        left = k - len(chosen)
        missing = full & ~covered
        if left == 0:
            if missing:
                return
            if kind is DominationKind.SEMITOTAL:
                sel = 0
                for i in chosen:
                    sel |= 1 << i
                if any(not (mk.ball2[i] & sel) for i in chosen):
                    return
            yield tuple(chosen)
            return
        if missing:
            if bin(missing).count("1") > left * best:
                return
            low = (missing & -missing).bit_length() - 1
            if last_cover[low] < start:
                return
        for i in range(start, n - left + 1):
            chosen.append(i)
            yield from rec(i + 1, covered | cover[i])
            chosen.pop()

    yield from rec(0, 0)


def _column(cover: list[int], u: int) -> int:
    bit = 1 << u
    col = 0
    for i, c in enumerate(cover):
        if c & bit:
            col |= 1 << i
    return col


def _check_bound(g: Graph, bound: int) -> None:
    if g.n > bound:
        raise SizeBoundError(f"exact solver limited to {bound} vertices, got {g.n}")


def _infeasible(g: Graph, kind: DominationKind) -> bool:
    return kind is not DominationKind.PLAIN and any(g.degree(v) == 0 for v in g)


def solve_exact(
    g: Graph, kind=DominationKind.SEMITOTAL, size_cap: int | None = None, bound: int = ORACLE_BOUND
) -> DominationSolution | None:
    """Minimum valid set of the requested kind, or ``None`` when none exists within ``size_cap``.

    Ties are broken towards the lexicographically smallest vertex tuple.
    """
    kind = DominationKind.parse(kind)
    _check_bound(g, bound)
    if _infeasible(g, kind):
        return None
    mk = _Masks(g)
    top = mk.n if size_cap is None else min(size_cap, mk.n)
    for k in range(0, top + 1):
        for found in _search(mk, kind, k):
            chosen = frozenset(mk.labels[i] for i in found)
            return DominationSolution(kind, chosen, k)
    return None


def domination_number(g: Graph, kind=DominationKind.SEMITOTAL, bound: int = ORACLE_BOUND) -> int | None:
    sol = solve_exact(g, kind, bound=bound)
    return None if sol is None else sol.size


def all_minimum_sets(g: Graph, kind=DominationKind.PLAIN, bound: int = ORACLE_BOUND) -> list[frozenset[int]]:
    """Every valid set of minimum cardinality, lexicographically ordered."""
    kind = DominationKind.parse(kind)
    best = solve_exact(g, kind, bound=bound)
    if best is None:
        return []
    mk = _Masks(g)
    return [frozenset(mk.labels[i] for i in found) for found in _search(mk, kind, best.size)]


def greedy_semitotal_set(g: Graph) -> frozenset[int] | None:
    """A (not necessarily minimum) semitotal dominating set, or ``None`` if isolated vertices exist.

    Picks vertices covering the most undominated vertices, then patches
    missing witnesses with a neighbour.  Used when the exact solver is out of
    reach, e.g. for decomposition statistics on large graphs.
    """
    if _infeasible(g, DominationKind.SEMITOTAL):
        return None
    undominated = set(g.vertices)
    chosen: set[int] = set()
    while undominated:
        v = max(g.vertices, key=lambda x: (len(g.closed_neighborhood(x) & undominated), -x))
        chosen.add(v)
        undominated -= g.closed_neighborhood(v)
    for x in sorted(chosen):
        near = bfs_distances(g, x, cutoff=2)
        if not any(y != x and y in near for y in chosen):
            chosen.add(min(g.neighbors(x)))
    return frozenset(chosen)
