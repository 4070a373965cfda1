"""Reduction rules for semitotal domination and the fixpoint driver.

Every rule replaces a local piece of the graph by a constant-size gadget and
keeps the minimum semitotal dominating set size unchanged.  An application
counts as effective only when it shrinks the graph; an outcome of the same
size is isomorphic to the input for every rule here, so it is reported as a
no-op and the graph is returned untouched.

Rule 2 with both poles forced is additionally guarded: the replacement is
skipped when a surviving vertex within distance two of a pole would end up
further away, since the bare replacement can then raise the optimum.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import InvariantError
from .graph import ISO_BOUND, Graph, bfs_distances, is_isomorphic_small
from .neighborhoods import partition_pair, partition_vertex
from .planar import (
    SHRINK_THRESHOLD,
    SimpleRegion,
    find_simple_regions,
    interior_is_p3,
    validate_region,
)

RULES = ("R1", "R2-case1", "R2-case2", "R2-case3", "R3-case1", "R3-case2")

#: cross-check every same-size outcome against a full isomorphism test
DEBUG_ISOMORPHISM = False

#: largest candidate set considered when dominating the sealed part of a pair
FAMILY_LIMIT = 3


# -- candidate families ----------------------------------------------------


@dataclass(frozen=True)
class CandidateFamilies:
    poles: tuple[int, int]
    family_d: tuple[frozenset[int], ...]
    family_dv: tuple[frozenset[int], ...]
    family_dw: tuple[frozenset[int], ...]

    def union_dv(self) -> frozenset[int]:
        return frozenset().union(*self.family_dv)

    def union_dw(self) -> frozenset[int]:
        return frozenset().union(*self.family_dw)


def _dominators(g: Graph, targets: frozenset[int], ground: Iterable[int], forced: int | None) -> Iterator[frozenset[int]]:
    """Subsets of ``ground`` (plus ``forced``) of size at most three whose open neighbourhoods cover ``targets``."""
    ground = sorted(set(ground) - {forced})
    base = () if forced is None else (forced,)
    room = FAMILY_LIMIT - len(base)
    for size in range(room + 1):
        for extra in itertools.combinations(ground, size):
            chosen = base + extra
            covered = set()
            for x in chosen:
                covered |= g.neighbors(x)
            if targets <= covered:
                yield frozenset(chosen)


def _has_dominator(g: Graph, targets: frozenset[int], ground: frozenset[int], chosen: frozenset[int], room: int) -> bool:
    """Branching search for the same question, used by the reduction driver."""
    covered = set()
    for x in chosen:
        covered |= g.neighbors(x)
    missing = targets - covered
    if not missing:
        return True
    if room == 0:
        return False
    t = min(missing, key=lambda u: (len(g.neighbors(u) & ground), u))
    for x in sorted(g.neighbors(t) & ground):
        if _has_dominator(g, missing, ground, chosen | {x}, room - 1):
            return True
    return False


def compute_families(g: Graph, v: int, w: int) -> CandidateFamilies:
    """All candidate sets of size at most three dominating the sealed part of ``N(v) | N(w)``."""
    g.require((v, w))
    part = partition_pair(g, v, w)
    ground = part.n23
    return CandidateFamilies(
        (v, w),
        tuple(_dominators(g, part.n3, ground, None)),
        tuple(_dominators(g, part.n3, ground | {v}, v)),
        tuple(_dominators(g, part.n3, ground | {w}, w)),
    )


def _family_flags(g: Graph, v: int, w: int, n3: frozenset[int], n23: frozenset[int]) -> tuple[bool, bool, bool]:
    """Non-emptiness of the three families without listing them."""
    d = _has_dominator(g, n3, n23, frozenset(), FAMILY_LIMIT)
    if d:
        return True, True, True
    dv = _has_dominator(g, n3, n23, frozenset({v}), FAMILY_LIMIT - 1)
    dw = _has_dominator(g, n3, n23, frozenset({w}), FAMILY_LIMIT - 1)
    return d, dv, dw


# -- rule applications -----------------------------------------------------


@dataclass(frozen=True)
class RuleApplication:
    """One attempted rule application.

    ``stand_ins`` maps every added vertex to the original vertices that can
    replace it when a solution of the reduced graph is lifted back; the
    first candidate not already in the solution is used.
    """

    rule: str | None
    site: tuple[int, ...]
    removed: frozenset[int] = frozenset()
    added: tuple[int, ...] = ()
    effective: bool = False
    stand_ins: tuple[tuple[int, tuple[int, ...]], ...] = ()

    def as_dict(self) -> dict:
        return {
            "rule": self.rule,
            "site": list(self.site),
            "removed": sorted(self.removed),
            "added": list(self.added),
            "effective": self.effective,
        }


def _noop(rule: str | None, site: tuple[int, ...]) -> RuleApplication:
    return RuleApplication(rule, site)


def _replace(
    g: Graph,
    rule: str,
    site: tuple[int, ...],
    removed: frozenset[int],
    n_added: int,
    edges,
    stand_ins,
    next_id: int | None,
    keep_close: tuple[int, ...] = (),
) -> tuple[Graph, RuleApplication]:
    """Delete ``removed`` and add ``n_added`` fresh vertices wired by ``edges``.

    ``edges`` and ``stand_ins`` are callables receiving the fresh ids.  The
    replacement is abandoned when a surviving vertex within distance two of
    a vertex in ``keep_close`` would drift further away.
    """
    start = g.next_id() if next_id is None else max(next_id, g.next_id())
    fresh = tuple(range(start, start + n_added))
    new_edges = edges(fresh)
    touching = sum(g.degree(r) for r in removed) - sum(len(g.neighbors(r) & removed) for r in removed) // 2
    before, after = (g.n, g.m), (g.n - len(removed) + n_added, g.m - touching + len(new_edges))
    if after == before and not DEBUG_ISOMORPHISM:
        return g, _noop(rule, site)
    h = g.modify(remove=removed, add_vertices=fresh, add_edges=new_edges)
    if after == before and DEBUG_ISOMORPHISM and g.n <= ISO_BOUND and not is_isomorphic_small(g, h):
        raise InvariantError(f"{rule} at {site} produced a same-size graph that is not isomorphic")
    if after == before or not all(_keeps_ball(g, h, p, removed) for p in keep_close):
        return g, _noop(rule, site)
    if after > before:
        raise InvariantError(f"{rule} at {site} grew the graph from {before} to {after}")
    return h, RuleApplication(rule, site, removed, fresh, True, tuple(zip(fresh, stand_ins(fresh))))


def _keeps_ball(g: Graph, h: Graph, p: int, removed: frozenset[int]) -> bool:
    near = bfs_distances(g, p, cutoff=2).keys() - removed
    return near <= bfs_distances(h, p, cutoff=2).keys()


def _shrink_around(g: Graph, rule: str, site, v: int, removed: frozenset[int], next_id: int | None):
    """Replace ``removed`` (all neighbours of ``v``) by a single pendant on ``v``."""
    if not removed:
        return g, _noop(rule, site)
    stand_in = min(removed)
    return _replace(
        g, rule, site, removed, 1,
        lambda f: [(v, f[0])],
        lambda f: [(v, stand_in)],
        next_id,
    )


def apply_rule1(g: Graph, v: int, next_id: int | None = None) -> tuple[Graph, RuleApplication]:
    """Replace ``N2(v) | N3(v)`` by one pendant when ``N3(v)`` is non-empty."""
    part = partition_vertex(g, v)
    if not part.n3:
        return g, _noop("R1", (v,))
    # the pendant stands in for v when v is missing, else for a sealed neighbour
    stand_in = min(part.n3)
    return _replace(
        g, "R1", (v,), part.n23, 1,
        lambda f: [(v, f[0])],
        lambda f: [(v, stand_in)],
        next_id,
    )


def _path_through(g: Graph, v: int, w: int, inside: frozenset[int]) -> tuple[int, int] | None:
    """Smallest ``(x, y)`` with ``v-x-y-w`` a path using only ``inside`` vertices."""
    for x in sorted(g.neighbors(v) & inside):
        ys = g.neighbors(x) & g.neighbors(w) & inside
        if ys:
            return x, min(ys)
    return None


def apply_rule2(g: Graph, v: int, w: int, next_id: int | None = None) -> tuple[Graph, RuleApplication]:
    """Shrink the joined neighbourhood of ``v`` and ``w`` when no small set inside dominates its sealed part."""
    if v == w:
        raise ValueError("rule 2 needs two distinct vertices")
    g.require((v, w))
    site = (v, w)
    part = partition_pair(g, v, w)
    if not part.n3:
        return g, _noop(None, site)
    d, dv, dw = _family_flags(g, v, w, part.n3, part.n23)
    if d or (dv and dw):
        return g, _noop(None, site)
    if dv:
        return _shrink_around(g, "R2-case2", site, v, partition_vertex(g, v).n23 - {w}, next_id)
    if dw:
        return _shrink_around(g, "R2-case3", site, w, partition_vertex(g, w).n23 - {v}, next_id)

    # both poles belong to every small solution; the replacement must not
    # cut a pole off from a witness it reached through the removed vertices
    removed = part.n23
    pin_v = min(g.neighbors(v) & removed, default=v)
    pin_w = min(g.neighbors(w) & removed, default=w)
    common = g.neighbors(v) & g.neighbors(w) & removed
    if common:
        c = min(common)
        return _replace(
            g, "R2-case1", site, removed, 3,
            lambda f: [(v, f[0]), (w, f[1]), (v, f[2]), (f[2], w)],
            lambda f: [(v, pin_v), (w, pin_w), (c,)],
            next_id,
            site,
        )
    path = _path_through(g, v, w, removed)
    if path is not None:
        x, y = path
        return _replace(
            g, "R2-case1", site, removed, 4,
            lambda f: [(v, f[0]), (w, f[1]), (v, f[2]), (f[2], f[3]), (f[3], w)],
            lambda f: [(v, pin_v), (w, pin_w), (x,), (y,)],
            next_id,
            site,
        )
    return _replace(
        g, "R2-case1", site, removed, 2,
        lambda f: [(v, f[0]), (w, f[1])],
        lambda f: [(v, pin_v), (w, pin_w)],
        next_id,
        site,
    )


def apply_rule3(g: Graph, region: SimpleRegion, next_id: int | None = None) -> tuple[Graph, RuleApplication]:
    """Replace the interior of a large simple region by one or two vertices."""
    validate_region(g, region)
    v, w = region.poles
    site = (v, w)
    if region.size < SHRINK_THRESHOLD:
        return g, _noop(None, site)
    if interior_is_p3(g, region.interior):
        center = next(z for z in region.interior if len(g.neighbors(z) & region.interior) == 2)
        return _replace(
            g, "R3-case1", site, region.interior, 1,
            lambda f: [(v, f[0]), (f[0], w)],
            lambda f: [(center,)],
            next_id,
        )
    return _replace(
        g, "R3-case2", site, region.interior, 2,
        lambda f: [(v, f[0]), (f[0], w), (v, f[1]), (f[1], w)],
        lambda f: [(v, w), (v, w)],
        next_id,
    )


# -- lifting solutions back ------------------------------------------------


def lift_solution(applications: Iterable[RuleApplication], solution: Iterable[int]) -> frozenset[int]:
    """Turn a solution of the reduced graph into one of the original graph of no larger size.

    ``applications`` are the effective applications in the order they were
    made; they are undone in reverse.
    """
    current = set(solution)
    for app in reversed(list(applications)):
        if not app.effective:
            continue
        hits = [(a, options) for a, options in app.stand_ins if a in current]
        current -= set(app.added)
        for _, options in hits:
            for candidate in options:
                if candidate not in current:
                    current.add(candidate)
                    break
    return frozenset(current)


# -- reduction driver ------------------------------------------------------


@dataclass
class ReductionReport:
    input_n: int
    input_m: int
    output_n: int = 0
    output_m: int = 0
    counts: dict[str, int] = field(default_factory=lambda: dict.fromkeys(RULES, 0))
    sweeps: int = 0
    seconds: float = 0.0
    verdicts: dict[str, object] = field(default_factory=dict)
    applications: list[RuleApplication] = field(default_factory=list)

    @property
    def effective(self) -> int:
        return sum(self.counts.values())

    @property
    def reduction_percent(self) -> float:
        if self.input_n == 0:
            return 0.0
        return 100.0 * (self.input_n - self.output_n) / self.input_n

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "input": {"n": self.input_n, "m": self.input_m},
            "output": {"n": self.output_n, "m": self.output_m},
            "applications": dict(self.counts),
            "sweeps": self.sweeps,
            "reduction_percent": round(self.reduction_percent, 4),
            "verdicts": dict(self.verdicts),
        }
        if timings:
            out["seconds"] = round(self.seconds, 6)
        return out


def pairs_within(g: Graph, radius: int) -> list[tuple[int, int]]:
    """Unordered pairs ``(v, w)``, ``v < w``, at distance at most ``radius``."""
    out = []
    for v in g.vertices:
        out.extend((v, w) for w in sorted(bfs_distances(g, v, cutoff=radius)) if w > v)
    return out


def pairs_sharing(g: Graph, count: int) -> list[tuple[int, int]]:
    """Unordered pairs with at least ``count`` common neighbours."""
    shared: dict[tuple[int, int], int] = {}
    for u in g.vertices:
        for v, w in itertools.combinations(sorted(g.neighbors(u)), 2):
            shared[v, w] = shared.get((v, w), 0) + 1
    return sorted(p for p, c in shared.items() if c >= count)


class _Reducer:
    def __init__(self, g: Graph):
        self.g = g
        self.next_id = g.next_id()
        self.report = ReductionReport(g.n, g.m)

    def record(self, h: Graph, app: RuleApplication) -> bool:
        if not app.effective:
            return False
        if h.n > self.g.n:
            raise InvariantError(f"{app.rule} increased the vertex count")
        self.g = h
        self.next_id = max(self.next_id, max(app.added, default=-1) + 1)
        self.report.counts[app.rule] += 1
        self.report.applications.append(app)
        return True

    def rule1_pass(self) -> int:
        hits = 0
        for v in self.g.vertices:
            if v in self.g:
                hits += self.record(*apply_rule1(self.g, v, self.next_id))
        return hits

    def rule2_pass(self) -> int:
        hits = 0
        for v, w in pairs_within(self.g, 3):
            if v in self.g and w in self.g:
                hits += self.record(*apply_rule2(self.g, v, w, self.next_id))
        return hits

    def rule3_pass(self) -> int:
        hits = 0
        for v, w in pairs_sharing(self.g, SHRINK_THRESHOLD):
            while v in self.g and w in self.g:
                regions = [r for r in find_simple_regions(self.g, v, w) if r.size >= SHRINK_THRESHOLD]
                if not regions or not self.record(*apply_rule3(self.g, regions[0], self.next_id)):
                    break
                hits += 1
        return hits

    def run(self, max_sweeps: int | None) -> tuple[Graph, ReductionReport]:
        started = time.perf_counter()
        while max_sweeps is None or self.report.sweeps < max_sweeps:
            self.report.sweeps += 1
            hits = self.rule1_pass() + self.rule2_pass() + self.rule3_pass()
            if hits == 0:
                break
        self.report.seconds = time.perf_counter() - started
        self.report.output_n, self.report.output_m = self.g.n, self.g.m
        return self.g, self.report


def reduce(g: Graph, max_sweeps: int | None = None) -> tuple[Graph, ReductionReport]:
    """Apply the three rules in sweeps until a whole sweep changes nothing.

    Each sweep runs rule 1 over vertices in ascending order, rule 2 over
    pairs at distance at most three and rule 3 over pairs with at least five
    common neighbours.  Fresh vertices always get ids above every id seen so
    far, so applications can be replayed and lifted.
    """
    return _Reducer(g).run(max_sweeps)
