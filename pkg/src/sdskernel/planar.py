"""Simple regions, plane embeddings and region decompositions.

Simple regions are found combinatorially: an interior is a set of common
neighbours of the poles whose neighbourhoods are sealed inside the region.
Full regions and decompositions work on a rotation system obtained from a
planarity test.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .errors import (
    EmbeddingMismatchError,
    InvalidRegionError,
    InvariantError,
    NonPlanarError,
    NotDominatingError,
    ParameterError,
)
from .graph import Graph, distance, induced_subgraph, is_isomorphic_small
from .neighborhoods import partition_pair

P3 = Graph.from_edges([(0, 1), (1, 2)])

#: smallest number of non-pole vertices for which a simple region is shrunk
SHRINK_THRESHOLD = 5

#: bounds checked on reduced plane graphs
REGION_VERTEX_BOUND = 87
OUTSIDE_FACTOR = 97
BOUNDARY_N1_BOUND = 4
KERNEL_FACTOR = 358


# -- simple regions --------------------------------------------------------


@dataclass(frozen=True)
class SimpleRegion:
    poles: tuple[int, int]
    boundary: frozenset[int]
    interior: frozenset[int]

    @property
    def size(self) -> int:
        """Number of non-pole vertices."""
        return len(self.boundary) + len(self.interior)

    def as_dict(self) -> dict:
        return {"poles": list(self.poles), "boundary": sorted(self.boundary), "interior": sorted(self.interior)}


def _sealed_interior(g: Graph, v: int, w: int, boundary: frozenset[int], pool: frozenset[int]) -> frozenset[int]:
    """Largest subset ``I`` of ``pool`` whose members only see poles, boundary and ``I``."""
    inner = set(pool)
    changed = True
    while changed:
        changed = False
        allowed = inner | boundary | {v, w}
        for z in sorted(inner):
            if not g.neighbors(z) <= allowed:
                inner.discard(z)
                changed = True
                allowed = inner | boundary | {v, w}
    return frozenset(inner)


def interior_is_p3(g: Graph, interior) -> bool:
    return len(interior) == 3 and is_isomorphic_small(induced_subgraph(g, interior), P3)


def _shrinkable(g: Graph, boundary: frozenset[int], interior: frozenset[int]) -> bool:
    """Extra conditions for regions large enough to be shrunk.

    The boundary must not dominate the interior on its own, and no single
    interior vertex may dominate the interior unless it is an induced P3.
    Both hold automatically for regions of a plane graph; on other graphs
    they are what keeps the shrinking step size preserving.
    """
    seen_from_boundary = set()
    for b in boundary:
        seen_from_boundary |= g.neighbors(b)
    if interior <= seen_from_boundary:
        return False
    if interior_is_p3(g, interior):
        return True
    return not any(interior <= g.closed_neighborhood(z) for z in interior)


def region_violation(g: Graph, region: SimpleRegion) -> str | None:
    """First reason ``region`` is not a simple region of ``g``, or ``None``."""
    v, w = region.poles
    if v == w or v not in g or w not in g:
        return "poles must be two distinct vertices of the graph"
    members = region.boundary | region.interior
    if not all(x in g for x in members):
        return "region mentions unknown vertices"
    if region.boundary & region.interior:
        return "boundary and interior overlap"
    if len(region.boundary) > 2:
        return "more than two boundary vertices"
    if not region.interior:
        return "empty interior"
    common = g.neighbors(v) & g.neighbors(w)
    if not members <= common:
        return "a region vertex is not a common neighbour of both poles"
    allowed = members | {v, w}
    for z in sorted(region.interior):
        if not g.neighbors(z) <= allowed:
            return f"interior vertex {z} has a neighbour outside the region"
    if region.size >= SHRINK_THRESHOLD and not _shrinkable(g, region.boundary, region.interior):
        return "interior can be dominated from the boundary or by a single vertex"
    return None


def validate_region(g: Graph, region: SimpleRegion) -> None:
    problem = region_violation(g, region)
    if problem is not None:
        raise InvalidRegionError(problem)


def _best_region(g: Graph, v: int, w: int, pool: frozenset[int], strict: bool = True) -> SimpleRegion | None:
    best = None
    best_key = None
    ordered = sorted(pool)
    for boundary in itertools.combinations(ordered, 2):
        bset = frozenset(boundary)
        interior = _sealed_interior(g, v, w, bset, pool - bset)
        if not interior:
            continue
        if strict and len(interior) + 2 >= SHRINK_THRESHOLD and not _shrinkable(g, bset, interior):
            continue
        key = (-len(interior), boundary)
        if best_key is None or key < best_key:
            best, best_key = SimpleRegion((v, w), bset, interior), key
    return best


def find_simple_regions(g: Graph, v: int, w: int, strict: bool = True) -> list[SimpleRegion]:
    """Pairwise interior-disjoint simple regions between ``v`` and ``w``.

    Regions are produced greedily: the boundary (two common neighbours
    closing the region off) maximising the sealed interior wins, ties going to the
    lexicographically smallest boundary; its interior is then taken out of
    play and the search repeats.  With ``strict=False`` large sealed sets are
    reported even when they fail the extra shrinking conditions, which can
    only happen in non-planar graphs.
    """
    g.require((v, w))
    if v == w:
        raise ValueError("simple regions need two distinct poles")
    common = (g.neighbors(v) & g.neighbors(w)) - {v, w}
    regions = []
    pool = common
    while pool:
        region = _best_region(g, v, w, pool, strict)
        if region is None:
            break
        regions.append(region)
        pool = pool - region.interior
    return regions


# -- embeddings ------------------------------------------------------------


def face_walks(rotation: dict[int, list[int]]) -> list[list[tuple[int, int]]]:
    """Faces of a rotation system as cyclic lists of half-edges.

    After arriving at ``x`` from ``u`` the walk leaves along the neighbour
    following ``u`` in the rotation of ``x``.
    """
    position = {x: {u: i for i, u in enumerate(nbrs)} for x, nbrs in rotation.items()}
    seen = set()
    faces = []
    for u in sorted(rotation):
        for x in rotation[u]:
            if (u, x) in seen:
                continue
            face = []
            h = (u, x)
            while h not in seen:
                seen.add(h)
                face.append(h)
                a, b = h
                nbrs = rotation[b]
                h = (b, nbrs[(position[b][a] + 1) % len(nbrs)])
            faces.append(face)
    return faces


class Embedding:
    """A rotation system: the clockwise cyclic order of neighbours at each vertex."""

    def __init__(self, rotation: Mapping[int, Sequence[int]]):
        self.rotation: dict[int, tuple[int, ...]] = {v: tuple(nbrs) for v, nbrs in rotation.items()}
        self._faces: list[list[tuple[int, int]]] | None = None
        self._face_of: dict[tuple[int, int], int] | None = None

    @classmethod
    def from_networkx(cls, emb: nx.PlanarEmbedding) -> Embedding:
        return cls({v: list(emb.neighbors_cw_order(v)) for v in sorted(emb.nodes)})

    def faces(self) -> list[list[tuple[int, int]]]:
        if self._faces is None:
            self._faces = face_walks({v: list(r) for v, r in self.rotation.items()})
        return self._faces

    def face_of(self, half_edge: tuple[int, int]) -> int:
        if self._face_of is None:
            self._face_of = {h: i for i, f in enumerate(self.faces()) for h in f}
        return self._face_of[half_edge]

    def check(self, g: Graph | None = None) -> None:
        """Raise unless the rotation is symmetric, duplicate free and (optionally) matches ``g``."""
        for v, nbrs in self.rotation.items():
            if len(set(nbrs)) != len(nbrs):
                raise EmbeddingMismatchError(f"vertex {v} lists a neighbour twice")
            for u in nbrs:
                if v not in self.rotation.get(u, ()):
                    raise EmbeddingMismatchError(f"edge {v}-{u} appears in only one rotation")
        if g is not None:
            if set(self.rotation) != set(g.vertices):
                raise EmbeddingMismatchError("embedding and graph have different vertex sets")
            for v in g.vertices:
                if set(self.rotation[v]) != g.neighbors(v):
                    raise EmbeddingMismatchError(f"rotation at {v} does not match its neighbourhood")

    def euler_holds(self) -> bool:
        """``n - m + f = 2`` for every connected component, isolated vertices having one face."""
        comp: dict[int, int] = {}
        for root in self.rotation:
            if root in comp:
                continue
            comp[root] = root
            todo = [root]
            while todo:
                x = todo.pop()
                for y in self.rotation[x]:
                    if y not in comp:
                        comp[y] = root
                        todo.append(y)
        tally: dict[int, list[int]] = {}
        for v, r in comp.items():
            t = tally.setdefault(r, [0, 0, 0])
            t[0] += 1
            t[1] += len(self.rotation[v])
        for f in self.faces():
            tally[comp[f[0][0]]][2] += 1
        for r, (n, twice_m, f) in tally.items():
            if twice_m == 0:
                f = 1
            if n - twice_m // 2 + f != 2:
                return False
        return True

    def arc(self, u: int, start: int, stop: int) -> list[int]:
        """Neighbours of ``u`` strictly after ``start`` and strictly before ``stop`` in rotation order."""
        r = self.rotation[u]
        i = r.index(start)
        out = []
        for k in range(1, len(r)):
            x = r[(i + k) % len(r)]
            if x == stop:
                break
            out.append(x)
        return out


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    embedding: Embedding | None = None
    certificate: Graph | None = None


def _to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    return h


def test_planarity(g: Graph) -> PlanarityResult:
    """Embedding when ``g`` is planar, otherwise a Kuratowski subgraph as certificate."""
    planar, found = nx.check_planarity(_to_networkx(g), counterexample=True)
    if planar:
        return PlanarityResult(True, Embedding.from_networkx(found))
    return PlanarityResult(False, certificate=Graph(found.nodes, found.edges))


test_planarity.__test__ = False


def planar_embedding(g: Graph) -> Embedding:
    result = test_planarity(g)
    if not result.planar:
        raise NonPlanarError("graph is not planar")
    return result.embedding


# -- regions ---------------------------------------------------------------


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _path_edges(p: Sequence[int]) -> set[tuple[int, int]]:
    return {_edge(a, b) for a, b in zip(p, p[1:])}


@dataclass(frozen=True)
class Region:
    """A closed area bounded by two v-w paths of length at most three.

    Both paths coincide for a degenerate region, which then has no faces.
    ``faces`` are indices into the embedding's face list and
    ``inner_edges`` the edges of the region not on its boundary.
    """

    poles: tuple[int, int]
    boundary_paths: tuple[tuple[int, ...], tuple[int, ...]]
    enclosed: frozenset[int]
    faces: frozenset[int] = frozenset()
    inner_edges: frozenset[tuple[int, int]] = frozenset()

    @property
    def boundary(self) -> frozenset[int]:
        return frozenset(self.boundary_paths[0]) | frozenset(self.boundary_paths[1])

    @property
    def interior(self) -> frozenset[int]:
        return self.enclosed - self.boundary

    @property
    def size(self) -> int:
        return len(self.enclosed)

    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(_path_edges(self.boundary_paths[0]) | _path_edges(self.boundary_paths[1])) | self.inner_edges

    def as_dict(self) -> dict:
        return {
            "poles": list(self.poles),
            "boundary_paths": [list(p) for p in self.boundary_paths],
            "vertices": sorted(self.enclosed),
        }


def short_paths(g: Graph, v: int, w: int, blocked: Iterable[int] = ()) -> list[tuple[int, ...]]:
    """Simple v-w paths of length at most three avoiding ``blocked`` internally, in lexicographic order."""
    blocked = set(blocked) | {v, w}
    out: list[tuple[int, ...]] = []
    if g.has_edge(v, w):
        out.append((v, w))
    for a in sorted(g.neighbors(v) - blocked):
        if g.has_edge(a, w):
            out.append((v, a, w))
        for b in sorted((g.neighbors(a) & g.neighbors(w)) - blocked - {a}):
            out.append((v, a, b, w))
    return sorted(out, key=lambda p: (len(p), p))


def _bubbles(p1: Sequence[int], p2: Sequence[int]) -> list[list[int]] | None:
    """Simple cycles enclosed between two v-w paths, each as ``p1`` piece then reversed ``p2`` piece.

    ``None`` when the shared vertices appear in different orders on the two paths.
    """
    shared = [x for x in p1 if x in set(p2)]
    if shared != [x for x in p2 if x in set(p1)]:
        return None
    out = []
    for a, b in zip(shared, shared[1:]):
        s1 = list(p1[p1.index(a) : p1.index(b) + 1])
        s2 = list(p2[p2.index(a) : p2.index(b) + 1])
        if s1 != s2:
            out.append(s1 + list(reversed(s2))[1:-1])
    return out


def _sided_region(
    g: Graph,
    emb: Embedding,
    p1: tuple[int, ...],
    p2: tuple[int, ...],
    forward: bool,
    allowed: frozenset[int],
    forbidden: frozenset[int],
) -> Region | None:
    """Region between two confluent paths on one side, or ``None`` if that side leaves ``allowed``.

    The area is the union of the discs bounded by the bubbles of the two
    paths, all taken on the same side of ``p1``.
    """
    bubbles = _bubbles(p1, p2)
    if not bubbles:
        return None
    on_paths = set(p1) | set(p2)
    path_edges = _path_edges(p1) | _path_edges(p2)
    inside: set[int] = set()
    chords: set[tuple[int, int]] = set()
    starts: list[tuple[int, int]] = []
    todo: deque[int] = deque()
    for cyc in bubbles:
        if not forward:
            cyc = cyc[::-1]
        k = len(cyc)
        for i, c in enumerate(cyc):
            starts.append((cyc[i - 1], c))
            for x in emb.arc(c, cyc[i - 1], cyc[(i + 1) % k]):
                if x in on_paths:
                    if _edge(c, x) not in path_edges:
                        chords.add(_edge(c, x))
                elif x not in inside:
                    inside.add(x)
                    todo.append(x)
    while todo:
        x = todo.popleft()
        if x not in allowed or x in forbidden:
            return None
        for y in g.neighbors(x):
            if y not in on_paths and y not in inside:
                inside.add(y)
                todo.append(y)
    inner_edges = set(chords)
    for x in inside:
        inner_edges.update(_edge(x, y) for y in g.neighbors(x))
    faces = {emb.face_of(h) for h in starts}
    todo_faces = deque(faces)
    while todo_faces:
        f = todo_faces.popleft()
        for a, b in emb.faces()[f]:
            if _edge(a, b) in path_edges:
                continue
            twin = emb.face_of((b, a))
            if twin not in faces:
                faces.add(twin)
                todo_faces.append(twin)
    return Region(
        (p1[0], p1[-1]), (p1, p2), frozenset(on_paths | inside), frozenset(faces), frozenset(inner_edges - path_edges)
    )


def candidate_regions(g: Graph, emb: Embedding, v: int, w: int, base: Iterable[int]) -> list[Region]:
    """Regions between ``v`` and ``w`` containing no other vertex of ``base``, largest first."""
    forbidden = frozenset(base) - {v, w}
    allowed = g.closed_neighborhood(v) | g.closed_neighborhood(w)
    paths = short_paths(g, v, w, forbidden)
    out = [Region((v, w), (p, p), frozenset(p)) for p in paths]
    for p1, p2 in itertools.combinations(paths, 2):
        if not confluent(p1, p2, emb):
            continue
        for forward in (True, False):
            region = _sided_region(g, emb, p1, p2, forward, allowed, forbidden)
            if region is not None:
                out.append(region)
    out.sort(key=lambda r: (-r.size, -len(r.faces), r.boundary_paths, sorted(r.faces)))
    return out


# -- confluence and crossing -----------------------------------------------


def _interleaved(rot: Sequence[int], first: tuple[int, int], second: tuple[int, int]) -> bool:
    pos = {}
    for i, x in enumerate(rot):
        pos.setdefault(x, i)
    lo, hi = sorted((pos[first[0]], pos[first[1]]))
    return (lo < pos[second[0]] < hi) != (lo < pos[second[1]] < hi)


def _contract(rot: dict[int, list[int]], p, q, a: int, b: int):
    """Contract edge ``a-b`` into ``a`` in the rotation copy and both paths."""
    ra, rb = rot[a], rot[b]
    i, j = ra.index(b), rb.index(a)
    rot[a] = ra[i + 1 :] + ra[:i] + rb[j + 1 :] + rb[:j]
    for x in rb:
        if x != a and x in rot:
            rot[x] = [a if y == b else y for y in rot[x]]
    del rot[b]

    def fold(path):
        out = []
        for x in path:
            x = a if x == b else x
            if not out or out[-1] != x:
                out.append(x)
        return out

    return fold(p), fold(q)


def confluent(p: Sequence[int], q: Sequence[int], emb: Embedding) -> bool:
    """Whether two simple paths touch without crossing in the embedding.

    Vertex-disjoint paths are confluent.  Otherwise shared edges are
    contracted and at every shared vertex that is internal to both paths
    the two neighbour pairs must not alternate in the rotation.
    """
    if not set(p) & set(q):
        return True
    p, q = list(p), list(q)
    rot = emb.rotation
    common = _path_edges(p) & _path_edges(q)
    if common:
        touched = set(p) | set(q)
        for x in list(touched):
            touched.update(emb.rotation[x])
        rot = {x: list(emb.rotation[x]) for x in touched}
        while common:
            p, q = _contract(rot, p, q, *min(common))
            common = _path_edges(p) & _path_edges(q)
    for u in set(p) & set(q):
        i, j = p.index(u), q.index(u)
        if 0 < i < len(p) - 1 and 0 < j < len(q) - 1:
            if u in rot and _interleaved(rot[u], (p[i - 1], p[i + 1]), (q[j - 1], q[j + 1])):
                return False
    return True


def crossing(r1: Region, r2: Region, emb: Embedding) -> bool:
    """True unless the two regions only meet along confluent boundaries."""
    if r1.interior & r2.enclosed or r2.interior & r1.enclosed:
        return True
    if r1.faces & r2.faces:
        return True
    if r1.inner_edges & r2.edges() or r2.inner_edges & r1.edges():
        return True
    return not all(confluent(p, q, emb) for p in set(r1.boundary_paths) for q in set(r2.boundary_paths))


def region_problem(g: Graph, emb: Embedding, region: Region, base: Iterable[int] = ()) -> str | None:
    """First broken requirement of a region, or ``None``."""
    v, w = region.poles
    for p in region.boundary_paths:
        if p[0] != v or p[-1] != w or len(p) > 4 or len(set(p)) != len(p):
            return f"boundary path {p} is not a simple {v}-{w} path of length at most 3"
        if any(not g.has_edge(a, b) for a, b in zip(p, p[1:])):
            return f"boundary path {p} uses a non-edge"
    if not confluent(*region.boundary_paths, emb):
        return "boundary paths cross"
    allowed = g.closed_neighborhood(v) | g.closed_neighborhood(w)
    if not region.enclosed <= allowed:
        return f"vertices {sorted(region.enclosed - allowed)} lie outside N(v, w)"
    if region.enclosed & frozenset(base) - {v, w}:
        return "the region contains another base vertex"
    for x in region.interior:
        if not g.neighbors(x) <= region.enclosed:
            return f"interior vertex {x} has a neighbour outside the region"
    return None


# -- decompositions --------------------------------------------------------


@dataclass(frozen=True)
class UnderlyingMultigraph:
    vertices: frozenset[int]
    edges: tuple[tuple[int, int], ...]

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def degree_sum(self) -> int:
        return sum(self.degree(v) for v in self.vertices)

    def handshake_holds(self) -> bool:
        return self.degree_sum() == 2 * len(self.edges)


@dataclass(frozen=True)
class RegionDecomposition:
    base_set: frozenset[int]
    regions: tuple[Region, ...] = field(default_factory=tuple)

    def covered(self) -> frozenset[int]:
        return frozenset().union(*(r.enclosed for r in self.regions))

    def multigraph(self) -> UnderlyingMultigraph:
        return UnderlyingMultigraph(self.base_set, tuple(r.poles for r in self.regions))

    def as_dict(self) -> dict:
        return {"base_set": sorted(self.base_set), "regions": [r.as_dict() for r in self.regions]}


def region_count_bound(d_size: int) -> int | None:
    return 3 * d_size - 6 if d_size >= 3 else None


def _dominates(g: Graph, d: frozenset[int]) -> bool:
    return all(v in d or not g.neighbors(v).isdisjoint(d) for v in g.vertices)


def build_decomposition(g: Graph, emb: Embedding, d: Iterable[int]) -> RegionDecomposition:
    """Greedy maximal decomposition with poles in ``d``.

    Pole pairs at distance at most three are visited in lexicographic order;
    each visit commits the largest candidate region that covers a new vertex
    and crosses no committed region.  Rounds repeat until nothing is added.
    """
    emb.check(g)
    base = frozenset(d)
    g.require(base)
    if not _dominates(g, base):
        raise NotDominatingError("the base set does not dominate the graph")
    pairs = [(v, w) for v, w in itertools.combinations(sorted(base), 2) if distance(g, v, w) <= 3]
    candidates = {pair: candidate_regions(g, emb, *pair, base) for pair in pairs}
    committed: list[Region] = []
    covered: set[int] = set()
    progress = True
    while progress:
        progress = False
        for pair in pairs:
            for region in candidates[pair]:
                if region.enclosed <= covered or any(crossing(region, r, emb) for r in committed):
                    continue
                committed.append(region)
                covered |= region.enclosed
                progress = True
                break
    bound = region_count_bound(len(base))
    if bound is not None and len(committed) > bound:
        raise InvariantError(f"{len(committed)} regions exceed 3|D| - 6 = {bound}")
    return RegionDecomposition(base, tuple(committed))


# -- bound checks ----------------------------------------------------------


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def decomposition_stats(g: Graph, dec: RegionDecomposition) -> dict:
    """Per-region and global counts with pass/fail verdicts against the kernel bounds."""
    regions = []
    for r in dec.regions:
        v, w = r.poles
        n1 = partition_pair(g, v, w).n1 & r.enclosed
        size = len(r.enclosed - {v, w})
        regions.append(
            {
                "poles": [v, w],
                "vertices": size,
                "n1_vertices": len(n1),
                "size_verdict": _verdict(size <= REGION_VERTEX_BOUND),
                "n1_verdict": _verdict(len(n1) <= BOUNDARY_N1_BOUND),
            }
        )
    outside = len(set(g.vertices) - dec.covered() - dec.base_set)
    d_size = len(dec.base_set)
    bound = region_count_bound(d_size)
    multigraph = dec.multigraph()
    verdicts = {
        "region_size": _verdict(all(r["size_verdict"] == "pass" for r in regions)),
        "boundary_n1": _verdict(all(r["n1_verdict"] == "pass" for r in regions)),
        "outside": _verdict(outside <= OUTSIDE_FACTOR * d_size),
        "region_count": _verdict(bound is None or len(dec.regions) <= bound),
        "handshake": _verdict(multigraph.handshake_holds()),
    }
    return {
        "base_size": d_size,
        "region_count": len(dec.regions),
        "region_count_bound": bound,
        "outside": outside,
        "outside_bound": OUTSIDE_FACTOR * d_size,
        "degree_sum": multigraph.degree_sum(),
        "regions": regions,
        "verdicts": verdicts,
        "all_pass": all(v == "pass" for v in verdicts.values()),
    }


@dataclass(frozen=True)
class KernelVerdict:
    n: int
    k: int
    threshold: int
    passed: bool

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "threshold": self.threshold, "verdict": _verdict(self.passed)}


def kernel_bound_check(n_reduced: int, k: int) -> KernelVerdict:
    if k < 1:
        raise ParameterError("the kernel bound needs k >= 1")
    threshold = KERNEL_FACTOR * k
    return KernelVerdict(n_reduced, k, threshold, n_reduced <= threshold)
