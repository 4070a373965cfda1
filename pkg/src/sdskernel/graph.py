"""Immutable simple undirected graphs, plus parsing and canonical serialization.

Vertices are non-negative integers.  A :class:`Graph` never changes after
construction; :meth:`Graph.modify` returns a new graph that shares the
untouched adjacency sets with its parent, so local rewrites stay cheap.
"""

from __future__ import annotations

import io
import math
from collections import deque
from typing import Iterable, Iterator, Mapping, TextIO

from .errors import ParseError, SelfLoopError, SizeBoundError, UnknownVertexError

INFINITY = math.inf

#: default vertex bound for :func:`is_isomorphic_small`
ISO_BOUND = 16

FORMATS = ("edgelist", "dimacs")


class Graph:
    """Simple undirected graph with integer vertex identifiers."""

    __slots__ = ("_adj", "_vertices", "_m", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        adj: dict[int, set[int]] = {}
        for v in vertices:
            v = _vertex_id(v)
            adj.setdefault(v, set())
        for u, v in edges:
            u, v = _vertex_id(u), _vertex_id(v)
            if u == v:
                raise SelfLoopError(u)
            if u not in adj:
                raise UnknownVertexError(u)
            if v not in adj:
                raise UnknownVertexError(v)
            adj[u].add(v)
            adj[v].add(u)
        self._init({v: frozenset(ns) for v, ns in adj.items()})

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> Graph:
        """Build a graph whose vertex set is ``vertices`` plus every edge endpoint."""
        edges = list(edges)
        vs = set(vertices)
        for u, v in edges:
            vs.add(u)
            vs.add(v)
        return cls(vs, edges)

    @classmethod
    def _from_adj(cls, adj: Mapping[int, frozenset[int]]) -> Graph:
        g = cls.__new__(cls)
        g._init(dict(adj))
        return g

    def _init(self, adj: dict[int, frozenset[int]]) -> None:
        self._adj = adj
        self._vertices = tuple(sorted(adj))
        self._m = sum(len(ns) for ns in adj.values()) // 2
        self._hash = None

    # -- queries -----------------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return self._m

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertices)

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertexError(v) from None

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.neighbors(v) | {v}

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors(u)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u in self._vertices:
            for v in sorted(self._adj[u]):
                if u < v:
                    yield u, v

    def require(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            if v not in self._adj:
                raise UnknownVertexError(v)

    def next_id(self) -> int:
        """Smallest identifier strictly greater than every existing vertex."""
        return self._vertices[-1] + 1 if self._vertices else 0

    def adjacency(self) -> Mapping[int, frozenset[int]]:
        return self._adj

    # -- derived graphs ----------------------------------------------------

    def modify(
        self,
        remove: Iterable[int] = (),
        add_vertices: Iterable[int] = (),
        add_edges: Iterable[tuple[int, int]] = (),
    ) -> Graph:
        """Return a copy with ``remove`` deleted, then vertices and edges added."""
        adj = dict(self._adj)
        removed = set(remove)
        touched: dict[int, set[int]] = {}
        for r in removed:
            if r not in adj:
                raise UnknownVertexError(r)
            for x in adj[r]:
                if x not in removed:
                    touched.setdefault(x, set(adj[x])).discard(r)
        for r in removed:
            del adj[r]
        for v in add_vertices:
            if v in adj:
                raise ValueError(f"vertex {v} already exists")
            adj[v] = frozenset()
        for u, v in add_edges:
            if u == v:
                raise SelfLoopError(u)
            for a, b in ((u, v), (v, u)):
                if a not in adj:
                    raise UnknownVertexError(a)
                touched.setdefault(a, set(adj[a])).add(b)
        for x, ns in touched.items():
            adj[x] = frozenset(ns)
        return Graph._from_adj(adj)

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, tuple(self.edges())))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _vertex_id(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ValueError(f"vertex identifiers must be non-negative integers, got {v!r}")
    return v


# -- distances ---------------------------------------------------------------


def bfs_distances(g: Graph, source: int, cutoff: int | None = None) -> dict[int, int]:
    """Hop distances from ``source`` to every vertex within ``cutoff`` hops."""
    g.require((source,))
    adj = g.adjacency()
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if cutoff is not None and du >= cutoff:
            continue
        for x in adj[u]:
            if x not in dist:
                dist[x] = du + 1
                queue.append(x)
    return dist


def distance(g: Graph, u: int, v: int) -> float:
    """Shortest-path length between ``u`` and ``v``; ``inf`` when disconnected."""
    g.require((u, v))
    return bfs_distances(g, u).get(v, INFINITY)


def within_distance(g: Graph, source: int, radius: int) -> set[int]:
    return set(bfs_distances(g, source, cutoff=radius))


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return len(bfs_distances(g, g.vertices[0])) == g.n


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    keep = set(s)
    g.require(keep)
    adj = g.adjacency()
    return Graph._from_adj({v: adj[v] & keep for v in keep})


# -- isomorphism -------------------------------------------------------------


def is_isomorphic_small(g: Graph, h: Graph, bound: int = ISO_BOUND) -> bool:
    """Decide isomorphism by backtracking; both graphs must have ``<= bound`` vertices."""
    for x in (g, h):
        if x.n > bound:
            raise SizeBoundError(f"isomorphism test limited to {bound} vertices, got {x.n}")
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(map(g.degree, g)) != sorted(map(h.degree, h)):
        return False

    # map high-degree vertices first, keeping the order connected where possible
    order: list[int] = []
    seen: set[int] = set()
    for root in sorted(g, key=lambda v: (-g.degree(v), v)):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for x in sorted(g.neighbors(u), key=lambda v: (-g.degree(v), v)):
                if x not in seen:
                    seen.add(x)
                    queue.append(x)

    mapping: dict[int, int] = {}
    used: set[int] = set()
    h_vertices = h.vertices

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        u = order[i]
        du = g.degree(u)
        mapped_nbrs = [mapping[x] for x in g.neighbors(u) if x in mapping]
        mapped_non = [mapping[x] for x in mapping if x not in g.neighbors(u)]
        for c in h_vertices:
            if c in used or h.degree(c) != du:
                continue
            hn = h.neighbors(c)
            if any(y not in hn for y in mapped_nbrs) or any(y in hn for y in mapped_non):
                continue
            mapping[u] = c
            used.add(c)
            if extend(i + 1):
                return True
            del mapping[u]
            used.discard(c)
        return False

    return extend(0)


# -- I/O ---------------------------------------------------------------------


def load_graph(source: TextIO | bytes | str, format: str = "edgelist") -> Graph:
    """Parse a graph from a text stream, ``bytes`` or ``str``.

    ``edgelist``: one ``u v`` pair per line, ``#`` starts a comment, and a line
    holding a single identifier declares an (isolated) vertex.
    ``dimacs``: ``p edge n m`` header, then ``e u v`` lines with 1-based ids;
    ``c`` lines are comments.  Identifiers are shifted to 0-based.
    Duplicate edges collapse; self-loops are rejected.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        source = io.StringIO(source)
    if format == "edgelist":
        return _load_edgelist(source)
    if format == "dimacs":
        return _load_dimacs(source)
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def _parse_int(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno) from None
    return value


def _load_edgelist(stream: TextIO) -> Graph:
    vertices: set[int] = set()
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(stream, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) > 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        ids = [_parse_int(f, lineno) for f in fields]
        if any(x < 0 for x in ids):
            raise ParseError("vertex identifiers must be non-negative", lineno)
        if len(ids) == 1:
            vertices.add(ids[0])
            continue
        u, v = ids
        if u == v:
            raise SelfLoopError(u, lineno)
        vertices.update((u, v))
        edges.add((min(u, v), max(u, v)))
    return Graph(vertices, edges)


def _load_dimacs(stream: TextIO) -> Graph:
    n = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise ParseError("duplicate 'p' header", lineno)
            if len(fields) != 4 or fields[1] not in ("edge", "edges", "col"):
                raise ParseError(f"malformed header {line!r}", lineno)
            n = _parse_int(fields[2], lineno)
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno)
            _parse_int(fields[3], lineno)
        elif fields[0] == "e":
            if len(fields) != 3:
                raise ParseError(f"expected 'e u v', got {line!r}", lineno)
            u, v = (_parse_int(f, lineno) for f in fields[1:])
            if u == v:
                raise SelfLoopError(u - 1, lineno)
            if n is not None and not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"edge endpoint out of range 1..{n}", lineno)
            if u < 1 or v < 1:
                raise ParseError("DIMACS identifiers are 1-based", lineno)
            edges.add((min(u, v) - 1, max(u, v) - 1))
        else:
            raise ParseError(f"unrecognized line {line!r}", lineno)
    if n is None:
        n = max((v + 1 for e in edges for v in e), default=0)
    return Graph(range(n), edges)


def dumps(g: Graph, format: str = "edgelist") -> str:
    """Canonical text form: vertices ascending, each edge once, smaller endpoint first.

    In ``dimacs`` output the vertices are relabelled ``1..n`` in ascending order.
    """
    out = []
    if format == "edgelist":
        out.append(f"# n={g.n} m={g.m}")
        for v in g.vertices:
            if g.degree(v) == 0:
                out.append(f"{v}")
        out.extend(f"{u} {v}" for u, v in g.edges())
    elif format == "dimacs":
        index = {v: i + 1 for i, v in enumerate(g.vertices)}
        out.append(f"p edge {g.n} {g.m}")
        out.extend(f"e {index[u]} {index[v]}" for u, v in g.edges())
    else:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    return "\n".join(out) + "\n"


def dump_graph(g: Graph, stream: TextIO, format: str = "edgelist") -> None:
    stream.write(dumps(g, format))
