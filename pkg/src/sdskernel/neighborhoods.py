"""Three-way splits of a vertex neighbourhood and of a joined pair neighbourhood.

For a vertex ``v`` the neighbours are classified as

* ``n1``: neighbours with a neighbour outside ``N[v]``,
* ``n2``: the remaining neighbours adjacent to some ``n1`` vertex,
* ``n3``: everything else (sealed inside ``N[v]``).

The pair version does the same for ``(N(v) | N(w)) - {v, w}`` with the outside
being everything beyond that set and the two poles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph


@dataclass(frozen=True)
class VertexPartition:
    center: int
    n1: frozenset[int]
    n2: frozenset[int]
    n3: frozenset[int]

    @property
    def n23(self) -> frozenset[int]:
        return self.n2 | self.n3

    def as_dict(self) -> dict:
        return {"center": self.center, "n1": sorted(self.n1), "n2": sorted(self.n2), "n3": sorted(self.n3)}


@dataclass(frozen=True)
class PairPartition:
    poles: tuple[int, int]
    joint: frozenset[int]
    n1: frozenset[int]
    n2: frozenset[int]
    n3: frozenset[int]

    @property
    def n23(self) -> frozenset[int]:
        return self.n2 | self.n3

    def as_dict(self) -> dict:
        return {
            "poles": list(self.poles),
            "joint": sorted(self.joint),
            "n1": sorted(self.n1),
            "n2": sorted(self.n2),
            "n3": sorted(self.n3),
        }


def _split(adj, members: frozenset[int], closed: frozenset[int]):
    n1 = frozenset(u for u in members if not adj[u] <= closed)
    n2 = frozenset(u for u in members - n1 if not adj[u].isdisjoint(n1))
    return n1, n2, members - n1 - n2


def partition_vertex(g: Graph, v: int) -> VertexPartition:
    nbrs = g.neighbors(v)
    n1, n2, n3 = _split(g.adjacency(), nbrs, nbrs | {v})
    return VertexPartition(v, n1, n2, n3)


def partition_pair(g: Graph, v: int, w: int) -> PairPartition:
    """Partition of the joined neighbourhood; the poles themselves are never members."""
    if v == w:
        raise ValueError("partition_pair needs two distinct poles")
    joint = (g.neighbors(v) | g.neighbors(w)) - {v, w}
    n1, n2, n3 = _split(g.adjacency(), joint, joint | {v, w})
    return PairPartition((v, w), joint, n1, n2, n3)


def is_confined(g: Graph, inner: int, outer: int) -> bool:
    """True iff ``N(inner)`` is contained in ``N[outer]``."""
    g.require((outer,))
    return g.neighbors(inner) <= g.closed_neighborhood(outer)
