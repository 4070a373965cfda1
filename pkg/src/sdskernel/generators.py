"""Seeded graph generators.

All randomness comes from SplitMix64 (Steele, Lea and Flood's constants), so a
``(family, parameters, seed)`` triple names the same graph on every platform.

``random_planar`` grows a random recursive tree and then adds chords, each
drawn between two corners of one face of the current embedding.  Splitting a
face keeps the drawing plane, so every kept edge preserves planarity by
construction and no general planarity test is needed per edge.
"""

from __future__ import annotations

import inspect
import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import ParameterError
from .graph import Graph
from .planar import face_walks

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randbelow(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection sampling."""
        if n <= 0:
            raise ValueError("randbelow needs a positive bound")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def random(self) -> float:
        """Uniform float in ``[0, 1)`` from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


def _probability(p: float) -> float:
    _need(0.0 <= p <= 1.0, f"probability must lie in [0, 1], got {p}")
    return float(p)


# -- named families --------------------------------------------------------


def path(n: int) -> Graph:
    _need(n >= 1, "path needs n >= 1")
    return Graph(range(n), ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    _need(n >= 3, "cycle needs n >= 3")
    return Graph(range(n), ((i, (i + 1) % n) for i in range(n)))


def star(m: int) -> Graph:
    """``K_{1,m}`` with center 0."""
    _need(m >= 1, "star needs m >= 1")
    return Graph(range(m + 1), ((0, i) for i in range(1, m + 1)))


def double_star(m: int) -> Graph:
    """Two disjoint copies of ``K_{1,m}``, centers 0 and ``m + 1``."""
    _need(m >= 1, "double_star needs m >= 1")
    second = m + 1
    edges = [(0, i) for i in range(1, m + 1)] + [(second, second + i) for i in range(1, m + 1)]
    return Graph(range(2 * m + 2), edges)


def complete(n: int) -> Graph:
    _need(n >= 1, "complete needs n >= 1")
    return Graph(range(n), itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """Parts ``0..a-1`` and ``a..a+b-1``."""
    _need(a >= 1 and b >= 1, "complete_bipartite needs two non-empty parts")
    return Graph(range(a + b), ((i, a + j) for i in range(a) for j in range(b)))


def grid(rows: int, cols: int) -> Graph:
    _need(rows >= 1 and cols >= 1, "grid needs positive dimensions")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(range(rows * cols), edges)


# -- random families -------------------------------------------------------


def random_gnp(n: int, p: float, seed: int = 0) -> Graph:
    _need(n >= 1, "random_gnp needs n >= 1")
    p = _probability(p)
    rng = SplitMix64(seed)
    return Graph(range(n), (e for e in itertools.combinations(range(n), 2) if rng.random() < p))


def random_bipartite(a: int, b: int, p: float, seed: int = 0) -> Graph:
    """Random subgraph of ``complete_bipartite(a, b)``."""
    _need(a >= 1 and b >= 1, "random_bipartite needs two non-empty parts")
    p = _probability(p)
    rng = SplitMix64(seed)
    return Graph(range(a + b), ((i, a + j) for i in range(a) for j in range(b) if rng.random() < p))


def random_split(clique: int, independent: int, p: float, seed: int = 0) -> Graph:
    """Clique ``0..clique-1``, independent set after it, cross edges with probability ``p``."""
    _need(clique >= 0 and independent >= 0 and clique + independent >= 1, "random_split needs at least one vertex")
    p = _probability(p)
    rng = SplitMix64(seed)
    edges = list(itertools.combinations(range(clique), 2))
    edges += [(k, clique + i) for i in range(independent) for k in range(clique) if rng.random() < p]
    return Graph(range(clique + independent), edges)


def random_planar(n: int, m: int, seed: int = 0) -> Graph:
    """Connected plane graph on ``n`` vertices with up to ``m`` edges.

    ``m`` is clipped to ``[n - 1, 3n - 6]``; fewer edges come back only if
    the chord sampler keeps hitting faces with no legal chord.
    """
    _need(n >= 1, "random_planar needs n >= 1")
    _need(m >= 0, "random_planar needs m >= 0")
    rng = SplitMix64(seed)
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    rotation: dict[int, list[int]] = {v: [] for v in range(n)}
    for v in range(1, n):
        u = rng.randbelow(v)
        adj[u].add(v)
        adj[v].add(u)
        rotation[u].append(v)
        rotation[v].append(u)
    for v in range(n):
        rng.shuffle(rotation[v])
    target = max(n - 1, min(m, 3 * n - 6)) if n >= 3 else n - 1
    edges = n - 1
    faces = [f for f in face_walks(rotation) if len(f) >= 4]
    misses = 0
    while edges < target and faces and misses < 64 * (target - edges) + 256:
        fi = _pick_weighted(rng, faces)
        face = faces[fi]
        i, j = sorted((rng.randbelow(len(face)), rng.randbelow(len(face))))
        a, b = face[i][1], face[j][1]
        if i == j or a == b or b in adj[a]:
            misses += 1
            continue
        first = [(b, a)] + face[i + 1 : j + 1]
        second = [(a, b)] + face[j + 1 :] + face[: i + 1]
        if len(second) >= 4:
            faces.append(second)
        if len(first) >= 4:
            faces[fi] = first
        else:
            faces.pop(fi)
        adj[a].add(b)
        adj[b].add(a)
        edges += 1
    return Graph(range(n), ((u, v) for u in adj for v in adj[u] if u < v))


def _pick_weighted(rng: SplitMix64, faces: Sequence[list]) -> int:
    """Index of a face chosen with probability proportional to its length."""
    total = sum(len(f) for f in faces)
    r = rng.randbelow(total)
    for i, f in enumerate(faces):
        r -= len(f)
        if r < 0:
            return i
    raise AssertionError("unreachable")


# -- uniform entry point ---------------------------------------------------

FAMILIES: dict[str, Callable[..., Graph]] = {
    "path": path,
    "cycle": cycle,
    "star": star,
    "double_star": double_star,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "grid": grid,
    "random_gnp": random_gnp,
    "random_planar": random_planar,
    "random_bipartite": random_bipartite,
    "random_split": random_split,
}

RANDOM_FAMILIES = frozenset(name for name in FAMILIES if name.startswith("random_"))


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    parameters: tuple = ()
    seed: int = 0

    def parameter_names(self) -> list[str]:
        fn = FAMILIES[self.family]
        return [p for p in inspect.signature(fn).parameters if p != "seed"]


def generate(spec: GeneratorSpec) -> Graph:
    if spec.family not in FAMILIES:
        raise ParameterError(f"unknown family {spec.family!r}; choose from {', '.join(FAMILIES)}")
    names = spec.parameter_names()
    if len(spec.parameters) != len(names):
        raise ParameterError(f"{spec.family} takes parameters ({', '.join(names)}), got {len(spec.parameters)}")
    fn = FAMILIES[spec.family]
    if spec.family in RANDOM_FAMILIES:
        return fn(*spec.parameters, seed=spec.seed)
    return fn(*spec.parameters)
