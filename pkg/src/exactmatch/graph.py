"""Colored graphs, perfect matchings and alternating structures.

Vertices are the integers ``0..n-1``. An edge is stored canonically as a
tuple ``(u, v)`` with ``u < v``; the coloring is the set of red edges, and
blue is everything else in ``E``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import accumulate
from typing import Iterable, Optional

import numpy as np

from .errors import DomainError

Edge = tuple[int, int]

RED = "r"
BLUE = "b"


def canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class ColoredGraph:
    """Simple undirected graph whose edges are colored red or blue."""

    n: int
    edges: tuple[Edge, ...]
    red: frozenset[Edge] = frozenset()
    bipartition: Optional[tuple[frozenset[int], frozenset[int]]] = None

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("vertex count must be non-negative")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DomainError(f"edge {(u, v)} has an endpoint outside 0..{self.n - 1}")
            e = canon(u, v)
            if e in seen:
                raise DomainError(f"duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        red = frozenset(canon(u, v) for u, v in self.red)
        if not red <= seen:
            raise DomainError(f"red edges not in the graph: {sorted(red - seen)}")
        object.__setattr__(self, "red", red)
        if self.bipartition is not None:
            x, y = (frozenset(side) for side in self.bipartition)
            if x & y or (x | y) != frozenset(range(self.n)):
                raise DomainError("bipartition must split the vertex set into two disjoint sides")
            for u, v in self.edges:
                if (u in x) == (v in x):
                    raise DomainError(f"edge {(u, v)} does not cross the bipartition")
            object.__setattr__(self, "bipartition", (x, y))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], red: Iterable[Edge] = (), bipartition=None):
        return cls(n, tuple(edges), frozenset(red), bipartition)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def blue(self) -> frozenset[Edge]:
        return self.edge_set - self.red

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=np.bool_)
        for u, v in self.edges:
            adj[u, v] = adj[v, u] = True
        adj.setflags(write=False)
        return adj

    @cached_property
    def _neighbors(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._neighbors[v]

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and canon(u, v) in self.edge_set

    def color(self, e: Edge) -> str:
        e = canon(*e)
        if e not in self.edge_set:
            raise DomainError(f"{e} is not an edge of the graph")
        return RED if e in self.red else BLUE

    def is_red(self, e: Edge) -> bool:
        return canon(*e) in self.red

    def red_count(self, edges: Iterable[Edge]) -> int:
        return sum(1 for e in edges if canon(*e) in self.red)

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(u, v, is_red)`` as int64 arrays in canonical edge order."""
        m = len(self.edges)
        eu = np.fromiter((e[0] for e in self.edges), dtype=np.int64, count=m)
        ev = np.fromiter((e[1] for e in self.edges), dtype=np.int64, count=m)
        er = np.fromiter((e in self.red for e in self.edges), dtype=np.int64, count=m)
        return eu, ev, er

    def recolor(self, red: Iterable[Edge]) -> "ColoredGraph":
        return ColoredGraph(self.n, self.edges, frozenset(red), self.bipartition)

    def restrict_edges(self, keep: Iterable[Edge]) -> "ColoredGraph":
        keep = frozenset(canon(*e) for e in keep)
        return ColoredGraph(self.n, tuple(e for e in self.edges if e in keep),
                            self.red & keep, self.bipartition)


def invert_coloring(graph: ColoredGraph) -> ColoredGraph:
    """Swap red and blue on every edge."""
    return graph.recolor(graph.blue)


@dataclass(frozen=True)
class PerfectMatching:
    edges: frozenset[Edge]
    red_count: int
    blue_count: int

    @classmethod
    def of(cls, graph: ColoredGraph, edges: Iterable[Edge]) -> "PerfectMatching":
        es = frozenset(canon(*e) for e in edges)
        if not es <= graph.edge_set:
            raise DomainError(f"not edges of the graph: {sorted(es - graph.edge_set)}")
        covered = [0] * graph.n
        for u, v in es:
            covered[u] += 1
            covered[v] += 1
        if any(c != 1 for c in covered):
            raise DomainError("edge set does not cover every vertex exactly once")
        r = graph.red_count(es)
        return cls(es, r, len(es) - r)

    @classmethod
    def from_mates(cls, graph: ColoredGraph, mates) -> "PerfectMatching":
        return cls.of(graph, {canon(v, int(mates[v])) for v in range(graph.n)})

    def __len__(self):
        return len(self.edges)

    def __contains__(self, e) -> bool:
        return canon(*e) in self.edges

    @cached_property
    def mates(self) -> dict[int, int]:
        out = {}
        for u, v in self.edges:
            out[u] = v
            out[v] = u
        return out

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def switch(self, graph: ColoredGraph, edges: Iterable[Edge]) -> "PerfectMatching":
        """``M △ D`` for an edge set ``D``, validated as a perfect matching."""
        return PerfectMatching.of(graph, self.edges ^ frozenset(canon(*e) for e in edges))


def induced_weight(graph: ColoredGraph, matching: PerfectMatching, e: Edge) -> int:
    """-1 for a red matching edge, +1 for a red non-matching edge, 0 for blue."""
    e = canon(*e)
    if e not in graph.edge_set:
        raise DomainError(f"{e} is not an edge of the graph")
    if e not in graph.red:
        return 0
    return -1 if e in matching.edges else 1


def weight_of_set(graph: ColoredGraph, matching: PerfectMatching, edges: Iterable[Edge]) -> int:
    return sum(induced_weight(graph, matching, e) for e in edges)


@dataclass(frozen=True)
class AlternatingStructure:
    """An alternating path or cycle together with its prefix-sum trace.

    For a path, ``vertices`` lists ``v_0 .. v_l``; for a cycle it lists the
    ``l`` distinct vertices once and the closing edge is ``(v_{l-1}, v_0)``.
    ``weights[i]`` is the induced weight of ``edges[i]`` and
    ``prefix_sums[i]`` is the sum of the first ``i`` weights.
    """

    kind: str
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    matched: tuple[bool, ...]
    red: tuple[bool, ...]
    prefix_sums: tuple[int, ...] = field(repr=False)

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def weights(self) -> tuple[int, ...]:
        s = self.prefix_sums
        return tuple(s[i + 1] - s[i] for i in range(len(self.edges)))

    @property
    def weight(self) -> int:
        return self.prefix_sums[-1]

    @property
    def red_count(self) -> int:
        return sum(self.red)

    @property
    def blue_count(self) -> int:
        return len(self.red) - sum(self.red)

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def segment_weight(self, i: int, j: int) -> int:
        """Weight of edges ``i..j`` inclusive (0-based edge positions)."""
        return self.prefix_sums[j + 1] - self.prefix_sums[i]


def _build(kind, graph, matching, vertices):
    vertices = tuple(int(v) for v in vertices)
    if len(set(vertices)) != len(vertices):
        raise DomainError("alternating structures are simple: a vertex repeats")
    if kind == "cycle":
        if len(vertices) < 4 or len(vertices) % 2:
            raise DomainError("an alternating cycle has even length at least 4")
        pairs = list(zip(vertices, vertices[1:] + vertices[:1]))
    else:
        pairs = list(zip(vertices, vertices[1:]))
    edges = tuple(canon(u, v) for u, v in pairs)
    for e in edges:
        if e not in graph.edge_set:
            raise DomainError(f"{e} is not an edge of the graph")
    matched = tuple(e in matching.edges for e in edges)
    for a, b in zip(matched, matched[1:]):
        if a == b:
            raise DomainError("edges do not alternate between matching and non-matching")
    if kind == "cycle" and matched and matched[0] == matched[-1]:
        raise DomainError("edges do not alternate around the cycle")
    red = tuple(e in graph.red for e in edges)
    w = [(-1 if m else 1) if r else 0 for m, r in zip(matched, red)]
    prefix = (0,) + tuple(accumulate(w))
    return AlternatingStructure(kind, vertices, edges, matched, red, prefix)


def alternating_path(graph: ColoredGraph, matching: PerfectMatching, vertices) -> AlternatingStructure:
    return _build("path", graph, matching, vertices)


def alternating_cycle(graph: ColoredGraph, matching: PerfectMatching, vertices) -> AlternatingStructure:
    return _build("cycle", graph, matching, vertices)


def subpath(graph, matching, path: AlternatingStructure, i: int, j: int) -> AlternatingStructure:
    """Path made of edges ``i..j`` (inclusive, 0-based) of ``path``.

    ``path`` may be a cycle; indices then wrap around.
    """
    if path.kind == "cycle":
        ell = path.length
        if not (0 <= j - i < ell):
            raise DomainError("segment must be a proper part of the cycle")
        verts = [path.vertices[(i + k) % ell] for k in range(j - i + 2)]
    else:
        if not (0 <= i <= j < path.length):
            raise DomainError("segment out of range")
        verts = path.vertices[i:j + 2]
    return alternating_path(graph, matching, verts)


@dataclass(frozen=True)
class SymmetricDifference:
    cycles: tuple[AlternatingStructure, ...]
    red_count: int
    blue_count: int

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(e for c in self.cycles for e in c.edges)

    def __len__(self):
        return sum(c.length for c in self.cycles)


def _check_pm(graph: ColoredGraph, matching: PerfectMatching):
    if not matching.edges <= graph.edge_set or 2 * len(matching.edges) != graph.n \
            or len(matching.mates) != graph.n:
        raise DomainError("not a perfect matching of this graph")


def decompose_symmetric_difference(graph: ColoredGraph, m1: PerfectMatching,
                                   m2: PerfectMatching) -> SymmetricDifference:
    """Split ``m1 △ m2`` into its alternating cycles.

    Each cycle starts at its smallest vertex and leaves it along the ``m1``
    edge; cycles are listed by smallest vertex, with weights taken w.r.t. ``m1``.
    """
    _check_pm(graph, m1)
    _check_pm(graph, m2)
    diff = m1.edges ^ m2.edges
    touched = sorted({v for e in diff for v in e})
    seen: set[int] = set()
    cycles = []
    for start in touched:
        if start in seen:
            continue
        verts = [start]
        seen.add(start)
        cur, use_first = m1.mates[start], False
        while cur != start:
            verts.append(cur)
            seen.add(cur)
            cur = m1.mates[cur] if use_first else m2.mates[cur]
            use_first = not use_first
        cycles.append(alternating_cycle(graph, m1, verts))
    r = graph.red_count(diff)
    return SymmetricDifference(tuple(cycles), r, len(diff) - r)


def distance(graph: ColoredGraph, m1: PerfectMatching, m2: PerfectMatching) -> int:
    diff = m1.edges ^ m2.edges
    r = graph.red_count(diff)
    return min(r, len(diff) - r)


def induced_subgraph(graph: ColoredGraph, keep: Iterable[int]) -> tuple[ColoredGraph, tuple[int, ...]]:
    """``G[keep]`` relabelled to ``0..len(keep)-1``; returns the graph and the
    original label of every new vertex."""
    labels = tuple(sorted(set(keep)))
    pos = {v: i for i, v in enumerate(labels)}
    edges = [(pos[u], pos[v]) for u, v in graph.edges if u in pos and v in pos]
    red = [(pos[u], pos[v]) for u, v in graph.red if u in pos and v in pos]
    return ColoredGraph.from_edges(len(labels), edges, red), labels
