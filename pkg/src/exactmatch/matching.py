"""Perfect matchings with an extremal number of red edges.

On graphs with at most ``options.MAX_TABLE_VERTICES`` vertices everything is
answered from a subset table: ``table[mask]`` is a bitset whose bit ``r`` is
set iff ``G[mask]`` has a perfect matching with exactly ``r`` red edges. The
table gives existence, ``k_min`` of every induced subgraph, and a
reconstruction that returns the lexicographically smallest matching with a
prescribed red count. Larger graphs go through networkx's blossom matcher.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional

import networkx as nx
import numpy as np

from . import _kernels, options
from .graph import ColoredGraph, Edge, PerfectMatching, canon, induced_subgraph, invert_coloring


def weight_matrix(graph: ColoredGraph) -> np.ndarray:
    """``-1`` for a non-edge, ``0`` blue, ``1`` red."""
    w = np.full((graph.n, graph.n), -1, dtype=np.int64)
    eu, ev, er = graph.edge_arrays
    w[eu, ev] = er
    w[ev, eu] = er
    return w


def _lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1 if x else -1


class SubsetTable:
    """Red-count landscape of every induced subgraph ``G[mask]``."""

    def __init__(self, graph: ColoredGraph):
        if graph.n > options.MAX_TABLE_VERTICES:
            raise ValueError(f"subset tables are limited to {options.MAX_TABLE_VERTICES} vertices")
        self.graph = graph
        self.w = weight_matrix(graph)
        self.table = _kernels.subset_landscape(graph.n, self.w)
        self.full = (1 << graph.n) - 1

    def bits(self, mask: Optional[int] = None) -> int:
        return int(self.table[self.full if mask is None else mask])

    def landscape(self, mask: Optional[int] = None) -> list[int]:
        b = self.bits(mask)
        return [r for r in range(b.bit_length()) if (b >> r) & 1]

    def kmin(self, mask: Optional[int] = None) -> int:
        """Fewest red edges of a PM of ``G[mask]``; -1 if there is none."""
        return _lowest_bit(self.bits(mask))

    def reconstruct(self, mask: Optional[int], red: int) -> Optional[list[Edge]]:
        """Lexicographically smallest PM of ``G[mask]`` with ``red`` red edges."""
        mask = self.full if mask is None else mask
        if red < 0 or not (self.bits(mask) >> red) & 1:
            return None
        out = []
        while mask:
            i = _lowest_bit(mask)
            rest = mask ^ (1 << i)
            for j in range(i + 1, self.graph.n):
                wij = int(self.w[i, j])
                if wij < 0 or not (rest >> j) & 1:
                    continue
                sub = rest ^ (1 << j)
                if red >= wij and (int(self.table[sub]) >> (red - wij)) & 1:
                    out.append((i, j))
                    mask, red = sub, red - wij
                    break
            else:  # pragma: no cover - impossible when the table is consistent
                raise AssertionError("subset table is inconsistent")
        return out


@lru_cache(maxsize=16)
def subset_table(graph: ColoredGraph) -> SubsetTable:
    return SubsetTable(graph)


def vertex_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class ExtremalResult:
    matching: Optional[PerfectMatching]
    objective: Optional[int]

    @property
    def found(self) -> bool:
        return self.matching is not None


def _nx_min_red(graph: ColoredGraph) -> Optional[list[Edge]]:
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    for e in graph.edges:
        g.add_edge(*e, weight=0 if e in graph.red else 1)
    mate = nx.max_weight_matching(g, maxcardinality=True)
    if 2 * len(mate) != graph.n:
        return None
    return sorted(canon(u, v) for u, v in mate)


def _min_red_edges(graph: ColoredGraph) -> Optional[list[Edge]]:
    if graph.n % 2:
        return None
    if graph.n <= options.MAX_TABLE_VERTICES:
        t = subset_table(graph)
        return t.reconstruct(None, t.kmin())
    return _nx_min_red(graph)


def find_perfect_matching(graph: ColoredGraph,
                          allowed: Optional[Callable[[Edge], bool]] = None) -> Optional[PerfectMatching]:
    """Some PM using only edges accepted by ``allowed`` (all edges if None)."""
    if graph.n % 2:
        return None
    sub = graph if allowed is None else graph.restrict_edges(e for e in graph.edges if allowed(e))
    edges = _min_red_edges(sub)
    return None if edges is None else PerfectMatching.of(graph, edges)


def min_red_pm(graph: ColoredGraph) -> ExtremalResult:
    edges = _min_red_edges(graph)
    if edges is None:
        return ExtremalResult(None, None)
    pm = PerfectMatching.of(graph, edges)
    return ExtremalResult(pm, pm.red_count)


def max_red_pm(graph: ColoredGraph) -> ExtremalResult:
    edges = _min_red_edges(invert_coloring(graph))
    if edges is None:
        return ExtremalResult(None, None)
    pm = PerfectMatching.of(graph, edges)
    return ExtremalResult(pm, pm.red_count)


def min_red_pm_avoiding(graph: ColoredGraph, covered: Iterable[int]) -> Optional[list[Edge]]:
    """Min-red PM of ``G - covered`` as edges of ``G``; None if there is none."""
    covered = set(covered)
    keep = [v for v in range(graph.n) if v not in covered]
    if graph.n <= options.MAX_TABLE_VERTICES:
        t = subset_table(graph)
        mask = vertex_mask(keep)
        return t.reconstruct(mask, t.kmin(mask))
    sub, labels = induced_subgraph(graph, keep)
    edges = _min_red_edges(sub)
    if edges is None:
        return None
    return [canon(labels[u], labels[v]) for u, v in edges]
