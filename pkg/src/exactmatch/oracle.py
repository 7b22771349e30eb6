"""Brute-force ground truth: explicit PM enumeration and the EM landscape.

Enumeration branches on the lowest uncovered vertex and tries its neighbours
in ascending order, so the stream order (and therefore every representative)
is canonical. None of this goes through the subset table used by the
matching engine, which keeps the oracle an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from . import _kernels
from .errors import DomainError
from .graph import ColoredGraph, PerfectMatching, canon
from .matching import weight_matrix

DEFAULT_LIMIT = 10**6


def _csr(graph: ColoredGraph) -> tuple[np.ndarray, np.ndarray]:
    indptr = np.zeros(graph.n + 1, dtype=np.int64)
    flat = []
    for v in range(graph.n):
        nb = graph.neighbors(v)
        flat.extend(nb)
        indptr[v + 1] = indptr[v] + len(nb)
    return indptr, np.asarray(flat, dtype=np.int64)


class PMStream:
    """Iterable over the PMs of a graph in canonical order.

    After iteration finishes, ``truncated`` tells whether more than ``limit``
    PMs exist (only the first ``limit`` were produced).
    """

    def __init__(self, graph: ColoredGraph, limit: int = DEFAULT_LIMIT):
        self.graph = graph
        self.limit = limit
        self.truncated = False
        self.emitted = 0

    def __iter__(self) -> Iterator[PerfectMatching]:
        g = self.graph
        n = g.n
        if n % 2:
            return
        mate = [-1] * n
        edges: list = []

        def rec(i):
            while i < n and mate[i] >= 0:
                i += 1
            if i == n:
                if self.emitted >= self.limit:
                    self.truncated = True
                    return False
                self.emitted += 1
                yield PerfectMatching.of(g, edges)
                return True
            for j in g.neighbors(i):
                if mate[j] >= 0:
                    continue
                mate[i], mate[j] = j, i
                edges.append(canon(i, j))
                more = yield from rec(i + 1)
                edges.pop()
                mate[i] = mate[j] = -1
                if more is False:
                    return False
            return True

        yield from rec(0)


def enumerate_pms(graph: ColoredGraph, limit: int = DEFAULT_LIMIT) -> PMStream:
    return PMStream(graph, limit)


@dataclass(frozen=True)
class Landscape:
    achievable: tuple[int, ...]
    pm_count: int
    representatives: dict = field(repr=False)
    truncated: bool = False

    @property
    def kmin(self) -> Optional[int]:
        return self.achievable[0] if self.achievable else None

    @property
    def kmax(self) -> Optional[int]:
        return self.achievable[-1] if self.achievable else None

    def __contains__(self, k) -> bool:
        return k in self.representatives


def em_landscape(graph: ColoredGraph, limit: int = DEFAULT_LIMIT) -> Landscape:
    """Red counts of all PMs, one canonical representative per count."""
    indptr, nbrs = _csr(graph)
    counts, total, truncated, reps = _kernels.enumerate_pms(graph.n, weight_matrix(graph),
                                                            indptr, nbrs, limit)
    achievable = tuple(int(r) for r in np.flatnonzero(counts))
    representatives = {r: PerfectMatching.from_mates(graph, reps[r]) for r in achievable}
    return Landscape(achievable, int(total), representatives, bool(truncated))


def brute_force_em(graph: ColoredGraph, k: int, limit: int = DEFAULT_LIMIT) -> Optional[PerfectMatching]:
    """First PM in canonical order with exactly ``k`` red edges.

    Raises DomainError when the enumeration is truncated before any such PM
    shows up, since the answer is then unknown.
    """
    stream = enumerate_pms(graph, limit)
    for pm in stream:
        if pm.red_count == k:
            return pm
    if stream.truncated:
        raise DomainError(f"more than {limit} PMs; exact-{k} search is inconclusive")
    return None


def bcpm_truth(land: Landscape, k: int) -> bool:
    """Is there a PM with ``r <= k`` and ``r = k (mod 2)``?"""
    return any(r <= k and (k - r) % 2 == 0 for r in land.achievable)
