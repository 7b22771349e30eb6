"""Local search over red-count neighbourhoods of a perfect matching.

``Nb_s(M)`` holds every PM whose red edges (or blue edges) differ from those
of ``M`` in at most ``s`` places. Its set of achievable red counts is found by
guessing which ``d <= s`` red (blue) edges of ``M`` to drop and checking
which completions of the rest exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from . import options
from .errors import DomainError
from .graph import ColoredGraph, PerfectMatching, invert_coloring
from .matching import min_red_pm, min_red_pm_avoiding, subset_table, vertex_mask


@dataclass(frozen=True)
class NeighborhoodProfile:
    center: PerfectMatching
    radius: int
    entries: dict = field(repr=False)  # red count -> representative PM

    @property
    def keys(self) -> tuple[int, ...]:
        return tuple(sorted(self.entries))


@dataclass(frozen=True)
class LocalSearchOutcome:
    status: str  # "found" | "failed" | "no_pm"
    matching: Optional[PerfectMatching]
    trace: tuple[tuple[int, int], ...]

    @property
    def iterations(self) -> int:
        return len(self.trace) - 1 if self.trace else 0


def _check_center(graph: ColoredGraph, m: PerfectMatching):
    if not m.edges <= graph.edge_set or 2 * len(m.edges) != graph.n or len(m.mates) != graph.n:
        raise DomainError("center is not a perfect matching of the graph")


def _offer(best: dict, key: int, edges):
    cand = sorted(edges)
    if key not in best or cand < best[key]:
        best[key] = cand


def _phase_table(graph, s, same_color):
    """One guessing phase. ``same_color`` holds the edges of the center whose
    colour is being guessed; the keys are red counts under ``graph``."""
    t = subset_table(graph)
    guessed = sorted(same_color)
    for d in range(min(s, len(guessed)) + 1):
        for drop in combinations(guessed, d):
            kept = [e for e in guessed if e not in drop]
            mask = t.full ^ vertex_mask(v for e in kept for v in e)
            bits = t.bits(mask)
            for j in range(s - d + 1):
                if (bits >> j) & 1:
                    rest = t.reconstruct(mask, j)
                    yield j, len(kept), kept + rest


def neighborhood_profile(graph: ColoredGraph, center: PerfectMatching, s: int) -> NeighborhoodProfile:
    """Achievable red counts in ``Nb_s(center)`` with one PM for each.

    Representatives are the lexicographically smallest (sorted edge lists)
    among the matchings the two phases produce for that red count.
    """
    if s < 0:
        raise DomainError("radius must be non-negative")
    _check_center(graph, center)
    if graph.n > options.MAX_TABLE_VERTICES:
        return _profile_explicit(graph, center, s)
    best: dict = {}
    red_m = [e for e in center.edges if e in graph.red]
    # phase 1: guess the red edges, complete with blue ones
    for j, kept, edges in _phase_table(graph, s, red_m):
        _offer(best, kept + j, edges)
    # phase 2: guess the blue edges, complete with red ones
    inv = invert_coloring(graph)
    blue_m = [e for e in center.edges if e not in graph.red]
    half = graph.n // 2
    for j, kept, edges in _phase_table(inv, s, blue_m):
        _offer(best, half - kept - j, edges)
    entries = {k: PerfectMatching.of(graph, es) for k, es in best.items()}
    return NeighborhoodProfile(center, s, entries)


def _profile_explicit(graph: ColoredGraph, center: PerfectMatching, s: int) -> NeighborhoodProfile:
    """The same two phases with the guessed sets enumerated explicitly and a
    blossom matcher deciding each completion."""
    best: dict = {}
    half = graph.n // 2
    for phase in (0, 1):
        g = graph if phase == 0 else invert_coloring(graph)
        guessed = sorted(e for e in center.edges if e in g.red)
        pool = sorted(g.red - center.edges)
        blue_only = g.restrict_edges(g.blue)
        for d in range(min(s, len(guessed)) + 1):
            for drop in combinations(guessed, d):
                kept = [e for e in guessed if e not in drop]
                used = {v for e in kept for v in e}
                for extra in _matchings_within(pool, used, s - d):
                    x = kept + list(extra)
                    cover = used | {v for e in extra for v in e}
                    rest = min_red_pm_avoiding(blue_only, cover)
                    if rest is None:
                        continue
                    key = len(x) if phase == 0 else half - len(x)
                    _offer(best, key, x + rest)
    entries = {k: PerfectMatching.of(graph, es) for k, es in best.items()}
    return NeighborhoodProfile(center, s, entries)


def _matchings_within(pool, used, budget):
    """Matchings of size <= budget drawn from ``pool`` avoiding ``used``."""
    yield ()
    if budget <= 0:
        return

    def rec(start, chosen, blocked):
        for idx in range(start, len(pool)):
            u, v = pool[idx]
            if u in blocked or v in blocked:
                continue
            nxt = chosen + ((u, v),)
            yield nxt
            if len(nxt) < budget:
                yield from rec(idx + 1, nxt, blocked | {u, v})

    yield from rec(0, (), frozenset(used))


def local_search_em(graph: ColoredGraph, k: int, s: int) -> LocalSearchOutcome:
    """``Local(s)``: climb from a min-red PM towards exactly ``k`` red edges.

    Each step moves to the admissible neighbour with the most red edges
    (ties go to the lexicographically smallest representative).
    """
    if s < 0:
        raise DomainError("radius must be non-negative")
    start = min_red_pm(graph)
    if start.matching is None:
        return LocalSearchOutcome("no_pm", None, ())
    m = start.matching
    trace = [(0, m.red_count)]
    if k < m.red_count or 2 * k > graph.n:
        return LocalSearchOutcome("failed", None, tuple(trace))
    it = 0
    while m.red_count != k:
        prof = neighborhood_profile(graph, m, s)
        admissible = [key for key in prof.entries if m.red_count < key <= k]
        if not admissible:
            return LocalSearchOutcome("failed", None, tuple(trace))
        m = prof.entries[max(admissible)]
        it += 1
        trace.append((it, m.red_count))
    assert m.red_count == k
    return LocalSearchOutcome("found", m, tuple(trace))


def neighborhood_keys_bruteforce(graph: ColoredGraph, center: PerfectMatching, s: int, pms) -> set[int]:
    """``{r(M') : dist(center, M') <= s}`` over an explicit list of PMs."""
    out = set()
    for pm in pms:
        diff = center.edges ^ pm.edges
        r = sum(1 for e in diff if e in graph.red)
        if min(r, len(diff) - r) <= s:
            out.add(pm.red_count)
    return out
