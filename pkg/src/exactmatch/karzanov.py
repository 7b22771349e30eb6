"""Chords, chord-induced modifiers, rank reduction and the BCPM pipeline.

Cycles are handled as vertex sequences ``c_0 .. c_(L-1)`` (closing edge
implied). A chord joining positions ``i < j`` has arcs of ``j - i`` and
``L - (j - i)`` edges; it is odd when one of them is odd.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import _kernels, options
from .errors import DomainError, StructuralError
from .graph import (AlternatingStructure, ColoredGraph, Edge, PerfectMatching, alternating_cycle,
                    canon, decompose_symmetric_difference, invert_coloring)
from .matching import min_red_pm_avoiding, subset_table
from .oracle import DEFAULT_LIMIT, _csr, em_landscape
from .structure import Modifier


# ------------------------------------------------------------------ chords


@dataclass(frozen=True)
class Chord:
    edge: Edge
    positions: tuple[int, int]
    parity: str  # "odd" | "even"
    split: int
    adjacent: tuple[Edge, ...] = ()


def _cycle_vertices(graph: ColoredGraph, cycle) -> tuple[int, ...]:
    verts = tuple(cycle.vertices) if isinstance(cycle, AlternatingStructure) else tuple(cycle)
    L = len(verts)
    if L < 3 or len(set(verts)) != L:
        raise DomainError("a cycle needs at least three distinct vertices")
    for u, v in zip(verts, verts[1:] + verts[:1]):
        if not graph.has_edge(u, v):
            raise DomainError(f"{canon(u, v)} is not an edge, so this is not a cycle")
    return verts


def _raw_chords(graph, verts):
    L = len(verts)
    adj = graph.adjacency
    out = []
    for i, j in combinations(range(L), 2):
        d = j - i
        if d == 1 or d == L - 1 or not adj[verts[i], verts[j]]:
            continue
        odd = d % 2 == 1 or (L - d) % 2 == 1
        out.append((i, j, "odd" if odd else "even", min(d, L - d)))
    return out


def enumerate_chords(graph: ColoredGraph, cycle) -> list[Chord]:
    """All chords of ``cycle`` with parity, split and adjacent partners.

    Chords ``{u, v}`` and ``{x, y}`` met in the order ``u, v, x, y`` are
    adjacent when ``{v, x}`` and ``{y, u}`` are cycle edges, i.e. each
    endpoint of one sits next to an endpoint of the other.
    """
    verts = _cycle_vertices(graph, cycle)
    L = len(verts)
    raw = _raw_chords(graph, verts)
    by_edge = {canon(verts[i], verts[j]): (i, j) for i, j, _, _ in raw}
    out = []
    for i, j, par, sp in raw:
        partners = []
        for a, b in (((j + 1) % L, (i - 1) % L), ((j - 1) % L, (i + 1) % L)):
            if len({i, j, a, b}) < 4:
                continue
            e = canon(verts[a], verts[b])
            if e in by_edge and e not in partners:
                partners.append(e)
        out.append(Chord(canon(verts[i], verts[j]), (i, j), par, sp, tuple(sorted(partners))))
    return out


@dataclass(frozen=True)
class ChordVerdict:
    status: str  # "holds" | "violated" | "inconclusive"
    cycle: Optional[tuple[int, ...]] = None
    condition: Optional[int] = None
    checked: int = 0


def cycle_violation(graph: ColoredGraph, cycle) -> Optional[int]:
    """Which chord condition an even cycle breaks (1 or 2), else None.

    Plain-Python twin of the scan kernel's per-cycle test, built on
    :func:`enumerate_chords`.
    """
    verts = _cycle_vertices(graph, cycle)
    L = len(verts)
    if L % 2 or L < 6:
        return None
    chords = enumerate_chords(graph, verts)
    present = {c.edge for c in chords}
    even_all = [canon(verts[i], verts[(i + d) % L]) for i in range(L) for d in range(2, L // 2 + 1, 2)]
    if not any(c.parity == "odd" for c in chords) and not all(e in present for e in even_all):
        return 1
    if L >= 8:
        odd = {c.edge for c in chords if c.parity == "odd"}
        if any(c.edge in odd and any(p in odd for p in c.adjacent) for c in chords):
            return None
        need = [canon(verts[i], verts[(i + d) % L]) for i in range(L) for d in range(4, L // 2 + 1, 2)]
        if not all(e in present for e in need):
            return 2
    return None


def check_chord_property(graph: ColoredGraph, max_cycle_len: Optional[int] = None,
                         mode: str = "exhaustive", budget: int = 10**8) -> ChordVerdict:
    """Scan every even cycle of length ``6 .. max_cycle_len`` (default ``n``).

    ``inconclusive`` when the cycle budget runs out, or when
    ``max_cycle_len < n`` and nothing was found, since longer cycles were
    not inspected.
    """
    if mode != "exhaustive":
        raise DomainError("only exhaustive chord scans are supported")
    n = graph.n
    max_len = n if max_cycle_len is None else min(int(max_cycle_len), n)
    indptr, nbrs = _csr(graph)
    adj = graph.adjacency.astype(np.bool_)
    code, cyc, checked = _kernels.chord_scan(n, adj, indptr, nbrs, 6, max_len, budget)
    code = int(code)
    if code in (1, 2):
        return ChordVerdict("violated", tuple(int(v) for v in cyc), code, int(checked))
    if code == 3 or max_len < n:
        return ChordVerdict("inconclusive", None, None, int(checked))
    return ChordVerdict("holds", None, None, int(checked))


# --------------------------------------------------------------- modifiers


def _arc(verts, i, j):
    """Positions ``i, i+1, .., j`` (mod L)."""
    L = len(verts)
    return [verts[(i + s) % L] for s in range(((j - i) % L) + 1)]


def _simple_arc_spans(graph, cyc: AlternatingStructure, use_matched: bool):
    """Circular spans ``(start, length)`` of the simple modifiers of ``cyc``
    alternating in the matching (``use_matched``) or in its complement on
    the cycle. Also returns the chord edges."""
    verts = cyc.vertices
    L = len(verts)
    out = []
    for i, j, par, _ in _raw_chords(graph, verts):
        if par != "odd":
            continue
        fwd_first = cyc.matched[i]  # edge (c_i, c_(i+1))
        if fwd_first == use_matched:
            out.append(((i, j - i), canon(verts[i], verts[j])))
        else:
            out.append(((j, L - (j - i)), canon(verts[i], verts[j])))
    return out


def simple_modifiers(graph: ColoredGraph, pm: PerfectMatching, cycle: AlternatingStructure) -> list[Modifier]:
    """The M-alternating simple modifiers of an M-alternating cycle: one per
    odd chord, closing the chord with the arc whose end edges are in M."""
    if cycle.kind != "cycle":
        raise DomainError("expected an alternating cycle")
    out = []
    for (s, ln), _ in _simple_arc_spans(graph, cycle, True):
        verts = _arc(cycle.vertices, s, s + ln)
        c = alternating_cycle(graph, pm, verts)
        out.append(Modifier(c, c.weight, cycle))
    return out


def _walk(edges: list[Edge]) -> list[int]:
    nb: dict[int, list[int]] = {}
    for u, v in edges:
        nb.setdefault(u, []).append(v)
        nb.setdefault(v, []).append(u)
    if any(len(x) != 2 for x in nb.values()):
        return []
    start = min(nb)
    out, prev, cur = [start], None, start
    while True:
        a, b = nb[cur]
        nxt = a if a != prev else b
        if nxt == start:
            break
        out.append(nxt)
        prev, cur = cur, nxt
    return out if len(out) == len(nb) else []


def cross_modifiers(graph: ColoredGraph, pm: PerfectMatching, cycle: AlternatingStructure) -> list[Modifier]:
    """M-alternating cycles made of two vertex-disjoint even chords and two
    opposite arcs of ``cycle`` between their endpoints."""
    if cycle.kind != "cycle":
        raise DomainError("expected an alternating cycle")
    verts = cycle.vertices
    even = [(i, j) for i, j, par, _ in _raw_chords(graph, verts) if par == "even"]
    out, seen = [], set()
    for (i1, j1), (i2, j2) in combinations(even, 2):
        pts = sorted({i1, j1, i2, j2})
        if len(pts) < 4:
            continue
        a, b, c, d = pts
        chords = {frozenset((i1, j1)), frozenset((i2, j2))}
        options_ = []
        if chords != {frozenset((a, b)), frozenset((c, d))}:
            options_.append(((a, b), (c, d)))
        if chords != {frozenset((b, c)), frozenset((d, a))}:
            options_.append(((b, c), (d, a)))
        for (p, q), (r, s) in options_:
            arc_edges = []
            for lo, hi in ((p, q), (r, s)):
                av = _arc(verts, lo, hi)
                arc_edges += [canon(x, y) for x, y in zip(av, av[1:])]
            es = arc_edges + [canon(verts[i1], verts[j1]), canon(verts[i2], verts[j2])]
            order = _walk(es)
            if not order or frozenset(order) in seen:
                continue
            try:
                cyc = alternating_cycle(graph, pm, order)
            except DomainError:
                continue
            seen.add(frozenset(order))
            out.append(Modifier(cyc, cyc.weight, cycle))
    return out


# -------------------------------------------------------------------- rank


@dataclass(frozen=True)
class RankValue:
    value: Fraction
    size: int
    z: int
    z_m: int
    z_other: int

    def __lt__(self, other: "RankValue") -> bool:
        return self.value < other.value

    def __le__(self, other: "RankValue") -> bool:
        return self.value <= other.value

    @property
    def components(self) -> tuple[int, int, int, int]:
        return self.size, self.z, self.z_m, self.z_other


def max_disjoint_arcs(spans: Sequence[tuple[int, int]], L: int) -> int:
    """Most pairwise vertex-disjoint arcs on a cycle of ``L`` positions.

    An arc ``(s, ln)`` covers positions ``s .. s + ln`` (mod L). Fix the arc
    of an optimum that is taken first; everything else lives in the gap it
    leaves, which is a line segment, so the classic earliest-end greedy is
    exact there.
    """
    spans = [(s % L, ln) for s, ln in spans]
    best = 0
    for s0, l0 in spans:
        gap_lo, gap_hi = s0 + l0 + 1, s0 + L - 1  # free positions, unrolled
        inside = []
        for s, ln in spans:
            st = s
            while st < gap_lo:
                st += L
            if st + ln <= gap_hi:
                inside.append((st + ln, st))
        inside.sort()
        count, last = 1, gap_lo - 1
        for end, st in inside:
            if st > last:
                count += 1
                last = end
        best = max(best, count)
    return best


def _z(graph, diff, use_matched):
    return sum(max_disjoint_arcs([sp for sp, _ in _simple_arc_spans(graph, c, use_matched)], c.length)
               for c in diff.cycles)


def rank(graph: ColoredGraph, m1: PerfectMatching, m2: PerfectMatching) -> RankValue:
    """Exact rank of ``m1 △ m2``.

    The difference cycles alternate first in ``m1`` (matched edges) and then
    in ``m2`` (the other edges), so the two disjoint-modifier counts come
    from the two arc families of each odd chord. Modifiers on different
    cycles never meet.
    """
    diff = decompose_symmetric_difference(graph, m1, m2)
    z = len(diff.cycles)
    z1 = _z(graph, diff, True)
    z2 = _z(graph, diff, False)
    val = Fraction(len(diff)) + Fraction(1, 1 + z) + Fraction(1, graph.n * (1 + max(z1, z2))) \
        if graph.n else Fraction(1)
    return RankValue(val, len(diff), z, z1, z2)


# ---------------------------------------------------------- rank reduction


def _switch_all(graph, base, cycles):
    es = set()
    for c in cycles:
        es ^= set(c.edges)
    return base.switch(graph, es)


def _case_candidates(graph, m, mp, diff):
    """PMs suggested by the case analysis, in the order they are tried."""
    cycles = list(diff.cycles)
    if len(cycles) >= 3:
        for c1, c2 in combinations(cycles, 2):
            for combo in ((c1,), (c2,), (c1, c2)):
                yield _switch_all(graph, m, combo)
        return
    if len(cycles) == 2:
        if all(c.length == 4 for c in cycles):
            for c in cycles:
                yield _switch_all(graph, m, (c,))
            return
        for idx in (0, 1):
            host, other = cycles[idx], cycles[1 - idx]
            if host.length < 6:
                continue
            mods = simple_modifiers(graph, m, host)
            if not mods:
                mods = [x for x in cross_modifiers(graph, m, host) if x.cycle.length == 4]
            for mod in mods:
                for combo in ((other,), (mod.cycle,), (other, mod.cycle)):
                    yield _switch_all(graph, m, combo)
        return
    if len(cycles) != 1:
        return
    (host,) = cycles
    for base, other in ((m, mp), (mp, m)):
        h = alternating_cycle(graph, base, host.vertices)
        mods = simple_modifiers(graph, base, h)
        for a, b in combinations(mods, 2):
            if a.cycle.vertex_set & b.cycle.vertex_set:
                continue
            for combo in ((a.cycle,), (b.cycle,), (a.cycle, b.cycle)):
                yield _switch_all(graph, base, combo)
    L = host.length
    verts = host.vertices
    adj = graph.adjacency
    for direction in (1, -1):
        for off in range(L):
            v = [verts[(off + direction * i) % L] for i in range(L)]
            if not all(adj[v[i], v[(i + 4) % 8]] for i in range(8)):
                continue
            c1 = [v[1], v[2], v[6], v[5]]
            c2 = [v[4], v[3]] + v[7:] + [v[0]]
            try:
                a = alternating_cycle(graph, m, c1)
                b = alternating_cycle(graph, m, c2)
            except DomainError:
                continue
            if a.vertex_set & b.vertex_set:
                continue
            for combo in ((a,), (b,), (a, b)):
                yield _switch_all(graph, m, combo)


def rank_reduction_step(graph: ColoredGraph, m: PerfectMatching, mp: PerfectMatching) -> PerfectMatching:
    """A PM of the same red parity whose difference with each input has
    smaller rank than ``m △ mp``.

    Candidates come from the three cases on the number of difference cycles;
    each is checked for parity and for the two rank inequalities before it
    is returned.
    """
    if (m.red_count - mp.red_count) % 2:
        raise StructuralError("inputs must have the same red parity")
    if m.red_count + 4 > mp.red_count:
        raise StructuralError("need r(M) + 4 <= r(M')")
    diff = decompose_symmetric_difference(graph, m, mp)
    here = rank(graph, m, mp)
    tried = set()
    for cand in _case_candidates(graph, m, mp, diff):
        if cand.edges in tried:
            continue
        tried.add(cand.edges)
        if (cand.red_count - m.red_count) % 2:
            continue
        if rank(graph, cand, m) < here and rank(graph, cand, mp) < here:
            return cand
    raise StructuralError("no case of the rank-reduction argument applies; the chord property "
                          "fails on this difference", diff)


# ----------------------------------------------------------------- BCPM / EM


@dataclass(frozen=True)
class BcpmResult:
    matching: Optional[PerfectMatching]
    k: int
    F: tuple[Edge, ...] = ()

    @property
    def found(self) -> bool:
        return self.matching is not None


def _check_bcpm(res: BcpmResult) -> BcpmResult:
    if res.matching is not None:
        r = res.matching.red_count
        assert r <= res.k and (r - res.k) % 2 == 0
    return res


def bcpm(graph: ColoredGraph, k: int, max_size: int = 4) -> BcpmResult:
    """PM with ``r <= k`` and ``r = k (mod 2)`` from ``F`` plus a min-red PM of
    ``G - V(F)``, over vertex-disjoint edge sets ``|F| <= max_size`` in
    canonical order (smaller sets first, then edge-index order)."""
    if k < 0 or graph.n % 2:
        return BcpmResult(None, k)
    if graph.n <= options.MAX_TABLE_VERTICES:
        t = subset_table(graph)
        eu, ev, er = graph.edge_arrays
        found, chosen, _ = _kernels.bcpm_sweep(graph.n, eu, ev, er, t.table, int(k), int(max_size))
        if not found:
            return BcpmResult(None, k)
        F = [graph.edges[int(i)] for i in chosen if i >= 0]
        rest = min_red_pm_avoiding(graph, [v for e in F for v in e])
        return _check_bcpm(BcpmResult(PerfectMatching.of(graph, F + rest), k, tuple(F)))
    edges = graph.edges
    for size in range(max_size + 1):
        for idx in combinations(range(len(edges)), size):
            F = [edges[i] for i in idx]
            cover = [v for e in F for v in e]
            if len(set(cover)) < len(cover):
                continue
            rest = min_red_pm_avoiding(graph, cover)
            if rest is None:
                if size == 0:
                    return BcpmResult(None, k)
                continue
            r = graph.red_count(F) + graph.red_count(rest)
            if r <= k and (r - k) % 2 == 0:
                return _check_bcpm(BcpmResult(PerfectMatching.of(graph, F + rest), k, tuple(F)))
    return BcpmResult(None, k)


@dataclass(frozen=True)
class KarzanovResult:
    decision: bool
    matching: Optional[PerfectMatching]
    iterations: int = 0
    bounds: tuple = field(default=(), repr=False)


def solve_em_via_karzanov(graph: ColoredGraph, k: int, want_certificate: bool = True,
                          max_iterations: int = 10_000) -> KarzanovResult:
    """Decide EM from two BCPM calls; optionally build an exact-k PM.

    The certificate loop keeps ``M_lo`` and ``M_hi`` with
    ``r(M_lo) <= k <= r(M_hi)`` and both of ``k``'s parity, and replaces one
    of them by a rank-reduction step until one side hits ``k``. Rank drops
    strictly each round, so it terminates on graphs with the chord property;
    elsewhere a StructuralError reports the stall.
    """
    n = graph.n
    if n % 2 or k < 0 or 2 * k > n:
        return KarzanovResult(False, None)
    low = bcpm(graph, k)
    if not low.found:
        return KarzanovResult(False, None)
    inv = invert_coloring(graph)
    high = bcpm(inv, n // 2 - k)
    if not high.found:
        return KarzanovResult(False, None)
    if not want_certificate:
        return KarzanovResult(True, None)
    lo = low.matching
    hi = PerfectMatching.of(graph, high.matching.edges)
    it = 0
    while lo.red_count != k and hi.red_count != k:
        if it >= max_iterations:
            raise StructuralError("certificate loop did not converge", (lo, hi))
        nxt = rank_reduction_step(graph, lo, hi)
        it += 1
        if nxt.red_count == k:
            lo = nxt
        elif nxt.red_count < k:
            lo = nxt
        else:
            hi = nxt
    res = lo if lo.red_count == k else hi
    assert res.red_count == k
    return KarzanovResult(True, res, it, (lo.red_count, hi.red_count))


# ---------------------------------------------------------- verification


@dataclass(frozen=True)
class LandscapeVerdict:
    status: str  # "holds" | "violated" | "inconclusive"
    witness: Optional[tuple[int, int, int]] = None  # (low, high, missing k)
    landscape: tuple[int, ...] = ()


def karzanov_violation(values: Sequence[int]) -> Optional[tuple[int, int, int]]:
    """First ``(a, b, k)`` with ``a < k < b`` all of one parity, ``a`` and
    ``b`` achievable and ``k`` not."""
    have = set(values)
    for par in (0, 1):
        vs = sorted(v for v in have if v % 2 == par)
        for a, b in zip(vs, vs[1:]):
            if b - a > 2:
                return a, b, a + 2
    return None


def weak_karzanov_violation(values: Sequence[int]) -> Optional[tuple[int, int, int]]:
    """First ``k`` between two achievable values with neither ``k`` nor
    ``k + 1`` achievable."""
    have = sorted(set(values))
    for a, b in zip(have, have[1:]):
        if b - a > 2:
            return a, b, a + 1
    return None


def _verdict(graph, limit, finder):
    land = em_landscape(graph, limit)
    if land.truncated:
        return LandscapeVerdict("inconclusive", None, land.achievable)
    w = finder(land.achievable)
    return LandscapeVerdict("holds" if w is None else "violated", w, land.achievable)


def verify_karzanov_property(graph: ColoredGraph, limit: int = DEFAULT_LIMIT) -> LandscapeVerdict:
    return _verdict(graph, limit, karzanov_violation)


def verify_weak_karzanov(graph: ColoredGraph, limit: int = DEFAULT_LIMIT) -> LandscapeVerdict:
    return _verdict(graph, limit, weak_karzanov_violation)


def _edge_order(pms, rel):
    """Free-edge order that completes PMs early: keep taking the unplaced
    edges of the PM with the fewest of them left."""
    left = [set(pm) for pm in pms]
    order, placed = [], set()
    while len(order) < len(rel):
        j = min((j for j in range(len(pms)) if left[j]), key=lambda j: (len(left[j]), j), default=None)
        e = min(left[j]) if j is not None else min(set(rel) - placed)
        order.append(e)
        placed.add(e)
        for lj in left:
            lj.discard(e)
    return order


def _search_colorings(pms, target, top):
    """Some colouring of the PM edges with the target landscape, or None.

    The target contains 0 and ``top`` = n/2, so some PM is all blue and
    another all red. Fixing the first such pair (in PM order) leaves the
    remaining PM edges free, and every colouring is met under exactly one
    pair: earlier PMs are barred from 0 (resp. ``top``).
    """
    rel = _edge_order(pms, sorted(set().union(*pms)))
    pos = {e: i for i, e in enumerate(rel)}
    inc = np.zeros((len(rel), len(pms)), dtype=np.int64)
    for j, pm in enumerate(pms):
        for e in pm:
            inc[pos[e], j] = 1
    on_edge = [np.flatnonzero(inc[i]) for i in range(len(rel))]
    outside = ((1 << (top + 1)) - 1) & ~target
    idx = np.arange(len(pms))
    for bi, blue in enumerate(pms):
        for ri, red in enumerate(pms):
            if blue & red:
                continue
            fixed = {pos[e] for e in blue | red}
            free = [i for i in range(len(rel)) if i not in fixed]
            r = inc[[pos[e] for e in red]].sum(axis=0)
            rem = inc[free].sum(axis=0)
            forbid = outside | np.where(idx < bi, 1, 0) | np.where(idx < ri, 1 << top, 0)
            lists = [on_edge[i] for i in free]
            eptr = np.zeros(len(free) + 1, dtype=np.int64)
            eptr[1:] = np.cumsum([len(x) for x in lists])
            epm = np.concatenate(lists).astype(np.int64) if lists else np.zeros(0, dtype=np.int64)
            code = _kernels.coloring_dfs(len(free), eptr, epm, r, rem, forbid.astype(np.int64), target)
            if code >= 0:
                return sorted(red) + sorted(rel[i] for q, i in enumerate(free) if code >> q & 1)
    return None


def _exhaustive_search(want, n):
    from itertools import combinations_with_replacement

    from .generators import gen_interval
    from .oracle import enumerate_pms

    if want[0] != 0 or want[-1] != n // 2:
        raise DomainError("exhaustive search needs a target spanning 0 .. n/2")
    target = sum(1 << k for k in want)
    seen = set()
    examined = 0
    # an interval graph on n vertices has at most n maximal cliques, so
    # closed intervals on a grid of n points realise every one of them
    for grid in range(1, n + 1):
        ivs = [(a, b) for a in range(grid) for b in range(a, grid)]
        batch = []
        for combo in combinations_with_replacement(ivs, n):
            inst = gen_interval(list(combo))
            if inst.graph.edges in seen:
                continue
            seen.add(inst.graph.edges)
            pms = [pm.edges for pm in enumerate_pms(inst.graph)]
            if len(pms) >= len(want):
                batch.append((len(set().union(*pms)), inst.graph.edges, inst, pms))
        batch.sort(key=lambda b: b[:2])
        for _, _, inst, pms in batch:
            examined += 1
            red = _search_colorings(pms, target, n // 2)
            if red is not None:
                return inst.with_coloring(red), examined
    return None


def search_karzanov_counterexample(target: Sequence[int] = (0, 1, 3, 4), n: int = 8,
                                   method: str = "exhaustive", grid: int = 16, seed: int = 0,
                                   max_trials: int = 10**6, colorings_per_graph: int = 5):
    """Search coloured interval graphs on ``n`` vertices for a landscape.

    ``exhaustive`` walks every interval multiset on grids of ``1 .. n``
    points, skips repeated labelled graphs, orders each grid's graphs by
    their number of PM edges and tries every colouring of those edges (edges
    in no PM stay blue). It returns the first hit and the number of graphs
    examined, or None once the space is spent. The target must contain 0
    and n/2.

    ``random`` samples integer intervals in ``0..grid`` with a few Bernoulli
    colourings each; it returns ``(instance, trial)`` or None.
    """
    want = sorted(target)
    if method == "exhaustive":
        return _exhaustive_search(want, n)
    if method != "random":
        raise DomainError(f"unknown search method {method!r}")
    from .generators import gen_interval, random_coloring
    from .matching import SubsetTable

    rng = np.random.default_rng(seed)
    for trial in range(1, max_trials + 1):
        lo = rng.integers(0, grid + 1, size=n)
        hi = np.minimum(lo + rng.integers(0, grid // 2 + 1, size=n), grid)
        inst = gen_interval([(int(a), int(b)) for a, b in zip(lo, hi)])
        if inst.graph.m < n // 2:
            continue
        for _ in range(colorings_per_graph):
            red = random_coloring(inst.graph, red_prob=float(rng.uniform(0.2, 0.8)),
                                  seed=int(rng.integers(1 << 30)))
            g = inst.graph.recolor(red)
            if SubsetTable(g).landscape() == want:
                return inst.with_coloring(red), trial
    return None
