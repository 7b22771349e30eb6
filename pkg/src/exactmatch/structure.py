"""Path shortening, critical sets, modifiers and weight-0 modifying sets.

Conventions: a path query lists its ``t`` matching edges as oriented pairs
``(a_i, b_i)`` in the order they are met along the path, so the path reads
``.. a_1 b_1 .. a_2 b_2 .. a_t b_t ..``. Witness indices are 0-based. Edge
positions on an :class:`AlternatingStructure` are 0-based as well, and the
prefix sum that includes edge ``p`` is ``prefix_sums[p + 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, StructuralError
from .graph import (AlternatingStructure, ColoredGraph, PerfectMatching, alternating_cycle,
                    alternating_path, canon, decompose_symmetric_difference, invert_coloring,
                    subpath)
from .oracle import DEFAULT_LIMIT, enumerate_pms


# ------------------------------------------------------------ data types


@dataclass(frozen=True)
class PshortQuery:
    pm: PerfectMatching
    path: AlternatingStructure
    F: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class PshortWitness:
    kind: str  # "single_edge" | "edge_pair"
    edges: tuple[tuple[int, int], ...]
    indices: tuple[int, ...]


@dataclass(frozen=True)
class PshortVerdict:
    status: str  # "holds" | "violated" | "inconclusive"
    query: Optional[PshortQuery] = None
    checked: int = 0


@dataclass(frozen=True)
class Modifier:
    cycle: AlternatingStructure
    weight: int
    host_path: Optional[AlternatingStructure] = None


@dataclass(frozen=True)
class ModifyingSet:
    components: tuple[Modifier, ...]
    total_weight: int

    @property
    def edges(self) -> frozenset:
        return frozenset(e for c in self.components for e in c.cycle.edges)


# ----------------------------------------------------------- witnesses


def _check_query(graph: ColoredGraph, q: PshortQuery):
    pos = {v: i for i, v in enumerate(q.path.vertices)}
    last = -1
    for a, b in q.F:
        if canon(a, b) not in q.pm.edges:
            raise DomainError(f"{(a, b)} is not a matching edge")
        if a not in pos or b not in pos or pos[b] != pos[a] + 1:
            raise DomainError(f"{(a, b)} is not traversed from a to b along the path")
        if pos[a] <= last:
            raise DomainError("F is not listed in path order")
        last = pos[b]


def _single_witness(adj, A, B):
    t = len(A)
    for i in range(t):
        for j in range(i + 1, t):
            if adj[A[i], B[j]]:
                return i, j
    return None


def _pair_witness(adj, A, B):
    t = len(A)
    for i1, i2, i3, i4 in combinations(range(t), 4):
        if adj[A[i1], A[i3]] and adj[B[i2], B[i4]]:
            return i1, i2, i3, i4
    return None


def find_pshort_witness(graph: ColoredGraph, q: PshortQuery) -> Optional[PshortWitness]:
    """Smallest ``(i, j)`` with ``{a_i, b_j}`` an edge, else the smallest
    quadruple ``i1 < i2 < i3 < i4`` with ``{a_i1, a_i3}`` and ``{b_i2, b_i4}``."""
    _check_query(graph, q)
    adj = graph.adjacency
    A = [a for a, _ in q.F]
    B = [b for _, b in q.F]
    hit = _single_witness(adj, A, B)
    if hit is not None:
        i, j = hit
        return PshortWitness("single_edge", (canon(A[i], B[j]),), hit)
    hit = _pair_witness(adj, A, B)
    if hit is not None:
        i1, i2, i3, i4 = hit
        return PshortWitness("edge_pair", (canon(A[i1], A[i3]), canon(B[i2], B[i4])), hit)
    return None


def _extends_witness_free(adj, A, B, a, b) -> bool:
    """Is ``(A + [a], B + [b])`` witness-free, given that ``(A, B)`` is?"""
    t = len(A)
    for i in range(t):
        if adj[A[i], b]:
            return False
    for i2 in range(1, t):
        if not adj[B[i2], b]:
            continue
        for i3 in range(i2 + 1, t):
            for i1 in range(i2):
                if adj[A[i1], A[i3]]:
                    return False
    return True


# ------------------------------------------------------ Pshort verification


def _connect(graph, mates, start, goal, free, blocked):
    """Alternating segments ``start .. goal`` that begin and end with a
    non-matching edge, using only matching edges from ``free``. Yields the
    inner vertices and the matching edges consumed."""
    adj = graph.adjacency
    if adj[start, goal]:
        yield (), frozenset()

    def rec(v, inner, used):
        for x in graph.neighbors(v):
            if x in blocked or x in inner or x == goal:
                continue
            e = canon(x, mates[x])
            if e not in free or e in used:
                continue
            y = mates[x]
            if y in blocked or y in inner or y == goal:
                continue
            nxt = inner + (x, y)
            u2 = used | {e}
            if adj[y, goal]:
                yield nxt, u2
            yield from rec(y, nxt, u2)

    yield from rec(start, (), frozenset())


def _realize(graph, mates, F):
    """An alternating path from ``a_1`` to ``b_t`` through ``F`` in order, as a
    vertex tuple, or None."""
    fset = {canon(a, b) for a, b in F}
    free = frozenset(e for e in {canon(v, mates[v]) for v in range(graph.n)} if e not in fset)
    fverts = frozenset(v for e in F for v in e)

    def rec(i, verts, used):
        if i == len(F) - 1:
            return verts
        b, a_next = F[i][1], F[i + 1][0]
        blocked = (fverts | set(verts)) - {b, a_next}
        for inner, u2 in _connect(graph, mates, b, a_next, free - used, blocked):
            got = rec(i + 1, verts + inner + F[i + 1], used | u2)
            if got is not None:
                return got
        return None

    return rec(0, tuple(F[0]), frozenset())


class _Budget(Exception):
    pass


def _violations_for_pm(graph, pm, t, counter, budget):
    """First realisable witness-free ordered t-tuple of matching edges."""
    adj = graph.adjacency
    mates = pm.mates
    oriented = sorted((a, mates[a]) for a in range(graph.n))

    def rec(A, B, used):
        counter[0] += 1
        if counter[0] > budget:
            raise _Budget
        if len(A) == t:
            F = tuple(zip(A, B))
            verts = _realize(graph, mates, F)
            return None if verts is None else (F, verts)
        for a, b in oriented:
            e = canon(a, b)
            if e in used or not _extends_witness_free(adj, A, B, a, b):
                continue
            got = rec(A + [a], B + [b], used | {e})
            if got is not None:
                return got
        return None

    return rec([], [], frozenset())


def _violations_on_path(graph, pm, path, t):
    """Witness-free t-subsets of the matching edges of a fixed path."""
    adj = graph.adjacency
    Fall = [(path.vertices[p], path.vertices[p + 1]) for p in range(path.length) if path.matched[p]]

    def rec(start, A, B):
        if len(A) == t:
            return tuple(zip(A, B))
        for idx in range(start, len(Fall)):
            a, b = Fall[idx]
            if _extends_witness_free(adj, A, B, a, b):
                got = rec(idx + 1, A + [a], B + [b])
                if got is not None:
                    return got
        return None

    return rec(0, [], [])


def _random_pm(graph, rng):
    import networkx as nx
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    for e in graph.edges:
        g.add_edge(*e, weight=float(rng.random()))
    mate = nx.max_weight_matching(g, maxcardinality=True)
    if 2 * len(mate) != graph.n:
        return None
    return PerfectMatching.of(graph, mate)


def _random_path(graph, pm, rng):
    mates = pm.mates
    v = int(rng.integers(graph.n))
    verts = [v, mates[v]]
    seen = set(verts)
    while True:
        cand = [x for x in graph.neighbors(verts[-1]) if x not in seen and mates[x] not in seen]
        if not cand or rng.random() < 0.1:
            break
        x = cand[int(rng.integers(len(cand)))]
        verts += [x, mates[x]]
        seen |= {x, mates[x]}
    return alternating_path(graph, pm, verts)


def verify_pshort(graph: ColoredGraph, t: int, mode: str = "exhaustive", budget: int = 10**7,
                  seed: Optional[int] = None, pm_limit: int = DEFAULT_LIMIT) -> PshortVerdict:
    """Check ``Pshort(t)``.

    Exhaustive mode walks every PM and every ordered, oriented choice of
    ``t`` matching edges that has no shortening witness (witness-freeness is
    inherited by prefixes, which prunes the search), then asks whether an
    alternating path runs through them in that order. Any path containing
    ``F`` contains the sub-path from ``a_1`` to ``b_t``, so these are all the
    queries that matter. ``budget`` caps the number of search nodes.

    Sampled mode draws ``budget`` random (PM, path) pairs and can only report
    ``violated`` or ``inconclusive``.
    """
    if t < 1:
        raise DomainError("t must be positive")
    if mode == "sampled":
        rng = np.random.default_rng(seed)
        for trial in range(budget):
            pm = _random_pm(graph, rng)
            if pm is None:
                return PshortVerdict("holds", None, trial)
            path = _random_path(graph, pm, rng)
            F = _violations_on_path(graph, pm, path, t)
            if F is not None:
                return PshortVerdict("violated", PshortQuery(pm, path, F), trial + 1)
        return PshortVerdict("inconclusive", None, budget)
    if mode != "exhaustive":
        raise DomainError(f"unknown mode {mode!r}")
    counter = [0]
    stream = enumerate_pms(graph, pm_limit)
    try:
        for pm in stream:
            hit = _violations_for_pm(graph, pm, t, counter, budget)
            if hit is not None:
                F, verts = hit
                path = alternating_path(graph, pm, verts)
                return PshortVerdict("violated", PshortQuery(pm, path, F), counter[0])
    except _Budget:
        return PshortVerdict("inconclusive", None, counter[0])
    if stream.truncated:
        return PshortVerdict("inconclusive", None, counter[0])
    return PshortVerdict("holds", None, counter[0])


# ------------------------------------------------------- critical sets


def find_critical_set(path: AlternatingStructure, t: int) -> Optional[list[int]]:
    """Edge positions of red matching edges with non-increasing prefix sums.

    Tried in order: the running-minimum scan when some prefix drops to
    ``-t``; the same scan started after a prefix that reaches ``t``; and the
    most popular prefix value among red matching edges. The first two return
    the first ``t`` new lows, so consecutive chosen edges sit on sub-paths of
    weight exactly -1 per step. Returns None when no case yields ``t``
    edges.
    """
    S = path.prefix_sums
    ell = path.length
    red_m = [p for p in range(ell) if path.matched[p] and path.red[p]]

    def lows_after(i0):
        out, low = [], S[i0]
        for p in range(i0, ell):
            if S[p + 1] < low:
                low = S[p + 1]
                out.append(p)
                if len(out) == t:
                    break
        return out

    if any(S[i] <= -t for i in range(1, ell + 1)):
        out = lows_after(0)
        if len(out) >= t:
            return out
    hi = next((i for i in range(1, ell + 1) if S[i] >= t), None)
    if hi is not None:
        out = lows_after(hi)
        if len(out) >= t:
            return out
    groups: dict[int, list[int]] = {}
    for p in red_m:
        groups.setdefault(S[p + 1], []).append(p)
    if groups:
        best = max(groups.values(), key=len)
        if len(best) >= t:
            return best
    return None


def is_critical(path: AlternatingStructure, positions: Sequence[int]) -> bool:
    S = path.prefix_sums
    if any(not (path.matched[p] and path.red[p]) for p in positions):
        return False
    vals = [S[p + 1] for p in positions]
    return list(positions) == sorted(positions) and all(x >= y for x, y in zip(vals, vals[1:]))


def is_t_good(path: AlternatingStructure, t: int) -> bool:
    return path.length % 2 == 0 and path.weight <= 0 and path.red_count >= t


def is_dual_t_good(path: AlternatingStructure, t: int) -> bool:
    return path.length % 2 == 0 and path.weight >= 0 and path.blue_count >= t


def is_path_modifier(pm: PerfectMatching, cycle: AlternatingStructure,
                     path: AlternatingStructure) -> bool:
    """Both conditions of an (M, P)-modifier, checked by set inclusion."""
    if cycle.kind != "cycle" or not cycle.vertex_set <= path.vertex_set:
        return False
    path_free = {e for e, m in zip(path.edges, path.matched) if not m}
    if not any(e in path_free for e in cycle.edges):
        return False
    return all((e in pm.edges) == m for e, m in zip(cycle.edges, cycle.matched)) and \
        any(cycle.matched) and not all(cycle.matched)


# ------------------------------------------------------------ modifiers


def _modifier_from_witness(graph, pm, path, F, wit):
    pos = {v: i for i, v in enumerate(path.vertices)}
    V = path.vertices
    if wit.kind == "single_edge":
        i, j = wit.indices
        verts = V[pos[F[i][0]]:pos[F[j][1]] + 1]
    else:
        i1, i2, i3, i4 = wit.indices
        first = V[pos[F[i1][0]]:pos[F[i2][1]] + 1]
        second = V[pos[F[i3][0]]:pos[F[i4][1]] + 1]
        verts = first + second[::-1]
    cyc = alternating_cycle(graph, pm, verts)
    return Modifier(cyc, cyc.weight, path)


def extract_modifier(graph: ColoredGraph, pm: PerfectMatching, path: AlternatingStructure,
                     t: int) -> Modifier:
    """A modifier of weight in ``[-4t^2, 0]`` on a ``(4t^2)``-good path,
    built from a critical set and a shortening witness."""
    if not is_t_good(path, 4 * t * t):
        raise DomainError(f"path is not {4 * t * t}-good")
    crit = find_critical_set(path, t)
    if crit is None:
        raise StructuralError("no critical set of size t on a good path", path)
    F = tuple((path.vertices[p], path.vertices[p + 1]) for p in crit[:t])
    q = PshortQuery(pm, path, F)
    wit = find_pshort_witness(graph, q)
    if wit is None:
        raise StructuralError("critical set admits no shortening witness", q)
    mod = _modifier_from_witness(graph, pm, path, F, wit)
    assert -4 * t * t <= mod.weight <= 0 and is_path_modifier(pm, mod.cycle, path)
    return mod


def _inverted(graph, pm, path):
    gb = invert_coloring(graph)
    mb = PerfectMatching.of(gb, pm.edges)
    builder = alternating_cycle if path.kind == "cycle" else alternating_path
    return gb, mb, builder(gb, mb, path.vertices)


def extract_dual_modifier(graph: ColoredGraph, pm: PerfectMatching, path: AlternatingStructure,
                          t: int) -> Modifier:
    """Mirror of :func:`extract_modifier` under the inverted coloring; the
    weight is reported under the original coloring, in ``[0, 4t^2]``."""
    if not is_dual_t_good(path, 4 * t * t):
        raise DomainError(f"path is not dual-{4 * t * t}-good")
    gb, mb, pb = _inverted(graph, pm, path)
    inner = extract_modifier(gb, mb, pb, t)
    cyc = alternating_cycle(graph, pm, inner.cycle.vertices)
    assert cyc.weight == -inner.weight and 0 <= cyc.weight <= 4 * t * t
    return Modifier(cyc, cyc.weight, path)


def enumerate_path_modifiers(graph: ColoredGraph, pm: PerfectMatching,
                             path: AlternatingStructure) -> list[Modifier]:
    """Every (M, P)-modifier, by DFS over M-alternating cycles of ``G[V(P)]``.

    Each cycle is reported once: from its smallest vertex, leaving along the
    matching edge.
    """
    allowed = path.vertex_set
    mates = pm.mates
    path_free = {e for e, m in zip(path.edges, path.matched) if not m}
    adj = graph.adjacency
    out = []
    for s in sorted(allowed):
        ms = mates[s]
        if ms not in allowed or ms < s:
            continue

        def rec(verts, seen):
            last = verts[-1]
            if len(verts) >= 4 and adj[last, s] and canon(last, s) not in pm.edges:
                cyc = alternating_cycle(graph, pm, verts)
                if any(e in path_free for e in cyc.edges):
                    out.append(Modifier(cyc, cyc.weight, path))
            for x in graph.neighbors(last):
                if x <= s or x in seen or x not in allowed or x == mates[last]:
                    continue
                y = mates[x]
                if y in seen or y not in allowed or y < s:
                    continue
                yield_ = verts + (x, y)
                rec(yield_, seen | {x, y})

        rec((s, ms), frozenset((s, ms)))
    return out


# ---------------------------------------------------------- good paths


def _trim_even(graph, pm, path):
    if path.length % 2 == 0:
        return path
    if path.length == 1:
        return None
    return subpath(graph, pm, path, 0, path.length - 2)


def _repairs(graph, pm, path, lo, hi):
    """Sub-paths of ``path`` on edges ``lo..hi`` and their one-edge
    shrinkings / extensions, used to fix the parity of a piece."""
    ell = path.length
    for a, b in ((lo, hi), (lo, hi - 1), (lo + 1, hi), (lo, hi + 1), (lo - 1, hi)):
        if 0 <= a <= b < ell:
            yield subpath(graph, pm, path, a, b)


def _scan(graph, pm, path, good):
    for length in range(2, path.length + 1, 2):
        for a in range(0, path.length - length + 1):
            q = subpath(graph, pm, path, a, a + length - 1)
            if good(q):
                return q
    return None


def find_good_subpath(graph: ColoredGraph, pm: PerfectMatching, path: AlternatingStructure,
                      t: int, variant: str, x: int = 0,
                      exhaustive_fallback: bool = True) -> Optional[AlternatingStructure]:
    """A ``t``-good (``neg_weight``, ``bounded_many_red``) or dual-``t``-good
    (``pos_weight``, ``bounded_many_blue``) sub-path of ``path``.

    None when the variant's precondition fails. The proof's construction
    for the bounded variants partitions the path into pieces with ``2t`` red
    (blue) edges and picks one of sign-correct weight; such a piece may have
    odd length, so a one-edge shrink or extension is tried before an
    exhaustive scan over even sub-paths.
    """
    if path.kind != "path":
        raise DomainError("expected a path")
    w = path.weight
    if variant == "neg_weight":
        if w > -2 * t:
            return None
        q = _trim_even(graph, pm, path)
        assert q is not None and is_t_good(q, t)
        return q
    if variant == "pos_weight":
        if w < 2 * t:
            return None
        q = _trim_even(graph, pm, path)
        assert q is not None and is_dual_t_good(q, t)
        return q
    if variant not in ("bounded_many_red", "bounded_many_blue"):
        raise DomainError(f"unknown variant {variant!r}")
    red_side = variant == "bounded_many_red"
    count = path.red_count if red_side else path.blue_count
    if abs(w) > x or count < 8 * t * t + 4 * t * x:
        return None
    good = (lambda q: is_t_good(q, t)) if red_side else (lambda q: is_dual_t_good(q, t))
    S = path.prefix_sums
    ell = path.length
    i = next((i for i in range(1, ell + 1) if abs(S[i]) >= 2 * t + x), None)
    if i is not None:
        # split at i: one side has weight >= 2t, the other <= -2t
        pre = subpath(graph, pm, path, 0, i - 1)
        post = subpath(graph, pm, path, i, ell - 1) if i < ell else None
        if red_side:
            piece = post if S[i] > 0 else pre
            got = find_good_subpath(graph, pm, piece, t, "neg_weight") if piece else None
        else:
            piece = pre if S[i] > 0 else post
            got = find_good_subpath(graph, pm, piece, t, "pos_weight") if piece else None
        if got is not None:
            return got
    else:
        flags = path.red if red_side else tuple(not r for r in path.red)
        lo, seen = 0, 0
        for p in range(ell):
            seen += flags[p]
            if seen == 2 * t:
                sign_ok = (path.segment_weight(lo, p) <= 0) if red_side else (path.segment_weight(lo, p) >= 0)
                if sign_ok:
                    for q in _repairs(graph, pm, path, lo, p):
                        if good(q):
                            return q
                lo, seen = p + 1, 0
    return _scan(graph, pm, path, good) if exhaustive_fallback else None


# ---------------------------------------------------- zero-sum subsequences


def zero_sum_subsequence(a: Sequence[int], p: int, fallback: bool = True) -> Optional[list[int]]:
    """Indices of a nonempty subsequence of ``a`` summing to 0.

    Uses the merge construction: draw from the negatives while the running
    sum is non-negative and from the positives otherwise; a repeated running
    sum (0 included) closes a zero-sum block. With at least ``p + 1``
    non-negative and ``p + 1`` non-positive entries in ``[-p, p]`` this never
    fails. Otherwise, for ``len(a) <= 20``, an exhaustive subset search is
    the fallback.
    """
    a = [int(v) for v in a]
    if any(abs(v) > p for v in a):
        raise DomainError(f"entries must lie in [-{p}, {p}]")
    for i, v in enumerate(a):
        if v == 0:
            return [i]
    pos = [i for i, v in enumerate(a) if v > 0]
    neg = [i for i, v in enumerate(a) if v < 0]
    used: list[int] = []
    seen = {0: 0}
    s = 0
    while True:
        src = neg if s >= 0 else pos
        if not src:
            break
        i = src.pop(0)
        used.append(i)
        s += a[i]
        if s in seen:
            out = sorted(used[seen[s]:])
            assert sum(a[j] for j in out) == 0
            return out
        seen[s] = len(used)
    if fallback and len(a) <= 20:
        for r in range(2, len(a) + 1):
            for idx in combinations(range(len(a)), r):
                if sum(a[j] for j in idx) == 0:
                    return list(idx)
    return None


def zero_sum_precondition(a: Sequence[int], p: int) -> bool:
    return (len(a) >= 2 * p + 2 and all(abs(v) <= p for v in a)
            and sum(v >= 0 for v in a) >= p + 1 and sum(v <= 0 for v in a) >= p + 1)


def zero_sum_exhaustive_check(p: int) -> tuple[int, int]:
    """Run the construction (no fallback) on every sequence meeting its
    precondition for parameter ``p``; returns ``(cases, failures)``.

    Sequences containing 0 are settled by the singleton rule. For the rest,
    length ``2p + 2`` and the sign counts force exactly ``p + 1`` positive and
    ``p + 1`` negative entries, and the construction only reads them through
    the positive and the negative subsequence in index order. So for
    ``p >= 3`` it suffices to run over all pairs of such subsequences; for
    ``p <= 2`` every sequence is enumerated literally.
    """
    cases = fails = 0
    L = 2 * p + 2
    if p <= 2:
        for seq in product(range(-p, p + 1), repeat=L):
            if not zero_sum_precondition(seq, p):
                continue
            cases += 1
            got = zero_sum_subsequence(seq, p, fallback=False)
            if got is None or not got or sum(seq[i] for i in got) != 0:
                fails += 1
        return cases, fails
    vals = list(range(1, p + 1))
    for plus in product(vals, repeat=p + 1):
        for minus in product(vals, repeat=p + 1):
            seq = list(plus) + [-v for v in minus]
            cases += 1
            got = zero_sum_subsequence(seq, p, fallback=False)
            if got is None or sum(seq[i] for i in got) != 0:
                fails += 1
    return cases, fails


# -------------------------------------------------- modifying sets


def _open_cycle(graph, pm, cyc, start=0):
    """The cycle minus its closing edge into ``start``, as an M-alternating path."""
    L = cyc.length
    verts = [cyc.vertices[(start + i) % L] for i in range(L)]
    return alternating_path(graph, pm, verts)


def _pieces(graph, pm, path, sign, t):
    """Greedy split into vertex-disjoint sub-paths with ``sign * w >= 2t``
    (one edge is skipped between consecutive pieces)."""
    out, lo = [], 0
    for p in range(path.length):
        if sign * path.segment_weight(lo, p) >= 2 * t:
            out.append(subpath(graph, pm, path, lo, p))
            lo = p + 2
    return out


def _modifier_in_range(graph, pm, q, lo, hi, pshort_t):
    if pshort_t is not None:
        try:
            if hi <= 0 and is_t_good(q, 4 * pshort_t ** 2):
                return extract_modifier(graph, pm, q, pshort_t)
            if lo >= 0 and is_dual_t_good(q, 4 * pshort_t ** 2):
                return extract_dual_modifier(graph, pm, q, pshort_t)
        except StructuralError:
            pass
    best = None
    for mod in enumerate_path_modifiers(graph, pm, q):
        if lo <= mod.weight <= hi:
            if mod.weight == 0:
                return mod
            if best is None:
                best = mod
    return best


def _harvest(graph, pm, cycles, t, pshort_t):
    pool: list[Modifier] = []
    for cyc in cycles:
        w = cyc.weight
        if abs(w) <= 2 * t:
            pool.append(Modifier(cyc, w, None))
        opened = _open_cycle(graph, pm, cyc)
        pieces = [(q, 1) for q in _pieces(graph, pm, opened, 1, t)] + \
                 [(q, -1) for q in _pieces(graph, pm, opened, -1, t)] + [(opened, 0)]
        for q, sign in pieces:
            if sign > 0:
                variants = ["pos_weight"]
            elif sign < 0:
                variants = ["neg_weight"]
            else:
                variants = ["bounded_many_red", "bounded_many_blue"]
            for var in variants:
                good = find_good_subpath(graph, pm, q, t, var, x=abs(q.weight))
                if good is None:
                    continue
                rng = (-t, 0) if var in ("neg_weight", "bounded_many_red") else (0, t)
                mod = _modifier_in_range(graph, pm, good, rng[0], rng[1], pshort_t)
                if mod is not None:
                    pool.append(mod)
    return pool


def _disjoint(mods) -> bool:
    seen: set = set()
    for m in mods:
        if seen & m.cycle.vertex_set:
            return False
        seen |= m.cycle.vertex_set
    return True


def build_zero_weight_modifying_set(graph: ColoredGraph, pm: PerfectMatching, other: PerfectMatching,
                                    t: int, pshort_t: Optional[int] = None,
                                    max_size: int = 4) -> Optional[ModifyingSet]:
    """Best-effort search for an (M, M')-modifying set of total weight 0.

    A weight-0 cycle of ``M △ M'`` is returned at once. Otherwise positive
    and negative modifiers are harvested from the cycles (the cycles
    themselves when ``|w| <= 2t``, and modifiers found on good sub-paths),
    and a vertex-disjoint zero-sum selection is sought: first with the
    zero-sum construction on a greedily disjoint sub-pool, then by trying
    all disjoint selections of at most ``max_size`` modifiers. ``pshort_t``,
    when given, lets good sub-paths go through :func:`extract_modifier`.
    """
    diff = decompose_symmetric_difference(graph, pm, other)
    for cyc in diff.cycles:
        if cyc.weight == 0:
            return ModifyingSet((Modifier(cyc, 0, None),), 0)
    pool = _harvest(graph, pm, diff.cycles, t, pshort_t)
    for mod in pool:
        if mod.weight == 0:
            return ModifyingSet((mod,), 0)
    greedy: list[Modifier] = []
    for mod in pool:
        if _disjoint(greedy + [mod]):
            greedy.append(mod)
    if greedy:
        p = max(abs(m.weight) for m in greedy)
        if zero_sum_precondition([m.weight for m in greedy], p):
            idx = zero_sum_subsequence([m.weight for m in greedy], p, fallback=False)
            if idx:
                comps = tuple(greedy[i] for i in idx)
                return ModifyingSet(comps, 0)
    for r in range(2, max_size + 1):
        for combo in combinations(pool, r):
            if sum(m.weight for m in combo) == 0 and _disjoint(combo):
                return ModifyingSet(tuple(combo), 0)
    return None


def apply_modifying_set(graph: ColoredGraph, pm: PerfectMatching, D: ModifyingSet) -> PerfectMatching:
    if not _disjoint(D.components):
        raise DomainError("modifying-set components overlap")
    for c in D.components:
        if any((e in pm.edges) != m for e, m in zip(c.cycle.edges, c.cycle.matched)):
            raise DomainError("component is not alternating with respect to this matching")
    new = pm.switch(graph, D.edges)
    assert new.red_count == pm.red_count + sum(c.weight for c in D.components)
    return new
