"""Graph-class generators that ship with a membership certificate.

Every generator returns a :class:`ClassInstance`; :func:`validate` checks
the certificate against the graph. Interval-type certificates use exact
``Fraction`` endpoints and closed intervals, so touching intervals are
adjacent.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError
from .graph import ColoredGraph, PerfectMatching, alternating_path, canon

KARZANOV_CLASSES = ("chain", "unit_interval", "bip_unit_interval", "complete_r_partite")


@dataclass(frozen=True, eq=True)
class ClassInstance:
    graph: ColoredGraph
    class_tag: str
    params: dict = field(default_factory=dict)
    certificate: dict = field(default_factory=dict)

    def with_coloring(self, red) -> "ClassInstance":
        return replace(self, graph=self.graph.recolor(red))


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# -------------------------------------------------------------- generators


def gen_complete_r_partite(part_sizes: Sequence[int]) -> ClassInstance:
    if any(s < 1 for s in part_sizes):
        raise DomainError("part sizes must be positive")
    parts, v = [], 0
    for s in part_sizes:
        parts.append(tuple(range(v, v + s)))
        v += s
    label = {x: i for i, p in enumerate(parts) for x in p}
    edges = [(a, b) for a, b in combinations(range(v), 2) if label[a] != label[b]]
    g = ColoredGraph.from_edges(v, edges)
    return ClassInstance(g, "complete_r_partite", {"r": len(parts)}, {"parts": tuple(parts)})


def gen_chain(degree_profile: Sequence[int], n_y: Optional[int] = None) -> ClassInstance:
    """Chain graph with ``deg(x_i) = degree_profile[i]``.

    ``x_i`` is vertex ``i`` and ``y_j`` is vertex ``|X| + j`` (0-based); ``x_i``
    sees the top ``d_i`` vertices of ``Y``, which keeps both sides nested.
    ``n_y`` defaults to ``|X|``.
    """
    prof = [int(d) for d in degree_profile]
    nx_ = len(prof)
    n_y = nx_ if n_y is None else int(n_y)
    if any(a > b for a, b in zip(prof, prof[1:])):
        raise DomainError("degree profile must be non-decreasing for nested neighbourhoods")
    if any(d < 0 or d > n_y for d in prof):
        raise DomainError(f"degrees must lie in 0..{n_y}")
    edges = [(i, nx_ + j) for i, d in enumerate(prof) for j in range(n_y - d, n_y)]
    X = frozenset(range(nx_))
    Y = frozenset(range(nx_, nx_ + n_y))
    g = ColoredGraph.from_edges(nx_ + n_y, edges, bipartition=(X, Y))
    cert = {"x": tuple(range(nx_)), "y": tuple(range(nx_, nx_ + n_y))}
    return ClassInstance(g, "chain", {"profile": tuple(prof), "n_y": n_y}, cert)


def gen_chain_counterexample(n: int) -> tuple[ClassInstance, PerfectMatching]:
    """Staircase chain graph with ``N(x_i) = {y_(n-i+1), .., y_n}`` and the PM
    ``{x_i, y_(n-i+1)}`` (1-based names)."""
    if n < 1:
        raise DomainError("n must be positive")
    base = gen_chain(range(1, n + 1), n)
    pm = PerfectMatching.of(base.graph, [(i, n + (n - 1 - i)) for i in range(n)])
    cert = dict(base.certificate, pm=tuple(sorted(pm.edges)))
    inst = ClassInstance(base.graph, "chain_pshort_counterexample", {"n": n}, cert)
    return inst, pm


def chain_counterexample_path(inst: ClassInstance, pm: PerfectMatching):
    """The alternating path ``x_1, y_n, x_2, y_(n-1), .., x_n, y_1`` and its
    matching edges oriented along it."""
    n = inst.params["n"]
    verts = []
    for i in range(n):
        verts += [i, n + (n - 1 - i)]
    path = alternating_path(inst.graph, pm, verts)
    F = tuple((verts[2 * i], verts[2 * i + 1]) for i in range(n))
    return path, F


def _interval_edges(lo, hi, sides=None):
    n = len(lo)
    out = []
    for u, v in combinations(range(n), 2):
        if sides is not None and sides[u] == sides[v]:
            continue
        if lo[u] <= hi[v] and lo[v] <= hi[u]:
            out.append((u, v))
    return out


def _bip(sides):
    X = frozenset(v for v, s in enumerate(sides) if s == 0)
    Y = frozenset(v for v, s in enumerate(sides) if s == 1)
    return X, Y


def gen_unit_interval(centers) -> ClassInstance:
    """``I(v) = [c_v - 1/2, c_v + 1/2]``; adjacent iff ``|c_u - c_v| <= 1``."""
    c = tuple(_frac(x) for x in centers)
    half = Fraction(1, 2)
    g = ColoredGraph.from_edges(len(c), _interval_edges([x - half for x in c], [x + half for x in c]))
    return ClassInstance(g, "unit_interval", {}, {"centers": c})


def gen_interval(intervals) -> ClassInstance:
    lo = tuple(_frac(a) for a, _ in intervals)
    hi = tuple(_frac(b) for _, b in intervals)
    if any(a > b for a, b in zip(lo, hi)):
        raise DomainError("interval endpoints must satisfy a <= b")
    g = ColoredGraph.from_edges(len(lo), _interval_edges(lo, hi))
    return ClassInstance(g, "interval", {}, {"left": lo, "right": hi})


def gen_bip_interval(intervals, sides) -> ClassInstance:
    lo = tuple(_frac(a) for a, _ in intervals)
    hi = tuple(_frac(b) for _, b in intervals)
    sides = tuple(int(s) for s in sides)
    if len(sides) != len(lo) or any(s not in (0, 1) for s in sides):
        raise DomainError("sides must give 0 or 1 for every vertex")
    if any(a > b for a, b in zip(lo, hi)):
        raise DomainError("interval endpoints must satisfy a <= b")
    g = ColoredGraph.from_edges(len(lo), _interval_edges(lo, hi, sides), bipartition=_bip(sides))
    return ClassInstance(g, "bip_interval", {}, {"left": lo, "right": hi, "side": sides})


def gen_bip_unit_interval(centers, sides) -> ClassInstance:
    c = tuple(_frac(x) for x in centers)
    sides = tuple(int(s) for s in sides)
    if len(sides) != len(c) or any(s not in (0, 1) for s in sides):
        raise DomainError("sides must give 0 or 1 for every vertex")
    half = Fraction(1, 2)
    edges = _interval_edges([x - half for x in c], [x + half for x in c], sides)
    g = ColoredGraph.from_edges(len(c), edges, bipartition=_bip(sides))
    return ClassInstance(g, "bip_unit_interval", {}, {"centers": c, "side": sides})


def gen_neighborhood_diversity(d: int, part_specs, links=()) -> ClassInstance:
    """``part_specs`` lists ``(size, is_clique)`` per part; ``links`` lists the
    pairs of parts joined completely."""
    if d < 1 or len(part_specs) != d:
        raise DomainError("need exactly d >= 1 (size, is_clique) parts")
    parts, cliques, v = [], [], 0
    for size, clique in part_specs:
        if size < 1:
            raise DomainError("part sizes must be positive")
        parts.append(tuple(range(v, v + size)))
        cliques.append(int(bool(clique)))
        v += size
    links = tuple(sorted(canon(int(i), int(j)) for i, j in links))
    if any(i == j or not (0 <= i < d and 0 <= j < d) for i, j in links):
        raise DomainError("links must join two distinct existing parts")
    edges = set()
    for p, cl in zip(parts, cliques):
        if cl:
            edges.update(combinations(p, 2))
    for i, j in links:
        edges.update(canon(a, b) for a in parts[i] for b in parts[j])
    g = ColoredGraph.from_edges(v, sorted(edges))
    cert = {"parts": tuple(parts), "clique": tuple(cliques), "links": links}
    return ClassInstance(g, "neighborhood_diversity", {"d": d}, cert)


def gen_gnp(n: int, p: float, seed: int) -> ClassInstance:
    if not 0.0 <= p <= 1.0:
        raise DomainError("p must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(n), 2))
    draws = rng.random(len(pairs))
    edges = [e for e, x in zip(pairs, draws) if x < p]
    g = ColoredGraph.from_edges(n, edges)
    return ClassInstance(g, "gnp", {"n": n, "p": p, "seed": seed}, {})


def gen_bounded_bip_independence(side_size: int, p: float, seed: int) -> ClassInstance:
    """Random balanced bipartite graph tagged with its bipartite independence
    number ``beta``."""
    rng = np.random.default_rng(seed)
    h = side_size
    edges = [(i, h + j) for i in range(h) for j in range(h) if rng.random() < p]
    sides = (0,) * h + (1,) * h
    g = ColoredGraph.from_edges(2 * h, edges, bipartition=_bip(sides))
    beta = bipartite_independence_number(g)
    return ClassInstance(g, "bounded_bip_independence", {"beta": beta, "p": p, "seed": seed},
                         {"side": sides})


def random_coloring(graph: ColoredGraph, red_prob: Optional[float] = None,
                    red_count: Optional[int] = None, seed: Optional[int] = None) -> frozenset:
    """Red edge set: Bernoulli(``red_prob``) per edge, or a uniform subset of
    exactly ``red_count`` edges."""
    if (red_prob is None) == (red_count is None):
        raise DomainError("give exactly one of red_prob and red_count")
    rng = np.random.default_rng(seed)
    edges = graph.edges
    if red_prob is not None:
        if not 0.0 <= red_prob <= 1.0:
            raise DomainError("red_prob must lie in [0, 1]")
        return frozenset(e for e, x in zip(edges, rng.random(len(edges))) if x < red_prob)
    if not 0 <= red_count <= len(edges):
        raise DomainError(f"red_count must lie in 0..{len(edges)}")
    idx = rng.choice(len(edges), size=red_count, replace=False)
    return frozenset(edges[int(i)] for i in idx)


# --------------------------------------------------------------- checkers


def bipartite_independence_number(graph: ColoredGraph) -> int:
    """Largest ``b`` with ``A' ⊆ X``, ``B' ⊆ Y``, ``|A'| = |B'| = b`` and no
    edges between them."""
    if graph.bipartition is None:
        raise DomainError("graph has no bipartition")
    X, Y = (sorted(s) for s in graph.bipartition)
    adj = graph.adjacency
    best = 0
    for r in range(1, len(X) + 1):
        for A in combinations(X, r):
            free = sum(1 for y in Y if not any(adj[a, y] for a in A))
            best = max(best, min(r, free))
    return best


def has_kt_hole(graph: ColoredGraph, t: int) -> bool:
    """Does the complement contain ``K_{t,t}``?"""
    adj = graph.adjacency
    n = graph.n
    for A in combinations(range(n), t):
        sa = set(A)
        free = [v for v in range(n) if v not in sa and not any(adj[a, v] for a in A)]
        if len(free) >= t:
            return True
    return False


def _same_type(graph, u, v) -> bool:
    nu = set(graph.neighbors(u)) - {v}
    nv = set(graph.neighbors(v)) - {u}
    return nu == nv


def validate(inst: ClassInstance) -> None:
    """Raise DomainError unless the certificate proves class membership."""
    g, cert, tag = inst.graph, inst.certificate, inst.class_tag
    E = g.edge_set
    if tag == "complete_r_partite":
        parts = cert["parts"]
        label = {v: i for i, p in enumerate(parts) for v in p}
        if sorted(label) != list(range(g.n)) or sum(map(len, parts)) != g.n:
            raise DomainError("parts do not partition the vertex set")
        want = {canon(a, b) for a, b in combinations(range(g.n), 2) if label[a] != label[b]}
        if want != E:
            raise DomainError("edges are not exactly those between different parts")
    elif tag in ("chain", "chain_pshort_counterexample"):
        xs, ys = cert["x"], cert["y"]
        if g.bipartition is None or set(xs) != g.bipartition[0] or set(ys) != g.bipartition[1]:
            raise DomainError("chain ordering does not match the bipartition")
        for side in (xs, ys):
            nbs = [set(g.neighbors(v)) for v in side]
            if any(not a <= b for a, b in zip(nbs, nbs[1:])):
                raise DomainError("neighbourhoods are not nested along the ordering")
        if tag == "chain_pshort_counterexample":
            PerfectMatching.of(g, cert["pm"])
    elif tag in ("unit_interval", "interval", "bip_unit_interval", "bip_interval"):
        if "centers" in cert:
            half = Fraction(1, 2)
            lo = [c - half for c in cert["centers"]]
            hi = [c + half for c in cert["centers"]]
        else:
            lo, hi = list(cert["left"]), list(cert["right"])
            if any(a > b for a, b in zip(lo, hi)):
                raise DomainError("interval with a > b")
        if len(lo) != g.n:
            raise DomainError("one interval per vertex is required")
        sides = cert.get("side")
        if tag.startswith("bip"):
            if sides is None or g.bipartition is None or _bip(sides) != g.bipartition:
                raise DomainError("sides do not match the bipartition")
        if set(_interval_edges(lo, hi, sides if tag.startswith("bip") else None)) != E:
            raise DomainError("adjacency differs from interval intersection")
    elif tag == "neighborhood_diversity":
        parts = cert["parts"]
        if sorted(v for p in parts for v in p) != list(range(g.n)) or len(parts) != inst.params["d"]:
            raise DomainError("parts do not partition the vertex set")
        for p in parts:
            for u, v in combinations(p, 2):
                if not _same_type(g, u, v):
                    raise DomainError(f"vertices {u} and {v} share a part but not a type")
    elif tag == "bounded_bip_independence":
        if g.bipartition is None or bipartite_independence_number(g) != inst.params["beta"]:
            raise DomainError("bipartite independence number does not match")
    elif tag == "gnp":
        pass
    else:
        raise DomainError(f"unknown class tag {tag!r}")


def is_valid(inst: ClassInstance) -> bool:
    try:
        validate(inst)
    except DomainError:
        return False
    return True


# ------------------------------------------------- random class instances


def _random_parts(n, r, rng):
    cuts = sorted(rng.choice(np.arange(1, n), size=r - 1, replace=False)) if r > 1 else []
    bounds = [0, *cuts, n]
    return [int(b - a) for a, b in zip(bounds, bounds[1:])]


def random_class_instance(class_tag: str, n: int, seed: int) -> ClassInstance:
    """Uncoloured instance of ``class_tag`` with ``n`` vertices, reproducible
    from ``seed``. Used by the acceptance sweeps and the bench command."""
    rng = np.random.default_rng(seed)
    if class_tag == "complete_r_partite":
        r = int(rng.integers(2, min(4, n) + 1))
        return gen_complete_r_partite(_random_parts(n, r, rng))
    if class_tag == "chain":
        h = n // 2
        if rng.random() < 0.8:
            # d_i >= i keeps a perfect matching in the graph
            prof, lo = [], 1
            for i in range(1, h + 1):
                lo = max(lo, i)
                lo = int(rng.integers(lo, h + 1))
                prof.append(lo)
        else:
            prof = sorted(int(x) for x in rng.integers(0, h + 1, size=h))
        return gen_chain(prof, n - h)
    if class_tag == "unit_interval":
        centers = sorted(Fraction(int(x), 4) for x in rng.integers(0, max(4, n), size=n))
        return gen_unit_interval(centers)
    if class_tag == "bip_unit_interval":
        centers = [Fraction(int(x), 4) for x in rng.integers(0, max(4, n), size=n)]
        sides = [0] * (n // 2) + [1] * (n - n // 2)
        rng.shuffle(sides)
        return gen_bip_unit_interval(centers, sides)
    if class_tag in ("interval", "bip_interval"):
        lo = rng.integers(0, 2 * n, size=n)
        ln = rng.integers(0, n, size=n)
        iv = [(Fraction(int(a)), Fraction(int(a + b))) for a, b in zip(lo, ln)]
        if class_tag == "interval":
            return gen_interval(iv)
        sides = [0] * (n // 2) + [1] * (n - n // 2)
        rng.shuffle(sides)
        return gen_bip_interval(iv, sides)
    if class_tag == "neighborhood_diversity":
        d = int(rng.integers(1, min(4, n) + 1))
        sizes = _random_parts(n, d, rng)
        specs = [(s, bool(rng.random() < 0.5)) for s in sizes]
        links = [(i, j) for i, j in combinations(range(d), 2) if rng.random() < 0.6]
        return gen_neighborhood_diversity(d, specs, links)
    if class_tag == "gnp":
        return gen_gnp(n, 0.5, seed)
    if class_tag == "bounded_bip_independence":
        return gen_bounded_bip_independence(n // 2, 0.7, seed)
    raise DomainError(f"unknown class tag {class_tag!r}")


def random_colored_instance(class_tag: str, n: int, seed: int,
                            red_prob: Optional[float] = None) -> ClassInstance:
    inst = random_class_instance(class_tag, n, seed)
    rng = np.random.default_rng([seed, 1])
    prob = float(rng.uniform(0.2, 0.8)) if red_prob is None else red_prob
    return inst.with_coloring(random_coloring(inst.graph, red_prob=prob, seed=seed + 7919))
