"""Shared strategies and helpers."""

from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from exactmatch.graph import ColoredGraph, PerfectMatching

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")


@st.composite
def colored_graphs(draw, min_n=2, max_n=8, even=True, density=None):
    n = draw(st.integers(min_n, max_n))
    if even and n % 2:
        n += 1 if n < max_n else -1
    pairs = list(combinations(range(n), 2))
    p = density if density is not None else draw(st.floats(0.3, 1.0))
    keep = draw(st.lists(st.floats(0, 1), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, x in zip(pairs, keep) if x < p]
    reds = draw(st.lists(st.booleans(), min_size=len(edges), max_size=len(edges)))
    return ColoredGraph.from_edges(n, edges, [e for e, r in zip(edges, reds) if r])


@st.composite
def graphs_with_pm(draw, min_n=4, max_n=10):
    """A coloured graph guaranteed to contain the PM ``{2i, 2i+1}`` after a
    random relabelling; returns ``(graph, pm)``."""
    half = draw(st.integers(min_n // 2, max_n // 2))
    n = 2 * half
    perm = draw(st.permutations(range(n)))
    base = {tuple(sorted((perm[2 * i], perm[2 * i + 1]))) for i in range(half)}
    pairs = [e for e in combinations(range(n), 2) if e not in base]
    p = draw(st.floats(0.2, 0.9))
    keep = draw(st.lists(st.floats(0, 1), min_size=len(pairs), max_size=len(pairs)))
    edges = sorted(base | {e for e, x in zip(pairs, keep) if x < p})
    reds = draw(st.lists(st.booleans(), min_size=len(edges), max_size=len(edges)))
    g = ColoredGraph.from_edges(n, edges, [e for e, r in zip(edges, reds) if r])
    return g, PerfectMatching.of(g, base)


def random_pm_pair(graph, pms, rng: random.Random):
    a = rng.choice(pms)
    b = rng.choice(pms)
    return PerfectMatching.of(graph, a), PerfectMatching.of(graph, b)


@pytest.fixture
def rng():
    return random.Random(20240611)
