"""Perfect-matching and extremal red-count primitives."""

from hypothesis import given

import oracles
from conftest import colored_graphs
from exactmatch.graph import ColoredGraph
from exactmatch.matching import (find_perfect_matching, max_red_pm, min_red_pm, min_red_pm_avoiding,
                                 subset_table)


def test_single_edge():
    g = ColoredGraph.from_edges(2, [(0, 1)])
    assert find_perfect_matching(g).edges == frozenset({(0, 1)})


def test_odd_vertex_count_has_no_pm():
    g = ColoredGraph.from_edges(3, [(0, 1), (1, 2)])
    assert find_perfect_matching(g) is None
    assert not min_red_pm(g).found and not max_red_pm(g).found


def test_all_blue_minimum_is_zero():
    g = ColoredGraph.from_edges(4, [(0, 1), (2, 3), (0, 2), (1, 3)])
    assert min_red_pm(g).objective == 0 and max_red_pm(g).objective == 0


def test_all_red_maximum_is_half():
    edges = [(0, 1), (2, 3), (0, 2), (1, 3)]
    g = ColoredGraph.from_edges(4, edges, red=edges)
    assert max_red_pm(g).objective == 2


def test_k22_one_red_edge():
    g = ColoredGraph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)], red=[(0, 2)])
    lo, hi = min_red_pm(g), max_red_pm(g)
    assert lo.objective == 0 and (0, 2) not in lo.matching.edges
    assert hi.objective == 1 and (0, 2) in hi.matching.edges


@given(colored_graphs(max_n=10))
def test_extremes_agree_with_enumeration(g):
    land = oracles.landscape(g)
    lo, hi = min_red_pm(g), max_red_pm(g)
    if not land:
        assert not lo.found and not hi.found and find_perfect_matching(g) is None
        return
    assert lo.objective == land[0] == lo.matching.red_count
    assert hi.objective == land[-1] == hi.matching.red_count
    assert lo.objective <= hi.objective


@given(colored_graphs(max_n=10))
def test_allowed_predicate_matches_blue_subgraph(g):
    blue = g.restrict_edges(g.blue)
    pm = find_perfect_matching(g, allowed=lambda e: e not in g.red)
    assert (pm is None) == (not oracles.all_pms(blue))
    if pm is not None:
        assert pm.red_count == 0
        assert min_red_pm(g).objective == 0


@given(colored_graphs(max_n=10))
def test_subset_table_landscape(g):
    assert subset_table(g).landscape() == oracles.landscape(g)


@given(colored_graphs(min_n=4, max_n=10))
def test_min_red_avoiding_vertices(g):
    cover = [0, 1] if g.has_edge(0, 1) else [0, 1, 2, 3]
    sub, _ = _delete(g, cover)
    rest = min_red_pm_avoiding(g, cover)
    land = oracles.landscape(sub)
    if not land:
        assert rest is None
    else:
        assert g.red_count(rest) == land[0]
        assert {v for e in rest for v in e} == set(range(g.n)) - set(cover)


def _delete(g, cover):
    from exactmatch.graph import induced_subgraph
    return induced_subgraph(g, [v for v in range(g.n) if v not in cover])
