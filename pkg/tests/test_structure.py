"""Shortening witnesses, Pshort verification, critical sets, modifiers,
good sub-paths, zero-sum subsequences and modifying sets."""

import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import colored_graphs, graphs_with_pm
from exactmatch.errors import DomainError, StructuralError
from exactmatch.generators import (chain_counterexample_path, gen_chain_counterexample,
                                   gen_complete_r_partite, gen_gnp, has_kt_hole,
                                   random_class_instance)
from exactmatch.graph import (ColoredGraph, PerfectMatching, alternating_cycle, alternating_path,
                              decompose_symmetric_difference, invert_coloring)
from exactmatch.structure import (ModifyingSet, Modifier, PshortQuery, apply_modifying_set,
                                  build_zero_weight_modifying_set, enumerate_path_modifiers,
                                  extract_dual_modifier, extract_modifier, find_critical_set,
                                  find_good_subpath, find_pshort_witness, is_critical,
                                  is_dual_t_good, is_path_modifier, is_t_good, verify_pshort,
                                  zero_sum_exhaustive_check, zero_sum_precondition,
                                  zero_sum_subsequence)

# ---------------------------------------------------------------- helpers


def line_host(colors, complete=False, seed=0):
    """Path ``0 .. L`` with edge ``i`` coloured ``colors[i]`` ('r'/'b'),
    matching ``{2i, 2i+1}`` (plus ``{L, L+1}`` for even ``L``).

    Returns ``(graph, pm, path)``; with ``complete`` every other pair is an
    edge too, randomly coloured.
    """
    L = len(colors)
    n = L + 1 if L % 2 else L + 2
    path_edges = [(i, i + 1) for i in range(L)]
    red = {e for e, c in zip(path_edges, colors) if c == "r"}
    edges = set(path_edges) | {(2 * i, 2 * i + 1) for i in range(n // 2)}
    if complete:
        rnd = random.Random(seed)
        for e in combinations(range(n), 2):
            if e not in edges:
                edges.add(e)
                if rnd.random() < 0.5:
                    red.add(e)
    g = ColoredGraph.from_edges(n, sorted(edges), red)
    pm = PerfectMatching.of(g, [(2 * i, 2 * i + 1) for i in range(n // 2)])
    return g, pm, alternating_path(g, pm, range(L + 1))


def colors_for(matched_red, free_red):
    """Interleave matched-edge and free-edge colours, starting with a matched edge."""
    out = []
    for i in range(len(matched_red)):
        out.append("r" if matched_red[i] else "b")
        if i < len(free_red):
            out.append("r" if free_red[i] else "b")
    return "".join(out)


def critical_by_definition(path, positions, t):
    S = path.prefix_sums
    if len(positions) < t or list(positions) != sorted(set(positions)):
        return False
    if not all(path.matched[p] and path.red[p] for p in positions):
        return False
    vals = [S[p + 1] for p in positions]
    return all(a >= b for a, b in zip(vals, vals[1:]))


def partite_walk(parts, length, rnd):
    """Random vertex sequence of ``length`` distinct vertices, neighbours in
    different parts."""
    label = {v: i for i, p in enumerate(parts) for v in p}
    for _ in range(200):
        left = {v for p in parts for v in p}
        seq = [rnd.choice(sorted(left))]
        left.discard(seq[0])
        while len(seq) < length:
            opts = [v for v in left if label[v] != label[seq[-1]]]
            if not opts:
                break
            v = rnd.choice(sorted(opts))
            seq.append(v)
            left.discard(v)
        if len(seq) == length:
            return seq
    raise RuntimeError("no walk")


def partite_trial(rnd, t, part=None):
    """Complete 3-partite host, a PM along a random walk and a (4t^2)-good
    path on it, or None if the colouring is not good."""
    size = part or (4 * t * t + 2)
    inst = gen_complete_r_partite([size] * 3)
    parts = inst.certificate["parts"]
    n = 3 * size
    seq = partite_walk(parts, n, rnd)
    pm_edges = [tuple(sorted((seq[2 * i], seq[2 * i + 1]))) for i in range(n // 2)]
    red = set()
    matched = set(pm_edges)
    for e in inst.graph.edges:
        p = 0.85 if e in matched else 0.35
        if rnd.random() < p:
            red.add(e)
    g = inst.graph.recolor(red)
    pm = PerfectMatching.of(g, pm_edges)
    ln = n - 1 if (n - 1) % 2 == 0 else n - 2
    path = alternating_path(g, pm, seq[:ln + 1])
    return g, pm, path


# -------------------------------------------------------------- witnesses


def test_complete_host_single_witness():
    g, pm, path = line_host("brbrbrb", complete=True)
    F = ((0, 1), (2, 3), (4, 5))
    w = find_pshort_witness(g, PshortQuery(pm, path, F))
    assert w.kind == "single_edge" and w.indices == (0, 1) and w.edges == ((0, 3),)


def test_pair_witness_found_when_no_single_edge():
    # F = (0,1),(2,3),(4,5),(6,7) along a path; only {a1,a3} = {0,4} and {b2,b4} = {3,7}
    g0, pm0, _ = line_host("bbbbbbb")
    g = ColoredGraph.from_edges(8, list(g0.edges) + [(0, 4), (3, 7)])
    pm = PerfectMatching.of(g, pm0.edges)
    path = alternating_path(g, pm, range(8))
    F = ((0, 1), (2, 3), (4, 5), (6, 7))
    w = find_pshort_witness(g, PshortQuery(pm, path, F))
    # (1,2) is a path edge, i.e. a_i..b_j edge (b_0, a_1) is not of the witness form
    assert w.kind == "edge_pair" and w.indices == (0, 1, 2, 3)
    assert set(w.edges) == {(0, 4), (3, 7)}


@pytest.mark.parametrize("n", range(3, 9))
def test_chain_counterexample_has_no_witness(n):
    inst, pm = gen_chain_counterexample(n)
    path, F = chain_counterexample_path(inst, pm)
    assert find_pshort_witness(inst.graph, PshortQuery(pm, path, F)) is None
    assert not oracles.has_witness(inst.graph, F)


def test_malformed_query_rejected():
    g, pm, path = line_host("brbrbrb", complete=True)
    with pytest.raises(DomainError):
        find_pshort_witness(g, PshortQuery(pm, path, ((2, 3), (0, 1))))  # out of order
    with pytest.raises(DomainError):
        find_pshort_witness(g, PshortQuery(pm, path, ((1, 0),)))  # against the path
    with pytest.raises(DomainError):
        find_pshort_witness(g, PshortQuery(pm, path, ((1, 2),)))  # not a matching edge


def test_three_partite_has_witness_for_t3():
    rnd = random.Random(5)
    inst = gen_complete_r_partite([4, 4, 4])
    for _ in range(50):
        seq = partite_walk(inst.certificate["parts"], 12, rnd)
        pm = PerfectMatching.of(inst.graph, [(seq[2 * i], seq[2 * i + 1]) for i in range(6)])
        path = alternating_path(inst.graph, pm, seq)
        for sel in combinations(range(6), 3):
            F = tuple((seq[2 * i], seq[2 * i + 1]) for i in sel)
            assert find_pshort_witness(inst.graph, PshortQuery(pm, path, F)) is not None


# ------------------------------------------------------------ verification


def test_k6_has_pshort2():
    assert verify_pshort(gen_complete_r_partite([1] * 6).graph, 2).status == "holds"


def test_k44_has_pshort2():
    assert verify_pshort(gen_complete_r_partite([4, 4]).graph, 2).status == "holds"


def test_chain_counterexample_violates_pshort_n():
    inst, _ = gen_chain_counterexample(6)
    v = verify_pshort(inst.graph, 6)
    assert v.status == "violated"
    assert find_pshort_witness(inst.graph, v.query) is None


def test_budget_gives_inconclusive():
    v = verify_pshort(gen_complete_r_partite([4, 4, 4]).graph, 3, budget=100)
    assert v.status == "inconclusive"


@given(colored_graphs(max_n=6), st.integers(1, 3))
def test_verify_pshort_matches_path_enumeration(g, t):
    v = verify_pshort(g, t)
    assert (v.status == "holds") == oracles.pshort_holds(g, t)
    if v.status == "violated":
        assert len(v.query.F) == t and find_pshort_witness(g, v.query) is None


@pytest.mark.parametrize("seed", range(6))
def test_verify_pshort_matches_path_enumeration_n8(seed):
    g = gen_gnp(8, 0.8, seed).graph
    for t in (2, 3):
        assert (verify_pshort(g, t).status == "holds") == oracles.pshort_holds(g, t)


@given(graphs_with_pm(max_n=10), st.integers(0, 2**20))
def test_sampled_mode_never_false_violation(gp, seed):
    g, _ = gp
    v = verify_pshort(g, 2, mode="sampled", budget=20, seed=seed)
    assert v.status in ("violated", "inconclusive", "holds")
    if v.status == "violated":
        assert find_pshort_witness(g, v.query) is None


@pytest.mark.parametrize("sizes", [(4, 4, 4), (2, 3, 3, 4), (5, 5, 2), (2, 2, 2, 2, 2, 2)])
def test_complete_r_partite_pshort3(sizes):
    assert verify_pshort(gen_complete_r_partite(sizes).graph, 3).status == "holds"


def test_neighbourhood_diversity_pshort_d_plus_1():
    for seed in range(60):
        inst = random_class_instance("neighborhood_diversity", (6, 8, 10)[seed % 3], seed)
        assert verify_pshort(inst.graph, inst.params["d"] + 1).status == "holds"


def test_bipartite_independence_pshort():
    checked = 0
    for seed in range(80):
        inst = random_class_instance("bounded_bip_independence", (6, 8, 10)[seed % 3], seed)
        t = 2 * inst.params["beta"] + 2
        if t <= inst.graph.n // 2:
            assert verify_pshort(inst.graph, t).status == "holds"
            checked += 1
    assert checked >= 20


def test_kt_hole_free_graphs_have_pshort_2t_not_t():
    """Hole-free graphs pass Pshort(2t); Pshort(t) fails on most of them.
    The t = 1 case is decisive: K_{1,1}-hole-free graphs are complete, and a
    single matching edge can never be shortened."""
    rnd = random.Random(3)
    tally = {"free": 0, "t_violated": 0}
    for seed in range(150):
        n = rnd.choice([6, 8, 10])
        g = gen_gnp(n, rnd.uniform(0.5, 0.95), seed).graph
        if has_kt_hole(g, 2):
            continue
        tally["free"] += 1
        assert verify_pshort(g, 4).status == "holds"
        tally["t_violated"] += verify_pshort(g, 2).status == "violated"
    assert tally["free"] >= 30 and tally["t_violated"] > tally["free"] // 2
    k6 = gen_complete_r_partite([1] * 6).graph
    assert verify_pshort(k6, 1).status == "violated" and verify_pshort(k6, 2).status == "holds"


# ------------------------------------------------------------ critical sets


def test_critical_set_descending_minima():
    t = 3
    _, _, path = line_host(colors_for([1] * t, [0] * (t - 1)))
    assert path.prefix_sums[-1] == -t
    assert find_critical_set(path, t) == [0, 2, 4]


def test_critical_set_equal_prefix_values():
    # weights -1 +1 -1 +1 -1: three red matching edges share the prefix value -1
    _, _, path = line_host("rrrrr")
    assert path.weights == (-1, 1, -1, 1, -1)
    got = find_critical_set(path, 3)
    assert got == [0, 2, 4]
    assert {path.prefix_sums[p + 1] for p in got} == {-1}


def test_critical_set_after_a_high_prefix():
    # climbs to +2 first, then three new lows
    _, _, path = line_host(colors_for([0, 0, 0, 1, 1, 1, 1], [1, 1, 0, 0, 0, 0]))
    got = find_critical_set(path, 2)
    assert got is not None and is_critical(path, got) and len(got) >= 2


@st.composite
def good_lines(draw, t):
    k = draw(st.integers(4 * t * t, 4 * t * t + 12))
    mr = draw(st.lists(st.booleans(), min_size=k, max_size=k))
    fr = draw(st.lists(st.booleans(), min_size=k, max_size=k))
    return colors_for(mr, fr)


@given(st.integers(1, 3).flatmap(lambda t: st.tuples(st.just(t), good_lines(t))))
def test_critical_sets_on_good_paths(args):
    t, colors = args
    _, _, path = line_host(colors)
    if path.length % 2:
        _, _, path = line_host(colors[:-1])
    if not is_t_good(path, 4 * t * t):
        return
    got = find_critical_set(path, t)
    assert got is not None and critical_by_definition(path, got, t) and is_critical(path, got)


# --------------------------------------------------------------- modifiers


def _check_modifier(g, pm, path, mod, lo, hi):
    assert lo <= mod.weight <= hi
    assert oracles.weight(g, pm.edges, mod.cycle.edges) == mod.weight
    assert oracles.is_alternating_cycle(pm.edges, mod.cycle.vertices)
    assert is_path_modifier(pm, mod.cycle, path)
    free = {e for e, m in zip(path.edges, path.matched) if not m}
    assert mod.cycle.vertex_set <= path.vertex_set and free & set(mod.cycle.edges)


def test_extract_modifier_complete_host():
    t = 2
    colors = colors_for([1] * 16, [0] * 16)[:32]
    g, pm, path = line_host(colors, complete=True, seed=1)
    assert is_t_good(path, 16)
    mod = extract_modifier(g, pm, path, t)
    _check_modifier(g, pm, path, mod, -16, 0)


def test_extract_modifier_blue_witness_is_negative():
    t = 2
    colors = colors_for([1] * 16, [0] * 16)[:32]
    g0, pm0, _ = line_host(colors)  # only path edges: add one blue shortcut {a_1, b_2}
    g = ColoredGraph.from_edges(g0.n, list(g0.edges) + [(0, 3)], g0.red)
    pm = PerfectMatching.of(g, pm0.edges)
    path = alternating_path(g, pm, range(33))
    mod = extract_modifier(g, pm, path, t)
    assert mod.cycle.vertices == (0, 1, 2, 3) and mod.weight == -2 < 0


def test_extract_modifier_rejects_bad_path():
    g, pm, path = line_host("rbrb", complete=True)
    with pytest.raises(DomainError):
        extract_modifier(g, pm, path, 2)


def test_extract_modifier_reports_failing_query():
    inst, pm = gen_chain_counterexample(8)
    g = inst.graph.recolor(pm.edges)  # matched edges red
    pm = PerfectMatching.of(g, pm.edges)
    path, _ = chain_counterexample_path(inst, pm)
    path = alternating_path(g, pm, path.vertices[:-1])
    with pytest.raises(StructuralError) as exc:
        extract_modifier(g, pm, path, 1)
    assert isinstance(exc.value.payload, PshortQuery)


def test_extract_modifier_three_partite_trials():
    rnd = random.Random(77)
    done = 0
    while done < 500:
        g, pm, path = partite_trial(rnd, 3, part=32)
        if not is_t_good(path, 36):
            continue
        mod = extract_modifier(g, pm, path, 3)
        _check_modifier(g, pm, path, mod, -36, 0)
        done += 1


def test_extract_modifier_complete_trials():
    rnd = random.Random(8)
    done = 0
    while done < 60:
        k = rnd.randint(16, 24)
        mr = [rnd.random() < 0.9 for _ in range(k)]
        fr = [rnd.random() < 0.3 for _ in range(k)]
        g, pm, path = line_host(colors_for(mr, fr)[:2 * k], complete=True, seed=done)
        if not is_t_good(path, 16):
            continue
        _check_modifier(g, pm, path, extract_modifier(g, pm, path, 2), -16, 0)
        done += 1


def test_dual_modifier_mirrors_primal():
    rnd = random.Random(9)
    done = 0
    while done < 40:
        g, pm, path = partite_trial(rnd, 2, part=14)
        if not is_t_good(path, 16):
            continue
        try:
            primal = extract_modifier(g, pm, path, 2)
        except StructuralError:
            continue
        gb = invert_coloring(g)
        pmb = PerfectMatching.of(gb, pm.edges)
        pb = alternating_path(gb, pmb, path.vertices)
        assert is_dual_t_good(pb, 16)
        dual = extract_dual_modifier(gb, pmb, pb, 2)
        assert dual.cycle.vertices == primal.cycle.vertices
        assert dual.weight == -primal.weight
        _check_modifier(gb, pmb, pb, dual, 0, 16)
        done += 1


def test_dual_modifier_hand_built():
    colors = colors_for([0] * 16, [1] * 16)[:32]  # blue matched, red free: weight +16
    g, pm, path = line_host(colors, complete=True, seed=4)
    mod = extract_dual_modifier(g, pm, path, 2)
    _check_modifier(g, pm, path, mod, 0, 16)


def test_enumerate_path_modifiers_by_brute_force():
    rnd = random.Random(10)
    for trial in range(30):
        g, pm, path = line_host("".join(rnd.choice("rb") for _ in range(7)), complete=True, seed=trial)
        got = {m.cycle.vertex_set: m.weight for m in enumerate_path_modifiers(g, pm, path)}
        mods = [m for m in enumerate_path_modifiers(g, pm, path)]
        assert len(mods) == len({tuple(sorted(m.cycle.edges)) for m in mods})
        for m in mods:
            _check_modifier(g, pm, path, m, -100, 100)
        assert got  # complete host: plenty of modifiers


# -------------------------------------------------------------- good paths


def test_neg_weight_good_path():
    t = 3
    _, _, path0 = line_host(colors_for([1] * (2 * t), [0] * (2 * t - 1)))
    g, pm, path = line_host(colors_for([1] * (2 * t), [0] * (2 * t - 1)))
    q = find_good_subpath(g, pm, path, t, "neg_weight")
    assert q is not None and is_t_good(q, t) and path0.weight == -2 * t


def test_pos_weight_mirror():
    t = 3
    # even length, so inversion negates the weight: -2t under c, +2t under c-bar
    g, pm, path = line_host(colors_for([1] * (2 * t), [0] * (2 * t)))
    gb = invert_coloring(g)
    pmb = PerfectMatching.of(gb, pm.edges)
    pb = alternating_path(gb, pmb, path.vertices)
    assert pb.weight == -path.weight == 2 * t
    q = find_good_subpath(gb, pmb, pb, t, "pos_weight")
    assert q is not None and is_dual_t_good(q, t)


def test_good_path_precondition_unmet():
    g, pm, path = line_host("rbrb")
    assert find_good_subpath(g, pm, path, 3, "neg_weight") is None
    assert find_good_subpath(g, pm, path, 1, "bounded_many_red", x=2) is None


def _bounded_line(rnd, t, x, red_side):
    while True:
        k = rnd.randint(70, 110)
        mr = [rnd.random() < 0.6 for _ in range(k)]
        fr = [rnd.random() < 0.6 for _ in range(k)]
        g, pm, path = line_host(colors_for(mr, fr)[: 2 * k - 1])
        count = path.red_count if red_side else path.blue_count
        if abs(path.weight) <= x and count >= 8 * t * t + 4 * t * x:
            return g, pm, path


@pytest.mark.parametrize("variant", ["bounded_many_red", "bounded_many_blue"])
def test_bounded_variants_return_good_subpaths(variant):
    rnd = random.Random(11)
    t, x = 2, 4
    built = 0
    for _ in range(60):
        g, pm, path = _bounded_line(rnd, t, x, variant == "bounded_many_red")
        q = find_good_subpath(g, pm, path, t, variant, x=x)
        good = is_t_good if variant == "bounded_many_red" else is_dual_t_good
        assert q is not None and good(q, t)
        assert set(q.edges) <= set(path.edges)
        built += find_good_subpath(g, pm, path, t, variant, x=x, exhaustive_fallback=False) is not None
    assert built == 60  # the construction alone suffices on these inputs


# ---------------------------------------------------------------- zero-sum


def test_zero_sum_singleton():
    assert zero_sum_subsequence([3, 0, -2], 3) == [1]


def test_zero_sum_small():
    got = zero_sum_subsequence([1, 1, -1, -1], 1)
    assert got and sum([1, 1, -1, -1][i] for i in got) == 0


def test_zero_sum_range_checked():
    with pytest.raises(DomainError):
        zero_sum_subsequence([5], 2)


@given(st.integers(1, 5).flatmap(
    lambda p: st.tuples(st.just(p), st.lists(st.integers(-p, p), min_size=1, max_size=14))))
def test_zero_sum_agrees_with_subset_search(args):
    p, a = args
    got = zero_sum_subsequence(a, p)
    assert (got is not None) == oracles.zero_sum_exists(a)
    if got is not None:
        assert got and sum(a[i] for i in got) == 0
    if zero_sum_precondition(a, p):
        got = zero_sum_subsequence(a, p, fallback=False)
        assert got and sum(a[i] for i in got) == 0


@pytest.mark.parametrize("p", [1, 2, 3])
def test_zero_sum_exhaustive(p):
    cases, fails = zero_sum_exhaustive_check(p)
    assert cases > 0 and fails == 0


# ---------------------------------------------------------- modifying sets


def _two_squares():
    # square A: 0-1-2-3, square B: 4-5-6-7; M uses (0,1),(2,3),(4,5),(6,7)
    edges = [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7)]
    red = [(1, 2), (4, 5)]  # w_M(A) = +1, w_M(B) = -1
    g = ColoredGraph.from_edges(8, edges, red)
    m = PerfectMatching.of(g, [(0, 1), (2, 3), (4, 5), (6, 7)])
    mp = PerfectMatching.of(g, [(1, 2), (0, 3), (5, 6), (4, 7)])
    return g, m, mp


def test_zero_weight_cycle_is_returned():
    edges = [(0, 1), (1, 2), (2, 3), (0, 3)]
    g = ColoredGraph.from_edges(4, edges, [(0, 1), (1, 2)])
    m = PerfectMatching.of(g, [(0, 1), (2, 3)])
    mp = PerfectMatching.of(g, [(1, 2), (0, 3)])
    D = build_zero_weight_modifying_set(g, m, mp, 1)
    assert len(D.components) == 1 and D.total_weight == 0
    assert D.components[0].cycle.vertex_set == frozenset(range(4))


def test_plus_one_minus_one_pair():
    g, m, mp = _two_squares()
    D = build_zero_weight_modifying_set(g, m, mp, 1)
    assert D is not None and D.total_weight == 0
    assert D.edges == m.edges ^ mp.edges
    new = apply_modifying_set(g, m, D)
    assert new == mp and new.red_count == m.red_count


def test_empty_set_changes_nothing():
    g, m, _ = _two_squares()
    assert apply_modifying_set(g, m, ModifyingSet((), 0)) == m


def test_overlapping_components_rejected():
    g, m, mp = _two_squares()
    c = decompose_symmetric_difference(g, m, mp).cycles[0]
    mod = Modifier(c, c.weight)
    with pytest.raises(DomainError):
        apply_modifying_set(g, m, ModifyingSet((mod, mod), 2 * c.weight))
    with pytest.raises(DomainError):  # alternating for mp, not for m
        cb = alternating_cycle(g, mp, c.vertices)
        apply_modifying_set(g, m, ModifyingSet((Modifier(cb, 0),), 0))


def test_single_plus_one_modifier():
    g, m, mp = _two_squares()
    a = decompose_symmetric_difference(g, m, mp).cycles[0]
    assert a.weight == 1
    new = apply_modifying_set(g, m, ModifyingSet((Modifier(a, 1),), 1))
    assert new.red_count == m.red_count + 1


def test_zero_weight_sets_on_dense_hosts():
    rnd = random.Random(13)
    found = 0
    for trial in range(150):
        n = rnd.choice([8, 10])
        edges = [e for e in combinations(range(n), 2) if rnd.random() < 0.75]
        g = ColoredGraph.from_edges(n, edges, [e for e in edges if rnd.random() < 0.5])
        pms = oracles.all_pms(g)
        if len(pms) < 2:
            continue
        a, b = rnd.sample(pms, 2)
        m, mp = PerfectMatching.of(g, a), PerfectMatching.of(g, b)
        D = build_zero_weight_modifying_set(g, m, mp, 2)
        if D is None:
            continue
        found += 1
        verts = [c.cycle.vertex_set for c in D.components]
        assert sum(map(len, verts)) == len(frozenset().union(*verts))
        assert sum(oracles.weight(g, a, c.cycle.edges) for c in D.components) == 0 == D.total_weight
        new = apply_modifying_set(g, m, D)
        assert new.red_count == m.red_count
        assert len(new.edges ^ mp.edges) < len(m.edges ^ mp.edges)
    assert found >= 50
