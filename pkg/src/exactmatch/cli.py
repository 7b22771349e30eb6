"""``exactmatch`` command line: solve, generate, verify, landscape, bench.

Exit codes: 0 yes / holds, 1 no / violated, 2 inconclusive or failed,
3 bad input (parse errors, unknown class or property).
"""

from __future__ import annotations

import argparse
import csv
import re
import sys
import time
from fractions import Fraction
from typing import Optional

from . import generators as gen
from .errors import DomainError, InstanceParseError, StructuralError
from .instance_io import InstanceFile, read_instance, write_instance
from .karzanov import (check_chord_property, solve_em_via_karzanov, verify_karzanov_property,
                       verify_weak_karzanov)
from .local_search import local_search_em
from .oracle import brute_force_em, em_landscape
from .structure import verify_pshort

EXIT_YES, EXIT_NO, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3

CSV_COLUMNS = ("n", "p", "class", "k", "strategy", "radius", "verdict", "oracle_verdict",
               "iterations", "seconds")

# classes with a bounded Pshort(t), where Local(s) is the intended solver
LOCAL_CLASSES = ("neighborhood_diversity", "bounded_bip_independence", "gnp")
ORACLE_FALLBACK_MAX_N = 20


class UsageError(Exception):
    pass


def _load(path) -> InstanceFile:
    return read_instance(path)


# ------------------------------------------------------------------ solve


def _auto_strategy(tag: str) -> str:
    if tag in gen.KARZANOV_CLASSES:
        return "karzanov"
    if tag in LOCAL_CLASSES:
        return "local"
    return "oracle"


def solve(graph, k: int, strategy: str, radius: int, class_tag: str = "untagged"):
    """Returns ``(verdict, matching, strategy_used, iterations)`` with verdict
    in {"yes", "no", "inconclusive"}."""
    n = graph.n
    if k < 0 or 2 * k > n or n % 2:
        return "no", None, strategy, 0
    if strategy == "auto":
        strategy = _auto_strategy(class_tag)
        if strategy == "local":
            verdict, pm, _, it = solve(graph, k, "local", radius)
            if verdict == "yes" or n > ORACLE_FALLBACK_MAX_N:
                return verdict, pm, "local", it
            verdict, pm, _, _ = solve(graph, k, "oracle", radius)
            return verdict, pm, "local+oracle", it
    if strategy == "local":
        out = local_search_em(graph, k, radius)
        if out.status == "found":
            return "yes", out.matching, "local", out.iterations
        if out.status == "no_pm" or (out.trace and k < out.trace[0][1]):
            # below the exact minimum red count
            return "no", None, "local", 0
        return "inconclusive", None, "local", out.iterations
    if strategy == "karzanov":
        try:
            res = solve_em_via_karzanov(graph, k)
        except StructuralError:
            return "inconclusive", None, "karzanov", 0
        return ("yes" if res.decision else "no"), res.matching, "karzanov", res.iterations
    if strategy == "oracle":
        try:
            pm = brute_force_em(graph, k)
        except DomainError:
            return "inconclusive", None, "oracle", 0
        return ("yes" if pm is not None else "no"), pm, "oracle", 0
    raise UsageError(f"unknown strategy {strategy!r}")


_VERDICT_EXIT = {"yes": EXIT_YES, "no": EXIT_NO, "inconclusive": EXIT_INCONCLUSIVE,
                 "holds": EXIT_YES, "violated": EXIT_NO}


def cmd_solve(args) -> int:
    f = _load(args.instance)
    k = args.k if args.k is not None else f.k
    if k is None:
        raise UsageError("no target: pass --k or put a 'k' line in the instance")
    t0 = time.perf_counter()
    verdict, pm, used, it = solve(f.graph, k, args.strategy, args.radius, f.instance.class_tag)
    secs = time.perf_counter() - t0
    print(f"verdict: {verdict}")
    print(f"strategy: {used}")
    if used.startswith("local"):
        print(f"radius: {args.radius}")
    print(f"iterations: {it}")
    print(f"seconds: {secs:.4f}")
    if pm is not None:
        assert pm.red_count == k
        print(f"red edges: {pm.red_count}")
        print("matching: " + " ".join(f"{u}-{v}" for u, v in pm.sorted_edges()))
    return _VERDICT_EXIT[verdict]


# --------------------------------------------------------------- generate


def _ints(s: str):
    return [int(x) for x in s.split(",") if x.strip()]


def _fracs(s: str):
    return [Fraction(x) for x in s.split(",") if x.strip()]


def _intervals(s: str):
    out = []
    for tok in s.split(","):
        a, b = tok.split(":")
        out.append((Fraction(a), Fraction(b)))
    return out


def _build(args) -> gen.ClassInstance:
    c = args.cls
    if c == "complete_r_partite" and args.parts:
        return gen.gen_complete_r_partite(_ints(args.parts))
    if c == "chain" and args.profile is not None:
        return gen.gen_chain(_ints(args.profile), args.n_y)
    if c == "chain_pshort_counterexample":
        if args.n is None:
            raise UsageError("chain_pshort_counterexample needs --n (vertices per side)")
        return gen.gen_chain_counterexample(args.n)[0]
    if c == "unit_interval" and args.centers:
        return gen.gen_unit_interval(_fracs(args.centers))
    if c == "bip_unit_interval" and args.centers:
        return gen.gen_bip_unit_interval(_fracs(args.centers), _ints(args.sides or ""))
    if c == "interval" and args.intervals:
        return gen.gen_interval(_intervals(args.intervals))
    if c == "bip_interval" and args.intervals:
        return gen.gen_bip_interval(_intervals(args.intervals), _ints(args.sides or ""))
    if c == "gnp":
        if args.n is None:
            raise UsageError("gnp needs --n")
        return gen.gen_gnp(args.n, args.p, args.seed)
    if args.n is None:
        raise UsageError(f"{c} needs explicit structure options or --n for a random instance")
    return gen.random_class_instance(c, args.n, args.seed)


_GEN_CLASSES = ("complete_r_partite", "chain", "chain_pshort_counterexample", "unit_interval",
                "interval", "bip_interval", "bip_unit_interval", "neighborhood_diversity", "gnp",
                "bounded_bip_independence")


def cmd_generate(args) -> int:
    if args.cls not in _GEN_CLASSES:
        raise UsageError(f"unknown class {args.cls!r}")
    inst = _build(args)
    if args.red_prob is not None and args.red_count is not None:
        raise UsageError("give at most one of --red-prob and --red-count")
    if args.red_count is not None:
        red = gen.random_coloring(inst.graph, red_count=args.red_count, seed=args.seed)
    elif args.red_prob is not None:
        red = gen.random_coloring(inst.graph, red_prob=args.red_prob, seed=args.seed)
    else:
        red = frozenset()
    inst = inst.with_coloring(red)
    gen.validate(inst)
    if args.out:
        write_instance(args.out, inst, args.k)
    else:
        from .instance_io import render
        sys.stdout.write(render(inst, args.k))
    return EXIT_YES


# ----------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    prop = args.property
    t = args.t
    m = re.fullmatch(r"pshort\((\d+)\)", prop)
    if m:
        prop, t = "pshort", int(m.group(1))
    if prop not in ("pshort", "chord", "karzanov", "weak-karzanov"):
        raise UsageError(f"unknown property {args.property!r}")
    f = _load(args.instance)
    g = f.graph
    if prop == "pshort":
        if t is None:
            raise UsageError("pshort needs t, e.g. 'pshort(3)' or --t 3")
        v = verify_pshort(g, t, mode=args.mode, budget=args.budget, seed=args.seed)
        print(f"pshort({t}): {v.status}  (search nodes: {v.checked})")
        if v.query is not None:
            print("path: " + " ".join(map(str, v.query.path.vertices)))
            print("F: " + " ".join(f"{a}-{b}" for a, b in v.query.F))
        return _VERDICT_EXIT[v.status]
    if prop == "chord":
        v = check_chord_property(g, args.max_cycle_len, budget=args.budget)
        print(f"chord property: {v.status}  (cycles checked: {v.checked})")
        if v.cycle is not None:
            print(f"condition {v.condition} fails on cycle: " + " ".join(map(str, v.cycle)))
        return _VERDICT_EXIT[v.status]
    fn = verify_karzanov_property if prop == "karzanov" else verify_weak_karzanov
    v = fn(g)
    print(f"{prop} property: {v.status}")
    print("landscape: " + " ".join(map(str, v.landscape)))
    if v.witness is not None:
        a, b, k = v.witness
        print(f"missing {k} between achievable {a} and {b}")
    return _VERDICT_EXIT[v.status]


def cmd_landscape(args) -> int:
    f = _load(args.instance)
    land = em_landscape(f.graph, args.limit)
    print(" ".join(map(str, land.achievable)))
    if land.truncated:
        print(f"(truncated after {args.limit} perfect matchings)", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    return EXIT_YES


# ------------------------------------------------------------------ bench


def bench_rows(classes, sizes, radii, trials: int, seed: int, p: float = 0.5,
               with_oracle: bool = True):
    """One row per (trial, k, radius); deterministic in ``seed``."""
    rows = []
    trial_id = 0
    for cls in classes:
        for n in sizes:
            for tr in range(trials):
                s = seed * 1_000_003 + trial_id
                trial_id += 1
                if cls == "gnp":
                    inst = gen.gen_gnp(n, p, s)
                    inst = inst.with_coloring(gen.random_coloring(inst.graph, red_prob=0.5, seed=s + 1))
                else:
                    inst = gen.random_colored_instance(cls, n, s)
                g = inst.graph
                land = em_landscape(g) if with_oracle else None
                for k in range(n // 2 + 1):
                    oracle = "" if land is None or land.truncated else ("yes" if k in land else "no")
                    for s_ in radii:
                        t0 = time.perf_counter()
                        verdict, _, used, it = solve(g, k, "local", s_)
                        rows.append({"n": n, "p": p if cls == "gnp" else "", "class": cls, "k": k,
                                     "strategy": used, "radius": s_, "verdict": verdict,
                                     "oracle_verdict": oracle, "iterations": it,
                                     "seconds": f"{time.perf_counter() - t0:.6f}"})
    return rows


def cmd_bench(args) -> int:
    classes = [c.strip() for c in args.classes.split(",") if c.strip()]
    for c in classes:
        if c not in _GEN_CLASSES or c == "chain_pshort_counterexample":
            raise UsageError(f"unknown class {c!r}")
    rows = bench_rows(classes, _ints(args.sizes), _ints(args.radii), args.trials, args.seed,
                      args.p, not args.no_oracle)
    out = open(args.csv, "w", newline="", encoding="utf-8") if args.csv else sys.stdout
    try:
        w = csv.DictWriter(out, fieldnames=CSV_COLUMNS)
        w.writeheader()
        w.writerows(rows)
    finally:
        if args.csv:
            out.close()
    return EXIT_YES


# ------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="exactmatch", description="Exact Matching toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide EM for one instance")
    s.add_argument("instance")
    s.add_argument("--k", type=int)
    s.add_argument("--strategy", default="auto", choices=("auto", "local", "karzanov", "oracle"))
    s.add_argument("--radius", type=int, default=2)
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("generate", help="write a certified instance")
    g.add_argument("cls", metavar="class")
    g.add_argument("--n", type=int, help="vertex count (per side for chain_pshort_counterexample)")
    g.add_argument("--parts", help="part sizes, e.g. 2,3,3")
    g.add_argument("--profile", help="chain degree profile, e.g. 1,2,3")
    g.add_argument("--n-y", type=int, dest="n_y")
    g.add_argument("--centers", help="unit-interval centres, e.g. 0,1/2,3/2")
    g.add_argument("--intervals", help="closed intervals, e.g. 0:2,1:3")
    g.add_argument("--sides", help="bipartition side (0/1) per vertex")
    g.add_argument("--p", type=float, default=0.5)
    g.add_argument("--red-prob", type=float, dest="red_prob")
    g.add_argument("--red-count", type=int, dest="red_count")
    g.add_argument("--k", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--out")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check pshort(t), chord, karzanov or weak-karzanov")
    v.add_argument("property")
    v.add_argument("instance")
    v.add_argument("--t", type=int)
    v.add_argument("--mode", default="exhaustive", choices=("exhaustive", "sampled"))
    v.add_argument("--budget", type=int, default=10**7)
    v.add_argument("--max-cycle-len", type=int, dest="max_cycle_len")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    la = sub.add_parser("landscape", help="print the achievable red counts")
    la.add_argument("instance")
    la.add_argument("--limit", type=int, default=10**6)
    la.set_defaults(func=cmd_landscape)

    b = sub.add_parser("bench", help="local-search success rates as CSV")
    b.add_argument("--classes", default="gnp")
    b.add_argument("--sizes", default="8,10")
    b.add_argument("--radii", default="1,2")
    b.add_argument("--trials", type=int, default=5)
    b.add_argument("--p", type=float, default=0.5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--no-oracle", action="store_true", dest="no_oracle")
    b.add_argument("--csv")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_YES
    try:
        return args.func(args)
    except InstanceParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UsageError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
