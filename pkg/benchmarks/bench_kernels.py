"""Time the hot kernels under both backends.

Each backend runs in its own interpreter because ``EXACTMATCH_BACKEND`` is
read at import time. Numba compile time is excluded by a warm-up call.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
import numpy as np
from exactmatch import _kernels, options
from exactmatch.generators import gen_complete_r_partite, random_colored_instance, random_coloring
from exactmatch.matching import weight_matrix
from exactmatch.oracle import _csr

repeat = int(sys.argv[1])
base = gen_complete_r_partite([2, 2, 3, 3]).graph
dense = base.recolor(random_coloring(base, red_prob=0.5, seed=5))
chain = random_colored_instance("chain", 12, 2).graph
big = random_colored_instance("unit_interval", 18, 1).graph

def timed(fn):
    fn()  # warm-up / compile
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter(); fn(); best = min(best, time.perf_counter() - t0)
    return best

out = {}
w = weight_matrix(big)
out["subset_landscape n=18"] = timed(lambda: _kernels.subset_landscape(big.n, w))
wd = weight_matrix(dense); ip, nb = _csr(dense)
out["enumerate_pms K_{2,2,3,3}"] = timed(lambda: _kernels.enumerate_pms(dense.n, wd, ip, nb, 10**6))
adj = dense.adjacency.astype(np.bool_)
out["chord_scan K_{2,2,3,3}"] = timed(lambda: _kernels.chord_scan(dense.n, adj, ip, nb, 6, dense.n, 10**9))
tab = _kernels.subset_landscape(chain.n, weight_matrix(chain))
eu, ev, er = chain.edge_arrays
out["bcpm_sweep chain n=12 (k=-1)"] = timed(lambda: _kernels.bcpm_sweep(chain.n, eu, ev, er, tab, -1, 4))
print(json.dumps({"backend": options.BACKEND, "times": out}))
"""


def run(backend: str, repeat: int) -> dict:
    env = dict(os.environ, EXACTMATCH_BACKEND=backend)
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, check=True,
                         capture_output=True, text=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    t0 = time.perf_counter()
    fast = run("numba", args.repeat)
    slow = run("numpy", args.repeat)
    print(f"{'kernel':34s} {'numba [s]':>10s} {'numpy [s]':>10s} {'speed-up':>9s}")
    for name, t in fast["times"].items():
        u = slow["times"][name]
        print(f"{name:34s} {t:10.4f} {u:10.4f} {u / t:8.1f}x")
    print(f"(wall {time.perf_counter() - t0:.1f} s, best of {args.repeat})")


if __name__ == "__main__":
    main()
