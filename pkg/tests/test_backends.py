"""The numba kernels and the numpy fallback give identical results."""

import json
import os
import subprocess
import sys

import pytest

from exactmatch import options

WORKER = r"""
import json
import numpy as np
from exactmatch import _kernels, options
from exactmatch.generators import gen_complete_r_partite, random_colored_instance, random_coloring
from exactmatch.karzanov import _search_colorings, bcpm, check_chord_property
from exactmatch.matching import weight_matrix
from exactmatch.oracle import _csr, em_landscape, enumerate_pms

def plain(x):
    if isinstance(x, (tuple, list)):
        return [plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return x.tolist()
    return x.item() if isinstance(x, np.generic) else x

out = {"backend": options.BACKEND, "cases": []}
for tag in ("chain", "unit_interval", "gnp", "interval"):
    for seed in range(4):
        g = random_colored_instance(tag, 10, seed).graph
        w = weight_matrix(g)
        ip, nb = _csr(g)
        adj = g.adjacency.astype(np.bool_)
        tab = _kernels.subset_landscape(g.n, w)
        eu, ev, er = g.edge_arrays
        code, cyc, checked = _kernels.chord_scan(g.n, adj, ip, nb, 6, g.n, 10**7)
        out["cases"].append({
            "table": plain(tab),
            "pms": plain(_kernels.enumerate_pms(g.n, w, ip, nb, 10**6)),
            "chord": [int(code), [int(v) for v in cyc], int(checked)],
            "sweep": [plain(_kernels.bcpm_sweep(g.n, eu, ev, er, tab, k, 4)) for k in range(-1, 6)],
            "landscape": list(em_landscape(g).achievable),
            "bcpm": [bcpm(g, k).found for k in range(6)],
        })
        pms = [p.edges for p in enumerate_pms(g)]
        if pms:
            for target in (0b100001, 0b110011, 0b101101):
                found = _search_colorings(pms, target, 5)
                out["cases"].append(sorted(found) if found is not None else None)
print(json.dumps(out))
"""


def run_backend(name):
    env = dict(os.environ, EXACTMATCH_BACKEND=name)
    res = subprocess.run([sys.executable, "-c", WORKER], env=env, capture_output=True, text=True,
                         timeout=600, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


@pytest.mark.skipif(not options.HAVE_NUMBA, reason="numba not installed")
def test_backends_agree():
    fast, slow = run_backend("numba"), run_backend("numpy")
    assert (fast["backend"], slow["backend"]) == ("numba", "numpy")
    assert fast["cases"] == slow["cases"]


def test_bad_backend_name_is_rejected():
    env = dict(os.environ, EXACTMATCH_BACKEND="cuda")
    res = subprocess.run([sys.executable, "-c", "import exactmatch"], env=env, capture_output=True,
                         text=True, timeout=120)
    assert res.returncode != 0 and "EXACTMATCH_BACKEND" in res.stderr
