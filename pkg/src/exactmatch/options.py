"""Backend selection for the numeric kernels.

Set ``EXACTMATCH_BACKEND=numpy`` to force the pure-numpy fallback paths even
when numba is importable. The flag is read once, at import time.
"""

import os

_requested = os.getenv("EXACTMATCH_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"EXACTMATCH_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _requested == "numba"
BACKEND = "numba" if USE_NUMBA else "numpy"

# Subset tables have 2**n entries of 8 bytes each.
MAX_TABLE_VERTICES = 22

NUMBA_OPTS = {"cache": False, "nogil": True}
