"""Stepping kernels with backend selection at import time.

The compiled extension is preferred when present; the numpy/scipy
implementation is a drop-in fallback so the package works from a source
tree without building.  benchmarks/bench_evolve.py compares the two.
"""

from __future__ import annotations

import numpy as np

from . import _cnstep_py

try:
    from . import _cnstep as _ext
except ImportError:  # extension not built
    _ext = None

BACKEND = "cython" if _ext is not None else "python"


def available_backends() -> tuple[str, ...]:
    return ("cython", "python") if _ext is not None else ("python",)


def evolve_block_tridiag(a_d, a_o, b_d, b_o, u0, n_steps, backend=None):
    """Crank-Nicolson marching with zero Dirichlet boundaries."""
    backend = backend or BACKEND
    args = [np.ascontiguousarray(m, dtype=np.float64)
            for m in (a_d, a_o, b_d, b_o, u0)]
    if backend == "cython":
        if _ext is None:
            raise RuntimeError("compiled kernel is not available")
        return _ext.evolve_block_tridiag(*args, int(n_steps))
    if backend == "python":
        return _cnstep_py.evolve_block_tridiag(*args, int(n_steps))
    raise ValueError(f"unknown backend {backend!r}")


def evolve_block_cyclic(a_d, a_o, b_d, b_o, wrap, u0, n_steps):
    """Phase-periodic marching; python backend only."""
    return _cnstep_py.evolve_block_cyclic(a_d, a_o, b_d, b_o, wrap, u0,
                                          int(n_steps))
