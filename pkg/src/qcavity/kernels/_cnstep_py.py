"""Pure numpy/scipy twin of the compiled stepping kernel.

Assembles the block-tridiagonal Crank-Nicolson matrices as sparse
matrices, factors the implicit side once, and loops solve(B @ u).
Also provides the block-cyclic variant used for phase-periodic
boundaries, which only exists on this backend.
"""

from __future__ import annotations

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu


def _assemble(diag_block, off_block, n, corner_lower=None, corner_upper=None):
    mat = (sparse.kron(sparse.eye(n), diag_block)
           + sparse.kron(sparse.diags([1.0, 1.0], [-1, 1],
                                      shape=(n, n)), off_block))
    if corner_lower is not None:
        corners = sparse.lil_matrix((n, n))
        corners[0, n - 1] = 1.0
        upper = sparse.kron(corners.tocsr(), corner_upper)
        corners = sparse.lil_matrix((n, n))
        corners[n - 1, 0] = 1.0
        lower = sparse.kron(corners.tocsr(), corner_lower)
        mat = mat + upper + lower
    return mat.tocsc()


def _march(lhs, rhs, u0, n_steps):
    lu = splu(lhs)
    rhs = rhs.tocsr()
    u = np.asarray(u0, dtype=float).reshape(-1).copy()
    for _ in range(n_steps):
        u = lu.solve(rhs @ u)
    return u.reshape(np.asarray(u0).shape)


def evolve_block_tridiag(a_d, a_o, b_d, b_o, u0, n_steps):
    n = np.asarray(u0).shape[0]
    lhs = _assemble(a_d, a_o, n)
    rhs = _assemble(b_d, b_o, n)
    return _march(lhs, rhs, u0, n_steps)


def evolve_block_cyclic(a_d, a_o, b_d, b_o, wrap, u0, n_steps):
    """Periodic-with-phase variant: the neighbor across the seam is
    wrap @ u (rightward) and wrap.T @ u (leftward), wrap orthogonal."""
    n = np.asarray(u0).shape[0]
    wrap = np.asarray(wrap, dtype=float)
    lhs = _assemble(a_d, a_o, n, corner_lower=a_o @ wrap,
                    corner_upper=a_o @ wrap.T)
    rhs = _assemble(b_d, b_o, n, corner_lower=b_o @ wrap,
                    corner_upper=b_o @ wrap.T)
    return _march(lhs, rhs, u0, n_steps)
