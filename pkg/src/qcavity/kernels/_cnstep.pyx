# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Block-tridiagonal Crank-Nicolson stepping loop.

Solves (I - dt/2 L) u_new = (I + dt/2 L) u_old repeatedly for a
constant-coefficient system with small b x b blocks (b = 2 for a complex
field, b = 4 for a coupled pair) and zero Dirichlet boundaries.  The
left-hand factorization is done once with a block Thomas sweep; each
step is a banded matvec plus forward/backward substitution.
"""

import numpy as np


cdef int _invert(double* src, double* out, int b) except -1:
    """Gauss-Jordan inverse with partial pivoting of a b x b matrix."""
    cdef int i, j, k, piv
    cdef double best, factor, tmp
    cdef double work[8][16]
    for i in range(b):
        for j in range(b):
            work[i][j] = src[i * b + j]
            work[i][b + j] = 1.0 if i == j else 0.0
    for k in range(b):
        piv = k
        best = work[k][k]
        if best < 0:
            best = -best
        for i in range(k + 1, b):
            tmp = work[i][k]
            if tmp < 0:
                tmp = -tmp
            if tmp > best:
                best = tmp
                piv = i
        if best == 0.0:
            raise ZeroDivisionError("singular block in factorization")
        if piv != k:
            for j in range(2 * b):
                tmp = work[k][j]
                work[k][j] = work[piv][j]
                work[piv][j] = tmp
        factor = work[k][k]
        for j in range(2 * b):
            work[k][j] /= factor
        for i in range(b):
            if i == k:
                continue
            factor = work[i][k]
            if factor != 0.0:
                for j in range(2 * b):
                    work[i][j] -= factor * work[k][j]
    for i in range(b):
        for j in range(b):
            out[i * b + j] = work[i][b + j]
    return 0


cdef void _matmul(double* a, double* b_mat, double* out, int b) noexcept:
    cdef int i, j, k
    cdef double acc
    for i in range(b):
        for j in range(b):
            acc = 0.0
            for k in range(b):
                acc += a[i * b + k] * b_mat[k * b + j]
            out[i * b + j] = acc


def evolve_block_tridiag(double[:, ::1] a_d, double[:, ::1] a_o,
                         double[:, ::1] b_d, double[:, ::1] b_o,
                         double[:, ::1] u0, Py_ssize_t n_steps):
    """March u0 (n rows of b fields) forward n_steps Crank-Nicolson steps.

    a_d/a_o are the diagonal and off-diagonal blocks of the implicit
    matrix, b_d/b_o of the explicit one; off-diagonal blocks are the
    same above and below the diagonal.  Returns the final state.
    """
    cdef Py_ssize_t n = u0.shape[0]
    cdef int b = <int> u0.shape[1]
    if b > 8:
        raise ValueError("block size larger than 8 is not supported")

    g_arr = np.empty((n, b, b), dtype=np.float64)
    u_arr = np.array(u0, dtype=np.float64, copy=True)
    r_arr = np.empty((n, b), dtype=np.float64)
    cdef double[:, :, ::1] g = g_arr
    cdef double[:, ::1] u = u_arr
    cdef double[:, ::1] r = r_arr

    cdef double cblock[64]
    cdef double tmp1[64]
    cdef double tmp2[64]
    cdef int i, j, k
    cdef Py_ssize_t row, step
    cdef double acc

    # factorization: C_0 = A_d, C_i = A_d - A_o G_{i-1} A_o, G_i = inv(C_i)
    for i in range(b):
        for j in range(b):
            cblock[i * b + j] = a_d[i, j]
    _invert(cblock, &g[0, 0, 0], b)
    for row in range(1, n):
        _matmul(&g[row - 1, 0, 0], &a_o[0, 0], tmp1, b)
        _matmul(&a_o[0, 0], tmp1, tmp2, b)
        for i in range(b):
            for j in range(b):
                cblock[i * b + j] = a_d[i, j] - tmp2[i * b + j]
        _invert(cblock, &g[row, 0, 0], b)

    for step in range(n_steps):
        # r = B u with zero Dirichlet neighbors
        for row in range(n):
            for i in range(b):
                acc = 0.0
                for k in range(b):
                    acc += b_d[i, k] * u[row, k]
                if row > 0:
                    for k in range(b):
                        acc += b_o[i, k] * u[row - 1, k]
                if row < n - 1:
                    for k in range(b):
                        acc += b_o[i, k] * u[row + 1, k]
                r[row, i] = acc
        # forward sweep: y_i = r_i - A_o G_{i-1} y_{i-1}, stored in r
        for row in range(1, n):
            for i in range(b):
                acc = 0.0
                for k in range(b):
                    acc += g[row - 1, i, k] * r[row - 1, k]
                tmp1[i] = acc
            for i in range(b):
                acc = 0.0
                for k in range(b):
                    acc += a_o[i, k] * tmp1[k]
                r[row, i] -= acc
        # back substitution into u
        for i in range(b):
            acc = 0.0
            for k in range(b):
                acc += g[n - 1, i, k] * r[n - 1, k]
            tmp1[i] = acc
        for i in range(b):
            u[n - 1, i] = tmp1[i]
        for row in range(n - 2, -1, -1):
            for i in range(b):
                acc = 0.0
                for k in range(b):
                    acc += a_o[i, k] * u[row + 1, k]
                tmp1[i] = r[row, i] - acc
            for i in range(b):
                acc = 0.0
                for k in range(b):
                    acc += g[row, i, k] * tmp1[k]
                tmp2[i] = acc
            for i in range(b):
                u[row, i] = tmp2[i]

    return u_arr
