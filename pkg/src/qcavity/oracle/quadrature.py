"""Composite trapezoid quadrature with Richardson extrapolation (Romberg).

The integrand must accept numpy arrays.  The error estimate is the
difference between the two last diagonal extrapolants, which is a
conservative bound once the grid resolves the integrand; a minimum
number of halvings guards against spuriously early agreement on
oscillatory integrands.
"""

from __future__ import annotations

import numpy as np


class QuadratureNonConvergence(RuntimeError):
    def __init__(self, value, estimate, tol):
        super().__init__(
            f"quadrature did not reach tol={tol:g}: value={value!r}, "
            f"estimate={estimate:g}")
        self.value = value
        self.estimate = estimate


def quadrature(f, a: float, b: float, tol: float = 1e-11,
               max_depth: int = 20, min_depth: int = 8):
    """Integrate f over [a, b].

    Returns (value, error_estimate).  Convergence means
    estimate <= tol * max(1, |value|); raises QuadratureNonConvergence
    after max_depth interval halvings.
    """
    if not a < b:
        raise ValueError("need a < b")
    span = b - a
    fa = float(f(np.array([a]))[0])
    fb = float(f(np.array([b]))[0])
    row = [0.5 * span * (fa + fb)]
    n = 1
    h = span
    estimate = np.inf
    for depth in range(1, max_depth + 1):
        h /= 2.0
        xs = a + (2.0 * np.arange(1, n + 1) - 1.0) * h
        total = float(np.sum(f(xs)))
        n *= 2
        new_row = [0.5 * row[0] + h * total]
        factor = 1.0
        for prev in row:
            factor *= 4.0
            new_row.append(new_row[-1] + (new_row[-1] - prev) / (factor - 1.0))
        estimate = abs(new_row[-1] - row[-1])
        row = new_row
        value = row[-1]
        if depth >= min_depth and estimate <= tol * max(1.0, abs(value)):
            return value, estimate
    raise QuadratureNonConvergence(row[-1], estimate, tol)
