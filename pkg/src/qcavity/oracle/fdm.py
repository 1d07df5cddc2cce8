"""Finite-difference residuals and the grid eigenvalue oracle.

pde_residual inserts a closed-form state into its wave equation using
second-order central differences in x and t (the state is evaluated
analytically at t +- dt, no history is stored) and must converge to
zero at second order under refinement for genuine solutions.

dirichlet_eigs discretizes -(hbar^2/2m) d^2/dx^2 + V0 with zero
boundary values on a uniform cell-vertex grid; its eigenvalues converge
at second order to the quantized levels and Richardson extrapolation of
two grids gives the reference values used in the acceptance checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ..model import CavityModel


@dataclass(frozen=True)
class Grid1D:
    """Uniform cell-vertex grid on [-ell/2, ell/2] including both endpoints."""

    n_points: int
    ell: float
    values: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n_points < 3:
            raise ValueError("need at least 3 grid points")
        if self.ell <= 0:
            raise ValueError("ell must be positive")

    @property
    def spacing(self) -> float:
        return self.ell / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(-0.5 * self.ell, 0.5 * self.ell, self.n_points)


@dataclass(frozen=True)
class ResidualReport:
    l2_residual: float
    linf_residual: float
    convergence_order: float | None = None


_WHICH = ("complex", "quat_left", "quat_right")


def which_for(state) -> str:
    eq = getattr(state, "equation", "complex")
    return {"complex": "complex", "left": "quat_left", "right": "quat_right"}[eq]


def pde_residual(state, which: str | None, grid: Grid1D, t: float = 0.0,
                 time_step: float | None = None) -> ResidualReport:
    """Central-difference residual of the selected wave equation.

    Both finite-difference steps are tied to the grid spacing so one
    refinement parameter controls the expected O(h^2) decay.
    """
    if which is None:
        which = which_for(state)
    if which not in _WHICH:
        raise ValueError(f"unknown wave equation {which!r}")
    model: CavityModel = state.model
    h = grid.spacing
    dt = h if time_step is None else time_step
    x = grid.x

    now0, now1 = state.pair(x, t)
    fwd0, fwd1 = state.pair(x, t + dt)
    bwd0, bwd1 = state.pair(x, t - dt)

    def dxx(f):
        return (f[:-2] - 2.0 * f[1:-1] + f[2:]) / (h * h)

    def dt_c(fwd, bwd):
        return (fwd[1:-1] - bwd[1:-1]) / (2.0 * dt)

    hbar, mass = model.hbar, model.mass
    kin = hbar * hbar / (2.0 * mass)
    u0c, u1c = now0[1:-1], now1[1:-1]

    r0 = (1j * hbar * dt_c(fwd0, bwd0) + kin * dxx(now0)
          - model.u0 * u0c + model.u1 * np.conj(u1c))
    if which == "complex":
        stacked = np.abs(r0)
    else:
        sign = 1.0 if which == "quat_left" else -1.0
        r1 = (sign * 1j * hbar * dt_c(fwd1, bwd1) + kin * dxx(now1)
              - model.u0 * u1c - model.u1 * np.conj(u0c))
        stacked = np.concatenate([np.abs(r0), np.abs(r1)])

    l2 = math.sqrt(h * float(np.sum(stacked**2)))
    linf = float(np.max(stacked)) if stacked.size else 0.0
    return ResidualReport(l2_residual=l2, linf_residual=linf)


def convergence_study(state, which: str | None = None, t: float = 0.0,
                      n_points: tuple[int, ...] = (251, 501, 1001)
                      ) -> tuple[list[ResidualReport], list[float]]:
    """Residuals over successively halved spacings plus measured orders."""
    if which is None:
        which = which_for(state)
    ell = state.model.ell
    reports = [pde_residual(state, which, Grid1D(n, ell), t) for n in n_points]
    orders = []
    for coarse, fine, n_c, n_f in zip(reports, reports[1:], n_points, n_points[1:]):
        ratio = (n_f - 1) / (n_c - 1)
        if fine.l2_residual == 0.0:
            orders.append(float("inf"))
        else:
            orders.append(math.log(coarse.l2_residual / fine.l2_residual)
                          / math.log(ratio))
    return reports, orders


def dirichlet_eigs(model: CavityModel, n_levels: int, grid: Grid1D) -> list[float]:
    """Lowest eigenvalues of the discretized -(hbar^2/2m) d2/dx2 + V0."""
    if model.v1 != 0.0:
        raise ValueError("grid eigenvalue oracle requires a real potential")
    h = grid.spacing
    n_int = grid.n_points - 2
    if n_levels > n_int:
        raise ValueError("more levels requested than interior points")
    kin = model.hbar**2 / (2.0 * model.mass * h * h)
    diag = np.full(n_int, 2.0 * kin + model.v0)
    off = np.full(n_int - 1, -kin)
    vals = eigh_tridiagonal(diag, off, select="i",
                            select_range=(0, n_levels - 1),
                            eigvals_only=True)
    return [float(v) for v in vals]


def richardson_dirichlet_eigs(model: CavityModel, n_levels: int,
                              n_points: int) -> list[float]:
    """Second-order Richardson extrapolation of two nested grids."""
    coarse = dirichlet_eigs(model, n_levels, Grid1D(n_points, model.ell))
    fine = dirichlet_eigs(model, n_levels,
                          Grid1D(2 * (n_points - 1) + 1, model.ell))
    return [(4.0 * f - c) / 3.0 for c, f in zip(coarse, fine)]
