"""Real-Hilbert-space expectation values.

The expectation functional is the symmetrized integral
(1/2) Int [ Psi^dag (O Psi) + (O Psi)^dag Psi ] dx, which equals the
integral of the scalar part of conj(Psi) * (O Psi) and is real for any
operator, hermitian or not.  On symplectic pairs the scalar part of
conj(a0 + a1 j)(u0 + u1 j) is Re(conj(a0) u0) + Re(a1 conj(u1)).

Derivatives of the closed-form states are applied analytically and only
the final 1D integral is done numerically (composite quadrature with
Richardson extrapolation).

For quaternionic states this functional automatically weights E and p
by the signed density rho = (|A0|^2 - |A1|^2)|psi|^2 and p^2 and V by
the unsigned varrho = (|A0|^2 + |A1|^2)|psi|^2.  The energy operator is
i hbar d/dt with i applied on the side matching the state's wave
equation (left for complex and left-equation states, right for
right-equation states); an explicit override allows recording both
placements.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import CavityModel
from .oracle.quadrature import quadrature


class OperatorTag(enum.Enum):
    IDENTITY = "identity"
    ENERGY = "energy"
    MOMENTUM = "momentum"
    MOMENTUM_SQUARED = "momentum_squared"
    POTENTIAL = "potential"
    POSITION = "position"


def _energy_side(state, override):
    if override is not None:
        return override
    return "right" if state.equation == "right" else "left"


def apply_operator(state, op: OperatorTag, x, t, energy_side=None):
    """(O Psi) at the points x, as a symplectic pair of arrays."""
    model: CavityModel = state.model
    hbar = model.hbar
    if op is OperatorTag.IDENTITY:
        return state.pair(x, t)
    if op is OperatorTag.POSITION:
        u0, u1 = state.pair(x, t)
        return x * u0, x * u1
    if op is OperatorTag.MOMENTUM:
        d0, d1 = state.pair_dx(x, t)
        return -1j * hbar * d0, -1j * hbar * d1
    if op is OperatorTag.MOMENTUM_SQUARED:
        d0, d1 = state.pair_dxx(x, t)
        return -(hbar**2) * d0, -(hbar**2) * d1
    if op is OperatorTag.ENERGY:
        d0, d1 = state.pair_dt(x, t)
        if _energy_side(state, energy_side) == "left":
            return 1j * hbar * d0, 1j * hbar * d1
        return 1j * hbar * d0, -1j * hbar * d1
    if op is OperatorTag.POTENTIAL:
        u0, u1 = state.pair(x, t)
        return (model.u0 * u0 - model.u1 * np.conj(u1),
                model.u0 * u1 + model.u1 * np.conj(u0))
    raise ValueError(f"unknown operator {op!r}")


def real_inner(state_a, state_b, op: OperatorTag = OperatorTag.IDENTITY,
               t: float = 0.0, tol: float = 1e-11,
               energy_side: str | None = None) -> float:
    """Scalar part of the overlap of state_a with O state_b over the box."""
    model = state_a.model
    half = 0.5 * model.ell

    def integrand(x):
        a0, a1 = state_a.pair(x, t)
        u0, u1 = apply_operator(state_b, op, x, t, energy_side=energy_side)
        return np.real(np.conj(a0) * u0) + np.real(a1 * np.conj(u1))

    value, _ = quadrature(integrand, -half, half, tol=tol)
    return value


def expect_energy_trajectory(state, t: float) -> float:
    """E1 exp(2 V1 t / hbar), valid for states with E0 = -V1."""
    model = state.model
    energy = state.energy
    if abs(energy.real + model.v1) > 1e-12:
        raise ValueError("trajectory formula requires E0 = -V1")
    return energy.imag * math.exp(2.0 * model.v1 * t / model.hbar)


def solution_ii_position(model: CavityModel, n: int, theta: float,
                         omega: float, t: float = 0.0) -> float:
    """Closed-form <x> of a distorted quantized state.

    cos(N pi) ell sin(2 Theta) sin(Omega) / (2 N pi) * exp(2 V1 t / hbar);
    bounded by ell / (2 N pi) in magnitude at t = 0.
    """
    if n < 1:
        raise ValueError("quantum number must be >= 1")
    sign = math.cos(n * math.pi)
    return (sign * model.ell * math.sin(2.0 * theta) * math.sin(omega)
            / (2.0 * n * math.pi) * math.exp(2.0 * model.v1 * t / model.hbar))


@dataclass(frozen=True)
class DensityPair:
    rho: float
    varrho: float


def densities(state, x: float, t: float = 0.0) -> DensityPair:
    """Signed and unsigned probability densities at one point.

    For a unit lift: varrho = |psi|^2 and
    rho = (1 - |Y0|^2)/(1 + |Y0|^2) |psi|^2; a complex state has
    rho = varrho = |psi|^2.
    """
    u0, u1 = state.pair(np.array([float(x)]), t)
    d0 = abs(u0[0]) ** 2
    d1 = abs(u1[0]) ** 2
    return DensityPair(rho=d0 - d1, varrho=d0 + d1)


def energy_conservation_residual(state, t: float = 0.0,
                                 tol: float = 1e-11) -> float:
    """| <E> - <p^2>/(2m) - <V> | at time t."""
    model = state.model
    e = real_inner(state, state, OperatorTag.ENERGY, t, tol=tol)
    p2 = real_inner(state, state, OperatorTag.MOMENTUM_SQUARED, t, tol=tol)
    v = real_inner(state, state, OperatorTag.POTENTIAL, t, tol=tol)
    return abs(e - p2 / (2.0 * model.mass) - v)


def observable_records(state, family_label: str, times, tol: float = 1e-11):
    """Long-form report rows (family, N, t, observable, value, residual).

    The residual column carries the conservation residual on every row of
    a time slice, so each slice is self-contained.
    """
    rows = []
    n = getattr(state, "n", None)
    if n is None:
        n = getattr(getattr(state, "base", None), "n", None)
    for t in times:
        t = float(t)
        residual = energy_conservation_residual(state, t, tol=tol)
        for op in (OperatorTag.ENERGY, OperatorTag.MOMENTUM,
                   OperatorTag.MOMENTUM_SQUARED, OperatorTag.POTENTIAL,
                   OperatorTag.POSITION):
            value = real_inner(state, state, op, t, tol=tol)
            rows.append((family_label, n, t, op.value, value, residual))
    return rows
