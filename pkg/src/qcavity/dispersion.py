"""Algebraic relations between energy, potential and momentum.

A single exponential exp(K x - (E/hbar) t) solves the constant-potential
wave equation when (hbar^2/2m) K^2 equals an eigenvalue of a 2x2 complex
matrix built from E and the potential.  For a complex wave function that
matrix is trivially 1x1 and yields the two real constraints

    K0^2 - K1^2 = (2m/hbar^2) (V0 - E1)
    2 K0 K1     = (2m/hbar^2) (V1 + E0)

For quaternionic wave functions the coupling U1 mixes the two complex
components and the eigenvalue problem is genuinely 2x2, with one matrix
per wave equation (i acting on the left or on the right of the time
derivative).  The eigenvector ratio Y0, with A1 = Y0 * conj(A0), measures
how far the state is from a complex one.

Y0 is always computed from the eigenvector equation itself rather than
from expanded radical expressions, and every returned (K, Y0) pair is
checked against its matrix at construction time.
"""

from __future__ import annotations

import cmath
import math

from .model import BranchChoice, CavityModel, Regime, ZeroCouplingError

#: absolute tolerance deciding V1 + E0 = 0 in regime classification
REGIME_TOL = 1e-12

_CONSTRUCTION_GUARD = 1e-9


def _clamp_tiny_negative(value: float, tol: float = 1e-12) -> float:
    # the closed forms are nonnegative analytically; absorb rounding noise
    if value < 0.0 and abs(value) < tol:
        return 0.0
    return value


def _momentum_from_ksq(ksq: complex, signs: BranchChoice) -> complex:
    """Split K^2 into K = K0 + K1*i honoring the sign selectors.

    The dominant component comes from its radical (no cancellation); the
    small one from 2 K0 K1 = Im(K^2), so the product constraint holds to
    rounding even when the two scales are far apart.  The sign selectors
    pick the square-root branch; when Im(K^2) != 0 the relative sign of
    K0 and K1 is forced and k1_sign is ignored.
    """
    mag = abs(ksq)
    if ksq.real >= 0.0:
        k0 = math.sqrt(_clamp_tiny_negative((mag + ksq.real) / 2.0))
        k1 = ksq.imag / (2.0 * k0) if k0 > 0.0 else 0.0
    else:
        k1 = math.sqrt(_clamp_tiny_negative((mag - ksq.real) / 2.0))
        k0 = ksq.imag / (2.0 * k1) if k1 > 0.0 else 0.0
    if k0 != 0.0:
        if math.copysign(1.0, k0) != signs.k0_sign:
            k0, k1 = -k0, -k1
    else:
        k1 = abs(k1) * signs.k1_sign
    return complex(k0, k1)


def complex_dispersion(energy: complex, model: CavityModel,
                       signs: BranchChoice = BranchChoice()) -> complex:
    """Momentum K = K0 + K1*i of a complex state with energy E = E0 + E1*i.

    Solves both real constraints simultaneously:
    K0^2 = (m/hbar^2)(V0 - E1 + s), K1^2 = (m/hbar^2)(E1 - V0 + s) with
    s = hypot(E1 - V0, V1 + E0), which is exactly the square-root split
    of (hbar^2/2m) K^2 = V + i E.
    """
    model.require_complex()
    ksq = (2.0 * model.mass / model.hbar**2) * (model.u0 + 1j * energy)
    return _momentum_from_ksq(ksq, signs)


def classify_regime(energy: complex, model: CavityModel) -> Regime:
    """Propagating / non-propagating / combined classification.

    The split is controlled by V1 + E0 (zero within REGIME_TOL means a
    steady density) and by the sign of E1 - V0.  The measure-zero edge
    V0 = E1 with V1 + E0 = 0 gives K = 0 and is labelled separately.
    """
    model.require_complex()
    drive = model.v1 + energy.real
    if abs(drive) > REGIME_TOL:
        return Regime.COMBINED
    gap = energy.imag - model.v0
    if abs(gap) <= REGIME_TOL:
        return Regime.PROPAGATING_DEGENERATE
    return Regime.PROPAGATING if gap > 0 else Regime.NON_PROPAGATING


# -- coupled 2x2 eigenproblems ------------------------------------------------

def coupling_matrix(energy: complex, model: CavityModel, which: str):
    """The 2x2 complex matrix whose eigenvalue is hbar^2 K^2 / (2m).

    which = "left":  rows [[U0 + iE, -U1], [conj(U1), conj(U0) - iE]]
    which = "right": rows [[U0 + iE, -U1], [conj(U1), conj(U0) + iE]]

    acting on the vector (A0, conj(A1)).
    """
    u0, u1 = model.u0, model.u1
    ie = 1j * energy
    if which == "left":
        return ((u0 + ie, -u1), (u1.conjugate(), u0.conjugate() - ie))
    if which == "right":
        return ((u0 + ie, -u1), (u1.conjugate(), u0.conjugate() + ie))
    raise ValueError(f"unknown wave equation {which!r}")


def _eigenvalue_left(energy: complex, model: CavityModel, sign: int) -> complex:
    # lam = V0 +- sqrt(-alpha - i beta), split via
    # alpha = (E0+V1)^2 - E1^2 + |U1|^2,  beta = 2 E1 (E0+V1)
    e0, e1 = energy.real, energy.imag
    drive = e0 + model.v1
    alpha = drive * drive - e1 * e1 + abs(model.u1) ** 2
    beta = 2.0 * e1 * drive
    r = math.hypot(alpha, beta)
    p = math.sqrt(_clamp_tiny_negative((r - alpha) / 2.0))
    if p > 0.0:
        q = -beta / (2.0 * p)
    else:
        q = math.sqrt(_clamp_tiny_negative((r + alpha) / 2.0))
    return model.v0 + sign * complex(p, q)


def _eigenvalue_right(energy: complex, model: CavityModel, sign: int) -> complex:
    # lam = (V0 - E1) + i (E0 +- sqrt(V1^2 + |U1|^2))
    root = math.hypot(model.v1, abs(model.u1))
    return complex(model.v0 - energy.imag, energy.real + sign * root)


def _y0_from_eigenvector(matrix, lam: complex) -> complex:
    """Eigenvector ratio from whichever row is better conditioned.

    Row 1 gives conj(Y0) = (M00 - lam)/U1, row 2 gives
    conj(Y0) = -conj(U1)/(M11 - lam); both agree analytically since
    (M00 - lam)(M11 - lam) = -|U1|^2, but each loses accuracy when lam
    is close to its own diagonal entry.
    """
    (m00, m01), (m10, m11) = matrix
    d0 = m00 - lam
    d1 = m11 - lam
    if abs(d1) >= abs(d0):
        y0_conj = -m10 / d1
    else:
        y0_conj = -d0 / m01
    return y0_conj.conjugate()


def eigen_residual(momentum: complex, y0: complex, energy: complex,
                   model: CavityModel, which: str) -> float:
    """|| M v - (hbar^2 K^2/2m) v || / ||v|| with v = (1, conj(Y0))."""
    (m00, m01), (m10, m11) = coupling_matrix(energy, model, which)
    lam = model.hbar**2 * momentum**2 / (2.0 * model.mass)
    v0, v1 = 1.0 + 0j, y0.conjugate()
    r0 = m00 * v0 + m01 * v1 - lam * v0
    r1 = m10 * v0 + m11 * v1 - lam * v1
    return math.sqrt((abs(r0) ** 2 + abs(r1) ** 2) /
                     (abs(v0) ** 2 + abs(v1) ** 2))


def _quat_dispersion(energy: complex, model: CavityModel, signs: BranchChoice,
                     which: str) -> tuple[complex, complex]:
    if abs(model.u1) == 0.0:
        raise ZeroCouplingError(
            "U1 = 0 decouples the components; use complex_dispersion")
    if which == "left":
        lam = _eigenvalue_left(energy, model, signs.inner_sign)
    else:
        lam = _eigenvalue_right(energy, model, signs.inner_sign)
    matrix = coupling_matrix(energy, model, which)
    y0 = _y0_from_eigenvector(matrix, lam)
    ksq = (2.0 * model.mass / model.hbar**2) * lam
    momentum = _momentum_from_ksq(ksq, signs)
    scale = max(1.0, abs(lam))
    res = eigen_residual(momentum, y0, energy, model, which)
    if res > _CONSTRUCTION_GUARD * scale:
        raise ArithmeticError(
            f"eigen residual {res:.3e} exceeds construction guard for {which} "
            f"dispersion at E={energy}, U1={model.u1}")
    return momentum, y0


def quat_dispersion_left(energy: complex, model: CavityModel,
                         signs: BranchChoice = BranchChoice()) -> tuple[complex, complex]:
    """(K, Y0) for the wave equation with i multiplying d/dt from the left."""
    return _quat_dispersion(energy, model, signs, "left")


def quat_dispersion_right(energy: complex, model: CavityModel,
                          signs: BranchChoice = BranchChoice()) -> tuple[complex, complex]:
    """(K, Y0) for the wave equation with i multiplying d/dt from the right."""
    return _quat_dispersion(energy, model, signs, "right")


def constraint_residuals(momentum: complex, energy: complex,
                         model: CavityModel) -> tuple[float, float]:
    """Relative residuals of the two real complex-case constraints."""
    coef = 2.0 * model.mass / model.hbar**2
    k0, k1 = momentum.real, momentum.imag
    lhs1 = k0 * k0 - k1 * k1
    rhs1 = coef * (model.v0 - energy.imag)
    lhs2 = 2.0 * k0 * k1
    rhs2 = coef * (model.v1 + energy.real)
    scale1 = max(1.0, abs(lhs1), abs(rhs1))
    scale2 = max(1.0, abs(lhs2), abs(rhs2))
    return abs(lhs1 - rhs1) / scale1, abs(lhs2 - rhs2) / scale2


def brute_force_eigenvalues(energy: complex, model: CavityModel,
                            which: str) -> tuple[complex, complex]:
    """Quadratic-formula eigenvalues of the coupling matrix, as an oracle."""
    (m00, m01), (m10, m11) = coupling_matrix(energy, model, which)
    half_tr = (m00 + m11) / 2.0
    disc = cmath.sqrt(half_tr * half_tr - (m00 * m11 - m01 * m10))
    return half_tr - disc, half_tr + disc
