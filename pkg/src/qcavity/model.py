"""Cavity model data: geometry, mass, and the constant scalar potential.

The potential inside the box is the quaternionic constant
U = U0 + U1*j with complex components U0 = V0 + V1*i and
U1 = W0 + W1*i.  Setting W0 = W1 = 0 restricts to the complex case.

Complex parameters follow one convention throughout the package:

* energy  E = E0 + E1*i, entering the time factor exp(-(E/hbar) t); the
  imaginary part E1 is the oscillation energy of a textbook stationary
  state, the real part E0 drives exponential decay or growth,
* momentum K = K0 + K1*i, entering exp(+-K x); K1 is the oscillatory
  wavenumber, K0 the evanescent rate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


@dataclass(frozen=True)
class CavityModel:
    ell: float = 3.141592653589793
    mass: float = 1.0
    hbar: float = 1.0
    v0: float = 0.0
    v1: float = 0.0
    w0: float = 0.0
    w1: float = 0.0

    def __post_init__(self):
        if not (self.ell > 0 and self.mass > 0 and self.hbar > 0):
            raise ValueError("ell, mass and hbar must be strictly positive")

    @property
    def u0(self) -> complex:
        return complex(self.v0, self.v1)

    @property
    def u1(self) -> complex:
        return complex(self.w0, self.w1)

    @property
    def is_complex(self) -> bool:
        """True when the coupling component U1 vanishes."""
        return self.w0 == 0.0 and self.w1 == 0.0

    def require_complex(self):
        if not self.is_complex:
            raise ValueError("operation requires a complex-case model (W0 = W1 = 0)")


@dataclass(frozen=True)
class BranchChoice:
    """Sign selectors for the multivalued momentum formulas.

    inner_sign picks between the two eigenvalues of the coupled 2x2
    problem (it also selects the +- branch inside the complex-case
    radicals, where it has no effect because those are single valued).
    k0_sign and k1_sign pick the square roots K0 = +-sqrt(K0^2) and
    K1 = +-sqrt(K1^2).  Whenever Im(K^2) != 0 the product 2*K0*K1 is
    fixed, so the sign of K1 follows from k0_sign and k1_sign is
    ignored.
    """

    inner_sign: int = +1
    k0_sign: int = +1
    k1_sign: int = +1

    def __post_init__(self):
        for name in ("inner_sign", "k0_sign", "k1_sign"):
            if getattr(self, name) not in (+1, -1):
                raise ValueError(f"{name} must be +1 or -1")


class Regime(enum.Enum):
    PROPAGATING = "propagating"
    NON_PROPAGATING = "non_propagating"
    COMBINED = "combined"
    PROPAGATING_DEGENERATE = "propagating_degenerate"


class ZeroCouplingError(ValueError):
    """Raised when a self-interaction formula is evaluated at U1 = 0."""


class DomainError(ValueError):
    """Raised in strict mode when a point lies outside the cavity."""


class DegenerateNormError(ValueError):
    """Raised when a wave function has (numerically) zero norm."""


class IncompatibleFamiliesError(ValueError):
    """Raised when an operation pairs solution families it is not defined for."""
