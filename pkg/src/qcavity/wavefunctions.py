"""Analytic wave-function families of the deep cavity and their quaternionic lifts.

Every family reduces to the canonical two-exponential form

    psi(x, t) = (A exp(K x) + B exp(-K x)) exp(-(E/hbar) t)

with complex A, B, K, E, which makes evaluation, differentiation and the
eigenfunction property psi'' = K^2 psi exact to rounding.  The families:

* kind "I":   quantized trig states, K = i N pi / ell, amplitude sqrt(2/ell);
              cosine for odd N, sine for even N, vanishing at the walls.
* kind "II":  distorted quantized states cos(Theta) e^{i(N pi x/ell + Omega/2)}
              + sin(Theta) e^{-i(...)}, exactly unit normalized for all
              Theta, Omega.
* kind "III": single non-quantized states, A = +-B, in propagating
              (K real part zero), evanescent (imaginary part zero) and
              combined flavors.
* kind "phase_twisted": psi(-ell/2) = psi(ell/2) exp(i omega) states.

Printed closed-form normalization constants for kind III are treated as
claims: normalization is always done by quadrature and the report carries
the ratio against the claim (several printed constants are wrong, e.g.
hyperbolic-regime constants written with the oscillatory wavenumber).

A quaternionic lift multiplies a family by the unit factor
(1 + Y0 j)/sqrt(1 + |Y0|^2), giving symplectic components
(c psi, c Y0 conj(psi)).  The lift changes no density and no boundary
residual; it changes which coupled wave equation the state solves.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from . import dispersion, spectra
from .algebra import Quaternion
from .model import (BranchChoice, CavityModel, DegenerateNormError,
                    DomainError, IncompatibleFamiliesError)
from .oracle.quadrature import quadrature

_BOUNDARY_SLOP = 1e-12


@dataclass(frozen=True)
class SolutionFamily:
    kind: str
    model: CavityModel
    energy: complex
    momentum: complex
    coef_plus: complex
    coef_minus: complex
    n: int | None = None
    parity: str | None = None
    theta: float | None = None
    omega: float | None = None
    twist: float | None = None

    # families are complex states; lifts override this
    equation = "complex"

    # -- evaluation ---------------------------------------------------------

    def _inside(self, x, strict):
        x = np.asarray(x, dtype=float)
        half = 0.5 * self.model.ell
        inside = np.abs(x) <= half * (1.0 + _BOUNDARY_SLOP) + _BOUNDARY_SLOP
        if strict and not np.all(inside):
            raise DomainError("point outside the cavity in strict mode")
        return x, inside

    def spatial(self, x, strict=False):
        """A exp(K x) + B exp(-K x), zero outside the box."""
        x, inside = self._inside(x, strict)
        kx = self.momentum * x
        val = self.coef_plus * np.exp(kx) + self.coef_minus * np.exp(-kx)
        return np.where(inside, val, 0.0)

    def spatial_dx(self, x, strict=False):
        x, inside = self._inside(x, strict)
        kx = self.momentum * x
        val = self.momentum * (self.coef_plus * np.exp(kx)
                               - self.coef_minus * np.exp(-kx))
        return np.where(inside, val, 0.0)

    def time_factor(self, t):
        return np.exp(-(self.energy / self.model.hbar) * np.asarray(t))

    def psi(self, x, t=0.0, strict=False):
        return self.spatial(x, strict) * self.time_factor(t)

    def psi_dx(self, x, t=0.0):
        return self.spatial_dx(x) * self.time_factor(t)

    def psi_dxx(self, x, t=0.0):
        return self.momentum**2 * self.psi(x, t)

    def psi_dt(self, x, t=0.0):
        return -(self.energy / self.model.hbar) * self.psi(x, t)

    def density(self, x, t=0.0):
        return np.abs(self.psi(x, t)) ** 2

    # -- uniform two-component protocol shared with QuatLift ------------------

    def pair(self, x, t=0.0):
        u0 = self.psi(x, t)
        return u0, np.zeros_like(u0)

    def pair_dx(self, x, t=0.0):
        u0 = self.psi_dx(x, t)
        return u0, np.zeros_like(u0)

    def pair_dxx(self, x, t=0.0):
        u0 = self.psi_dxx(x, t)
        return u0, np.zeros_like(u0)

    def pair_dt(self, x, t=0.0):
        u0 = self.psi_dt(x, t)
        return u0, np.zeros_like(u0)


@dataclass(frozen=True)
class QuatLift:
    """A family times the unit quaternionic factor (1 + Y0 j)/sqrt(1+|Y0|^2)."""

    base: SolutionFamily
    y0: complex
    equation: str = "left"

    def __post_init__(self):
        if self.equation not in ("left", "right"):
            raise ValueError("equation must be 'left' or 'right'")

    @property
    def model(self) -> CavityModel:
        return self.base.model

    @property
    def energy(self) -> complex:
        return self.base.energy

    @property
    def momentum(self) -> complex:
        return self.base.momentum

    @property
    def unit_factor(self) -> float:
        return 1.0 / math.sqrt(1.0 + abs(self.y0) ** 2)

    def _split(self, value):
        c = self.unit_factor
        return c * value, c * self.y0 * np.conj(value)

    def pair(self, x, t=0.0):
        return self._split(self.base.psi(x, t))

    def pair_dx(self, x, t=0.0):
        return self._split(self.base.psi_dx(x, t))

    def pair_dxx(self, x, t=0.0):
        return self._split(self.base.psi_dxx(x, t))

    def pair_dt(self, x, t=0.0):
        return self._split(self.base.psi_dt(x, t))

    def density_ratio(self) -> float:
        """rho / varrho = (1 - |Y0|^2) / (1 + |Y0|^2), constant in space."""
        a = abs(self.y0) ** 2
        return (1.0 - a) / (1.0 + a)


# -- spec-level evaluation entry points ---------------------------------------

def eval_psi(sol: SolutionFamily, x: float, t: float = 0.0,
             strict: bool = False) -> complex:
    return complex(sol.psi(np.array([float(x)]), t, strict=strict)[0])


def eval_quat_psi(lift: QuatLift, x: float, t: float = 0.0,
                  strict: bool = False) -> Quaternion:
    base = lift.base.psi(np.array([float(x)]), t, strict=strict)[0]
    c = lift.unit_factor
    return Quaternion.from_pair(c * base, c * lift.y0 * np.conj(base))


# -- construction helpers ------------------------------------------------------

def _fix_global_phase(a: complex, b: complex) -> tuple[complex, complex]:
    """Rotate so the exp(+Kx) coefficient is real positive (or B if A = 0)."""
    ref = a if abs(a) > 0.0 else b
    if abs(ref) == 0.0:
        return a, b
    rot = abs(ref) / ref
    return a * rot, b * rot


def _quantized_momentum(model: CavityModel, n: int) -> complex:
    if n < 1:
        raise ValueError("quantum number must be >= 1")
    return 1j * (n * math.pi / model.ell)


def kind_i(model: CavityModel, n: int) -> SolutionFamily:
    """Textbook quantized state: sqrt(2/ell) cos or sin of N pi x / ell."""
    model.require_complex()
    momentum = _quantized_momentum(model, n)
    amp = 0.5 * math.sqrt(2.0 / model.ell)
    parity = "even" if n % 2 == 1 else "odd"
    coef_plus, coef_minus = (amp, amp) if parity == "even" else (amp, -amp)
    energy = complex(-model.v1, spectra.complex_level(model, n))
    return SolutionFamily("I", model, energy, momentum, coef_plus, coef_minus,
                          n=n, parity=parity)


def kind_ii(model: CavityModel, n: int, theta: float, omega: float) -> SolutionFamily:
    """Distorted quantized state; unit normalized for every Theta, Omega."""
    model.require_complex()
    if abs(math.sin(theta)) < 1e-15 or abs(math.cos(theta)) < 1e-15:
        raise ValueError("kind II requires sin(Theta) != 0 and cos(Theta) != 0")
    momentum = _quantized_momentum(model, n)
    root = 1.0 / math.sqrt(model.ell)
    half = 0.5 * omega
    coef_plus = math.cos(theta) * complex(math.cos(half), math.sin(half)) * root
    coef_minus = math.sin(theta) * complex(math.cos(half), -math.sin(half)) * root
    energy = complex(-model.v1, spectra.complex_level(model, n))
    return SolutionFamily("II", model, energy, momentum, coef_plus, coef_minus,
                          n=n, theta=theta, omega=omega)


def _shaped_family(kind, model, energy, momentum, parity, **extra) -> SolutionFamily:
    amp = 0.5
    coef_plus, coef_minus = (amp, amp) if parity == "even" else (amp, -amp)
    coef_plus, coef_minus = _fix_global_phase(coef_plus, coef_minus)
    raw = SolutionFamily(kind, model, energy, momentum, coef_plus, coef_minus,
                         parity=parity, **extra)
    sol, _ = normalize(raw)
    return sol


def kind_iii_propagating(model: CavityModel, e1: float, parity: str) -> SolutionFamily:
    """Non-quantized oscillatory state; needs V0 < E1 and E0 = -V1."""
    model.require_complex()
    if not model.v0 < e1:
        raise ValueError("propagating case requires V0 < E1")
    energy = complex(-model.v1, e1)
    momentum = dispersion.complex_dispersion(energy, model)
    return _shaped_family("III_prop", model, energy, momentum, parity)


def kind_iii_evanescent(model: CavityModel, e1: float, parity: str) -> SolutionFamily:
    """Non-quantized hyperbolic state; needs E1 < V0 and E0 = -V1."""
    model.require_complex()
    if not e1 < model.v0:
        raise ValueError("evanescent case requires E1 < V0")
    energy = complex(-model.v1, e1)
    momentum = dispersion.complex_dispersion(energy, model)
    return _shaped_family("III_evan", model, energy, momentum, parity)


def kind_iii_combined(model: CavityModel, energy: complex, parity: str,
                      signs: BranchChoice = BranchChoice()) -> SolutionFamily:
    """Non-quantized state with fully complex momentum; needs V1 + E0 != 0."""
    model.require_complex()
    if abs(model.v1 + energy.real) <= dispersion.REGIME_TOL:
        raise ValueError("combined case requires V1 + E0 != 0")
    momentum = dispersion.complex_dispersion(energy, model, signs)
    return _shaped_family("III_combined", model, energy, momentum, parity)


def phase_generalized(model: CavityModel, energy: complex, twist: float,
                      signs: BranchChoice = BranchChoice()) -> SolutionFamily:
    """State obeying psi(-ell/2) = psi(ell/2) exp(i twist).

    The two-term exponential combination satisfies that condition
    identically in the momentum, which is taken to solve the dispersion
    relation (the undetermined symbol in the printed spatial form is read
    as the momentum K).
    """
    model.require_complex()
    momentum = dispersion.complex_dispersion(energy, model, signs)
    half = 0.5 * model.ell
    phase = complex(math.cos(twist), math.sin(twist))
    edge_minus = np.exp(-momentum * half)
    edge_plus = np.exp(momentum * half)
    coef_plus = phase * edge_minus - edge_plus
    coef_minus = edge_minus - phase * edge_plus
    coef_plus, coef_minus = _fix_global_phase(complex(coef_plus), complex(coef_minus))
    raw = SolutionFamily("phase_twisted", model, energy, momentum,
                         coef_plus, coef_minus, twist=twist)
    sol, _ = normalize(raw)
    return sol


def two_exponential(model: CavityModel, energy: complex, momentum: complex,
                    coef_plus: complex, coef_minus: complex,
                    kind: str = "custom") -> SolutionFamily:
    """Low-level constructor; no dispersion or normalization is enforced."""
    return SolutionFamily(kind, model, energy, momentum, coef_plus, coef_minus)


# -- normalization -------------------------------------------------------------

@dataclass(frozen=True)
class NormalizationReport:
    quadrature_norm: float
    quadrature_constant: float | None
    claimed_constant: float | None
    claimed_repaired: float | None
    ratio: float | None
    ratio_repaired: float | None


def _printed_constant(sol: SolutionFamily):
    """The paper's normalization prefactor, evaluated literally.

    Returns (claimed, repaired) where repaired swaps the obviously wrong
    wavenumber in the hyperbolic constants (K1 where the regime forces
    K1 = 0), or None where no printed claim exists.
    """
    ell = sol.model.ell
    k0, k1 = sol.momentum.real, sol.momentum.imag

    def safe(num, den):
        if den <= 0 or num <= 0:
            return float("nan")
        return math.sqrt(num / den)

    if sol.kind == "I":
        return math.sqrt(2.0 / ell), None
    if sol.kind == "II":
        return 1.0 / math.sqrt(ell), None
    if sol.kind == "III_prop":
        if sol.parity == "even":
            return safe(2.0 * k1, k1 * ell + math.sin(k1 * ell)), None
        return safe(2.0 * k1, k1 * ell + math.cos(k1 * ell)), None
    if sol.kind == "III_evan":
        if sol.parity == "even":
            claimed = safe(2.0 * k1, k1 * ell + math.sinh(k1 * ell))
            repaired = safe(2.0 * k0, k0 * ell + math.sinh(k0 * ell))
        else:
            claimed = safe(2.0 * k1, k1 * ell + math.cosh(k1 * ell))
            repaired = safe(2.0 * k0, k0 * ell + math.cosh(k0 * ell))
        return claimed, repaired
    if sol.kind == "III_combined":
        if sol.parity == "even":
            den = math.sin(0.5 * k1 * ell) + math.sinh(0.5 * k0 * ell)
        else:
            den = math.cos(0.5 * k1 * ell) + math.cosh(0.5 * k0 * ell)
        if den <= 0:
            return float("nan"), None
        return 1.0 / (2.0 * math.sqrt(den)), None
    return None, None


def _shape_amplitude(sol: SolutionFamily) -> float | None:
    """|amplitude| of the trig/hyperbolic shape the printed constants scale.

    cos/cosh shapes have amplitude 2|A| (A = B), sin/sinh shapes 2|A|
    (A = -B); the combined bracket e^{Kx} +- e^{-Kx} has amplitude |A|.
    Kind II scales the whole two-term bracket by 1/sqrt(ell).
    """
    if sol.kind in ("I", "III_prop", "III_evan"):
        return 2.0 * abs(sol.coef_plus)
    if sol.kind == "III_combined":
        return abs(sol.coef_plus)
    if sol.kind == "II":
        return math.hypot(abs(sol.coef_plus), abs(sol.coef_minus))
    return None


def normalize(sol: SolutionFamily, tol: float = 1e-13
              ) -> tuple[SolutionFamily, NormalizationReport]:
    """Scale amplitudes so the t = 0 spatial density integrates to one.

    Quadrature is authoritative; the printed closed-form constant (where
    one exists) is evaluated and reported as a ratio, never trusted.
    """
    half = 0.5 * sol.model.ell
    norm_sq, _ = quadrature(lambda x: np.abs(sol.spatial(x)) ** 2,
                            -half, half, tol=tol)
    norm = math.sqrt(max(norm_sq, 0.0))
    if norm < 1e-14:
        raise DegenerateNormError(
            f"quadrature norm {norm:.3e} is numerically zero for kind {sol.kind}")
    scaled = dataclasses.replace(sol,
                                 coef_plus=sol.coef_plus / norm,
                                 coef_minus=sol.coef_minus / norm)
    claimed, repaired = _printed_constant(scaled)
    measured = _shape_amplitude(scaled)

    def _ratio(claim):
        if claim is None or measured is None:
            return None
        if not math.isfinite(claim) or claim == 0.0:
            return float("nan")
        return measured / claim

    report = NormalizationReport(
        quadrature_norm=norm,
        quadrature_constant=measured,
        claimed_constant=claimed,
        claimed_repaired=repaired,
        ratio=_ratio(claimed),
        ratio_repaired=_ratio(repaired),
    )
    return scaled, report


# -- boundary conditions ---------------------------------------------------------

@dataclass(frozen=True)
class BoundaryResiduals:
    symmetric: float
    antisymmetric: float
    density: float


def boundary_residual(sol: SolutionFamily) -> BoundaryResiduals:
    """(|psi(-l/2) - psi(l/2)|, |psi(-l/2) + psi(l/2)|, ||.|^2 difference|) at t = 0."""
    half = 0.5 * sol.model.ell
    edges = sol.spatial(np.array([-half, half]))
    left, right = complex(edges[0]), complex(edges[1])
    return BoundaryResiduals(
        symmetric=abs(left - right),
        antisymmetric=abs(left + right),
        density=abs(abs(left) ** 2 - abs(right) ** 2),
    )


def orthogonality(sol_a: SolutionFamily, sol_b: SolutionFamily,
                  tol: float = 1e-12) -> float:
    """Real inner product of the spatial parts, Re integral conj(phi_a) phi_b."""
    if sol_a.kind != sol_b.kind or sol_a.kind not in ("I", "II"):
        raise IncompatibleFamiliesError(
            "orthogonality is defined for pairs of kind I or kind II families")
    if sol_a.kind == "II":
        same = (math.isclose(sol_a.theta, sol_b.theta, rel_tol=0, abs_tol=1e-14)
                and math.isclose(sol_a.omega, sol_b.omega, rel_tol=0, abs_tol=1e-14))
        if not same:
            raise IncompatibleFamiliesError(
                "kind II orthogonality requires equal distortion parameters")
    if sol_a.model.ell != sol_b.model.ell:
        raise IncompatibleFamiliesError("families live on different cavities")
    half = 0.5 * sol_a.model.ell
    value, _ = quadrature(
        lambda x: np.real(np.conj(sol_a.spatial(x)) * sol_b.spatial(x)),
        -half, half, tol=tol)
    return value


# -- quaternionic lifts ----------------------------------------------------------

def lift(base: SolutionFamily, y0: complex, equation: str = "left") -> QuatLift:
    return QuatLift(base, y0, equation)


def _requantize(sol: SolutionFamily, energy: complex, momentum: complex
                ) -> SolutionFamily:
    return dataclasses.replace(sol, energy=energy, momentum=momentum)


def lift_quantized(model: CavityModel, n: int, equation: str = "left",
                   inner_sign: int = -1, theta: float | None = None,
                   omega: float = 0.0) -> QuatLift:
    """Quaternionic lift of a quantized family (kind I, or kind II if theta given).

    For the left equation the levels are E1(N) = sqrt(E_N^2 + |U1|^2) with
    a time-stationary state; for the right equation the oscillation energy
    stays E_N but E0 = -inner_sign * sqrt(V1^2 + |U1|^2) forces decay or
    growth in time.
    """
    if equation == "left":
        energy = complex(-model.v1, spectra.quat_level(model, n))
    else:
        root = math.hypot(model.v1, abs(model.u1))
        energy = complex(-inner_sign * root, spectra.complex_level(model, n))
    signs = BranchChoice(inner_sign=inner_sign)
    momentum, y0 = (dispersion.quat_dispersion_left(energy, model, signs)
                    if equation == "left"
                    else dispersion.quat_dispersion_right(energy, model, signs))
    target = _quantized_momentum(model, n)
    if abs(momentum - target) > 1e-8 * max(1.0, abs(target)):
        raise ArithmeticError(
            f"quantized lift expected K = {target}, dispersion gave {momentum}")
    complex_model = dataclasses.replace(model, w0=0.0, w1=0.0)
    if theta is None:
        base = kind_i(complex_model, n)
    else:
        base = kind_ii(complex_model, n, theta, omega)
    base = dataclasses.replace(base, model=model)
    return QuatLift(_requantize(base, energy, target), y0, equation)


def lift_stationary_left(model: CavityModel, e1: float, parity: str,
                         inner_sign: int = -1) -> QuatLift:
    """Non-quantized left-equation lift with steady density (E0 = -V1)."""
    energy = complex(-model.v1, e1)
    momentum, y0 = dispersion.quat_dispersion_left(
        energy, model, BranchChoice(inner_sign=inner_sign))
    kind = _kind_from_momentum(momentum)
    base = _shaped_family(kind, model, energy, momentum, parity)
    return QuatLift(base, y0, "left")


def lift_combined(model: CavityModel, energy: complex, parity: str,
                  equation: str = "left",
                  signs: BranchChoice = BranchChoice()) -> QuatLift:
    """Lift with arbitrary complex energy; momentum from the selected equation."""
    if equation == "left":
        momentum, y0 = dispersion.quat_dispersion_left(energy, model, signs)
    else:
        momentum, y0 = dispersion.quat_dispersion_right(energy, model, signs)
    kind = _kind_from_momentum(momentum)
    base = _shaped_family(kind, model, energy, momentum, parity)
    return QuatLift(base, y0, equation)


def _kind_from_momentum(momentum: complex) -> str:
    if momentum.real == 0.0:
        return "III_prop"
    if momentum.imag == 0.0:
        return "III_evan"
    return "III_combined"


# -- serialization ---------------------------------------------------------------

def _c(z: complex) -> list[float]:
    return [z.real, z.imag]


def family_to_dict(sol: SolutionFamily) -> dict:
    return {
        "kind": sol.kind,
        "model": dataclasses.asdict(sol.model),
        "energy": _c(sol.energy),
        "momentum": _c(sol.momentum),
        "coef_plus": _c(sol.coef_plus),
        "coef_minus": _c(sol.coef_minus),
        "n": sol.n,
        "parity": sol.parity,
        "theta": sol.theta,
        "omega": sol.omega,
        "twist": sol.twist,
    }


def family_from_dict(data: dict) -> SolutionFamily:
    return SolutionFamily(
        kind=data["kind"],
        model=CavityModel(**data["model"]),
        energy=complex(*data["energy"]),
        momentum=complex(*data["momentum"]),
        coef_plus=complex(*data["coef_plus"]),
        coef_minus=complex(*data["coef_minus"]),
        n=data.get("n"),
        parity=data.get("parity"),
        theta=data.get("theta"),
        omega=data.get("omega"),
        twist=data.get("twist"),
    )


def lift_to_dict(state: QuatLift) -> dict:
    return {"base": family_to_dict(state.base), "y0": _c(state.y0),
            "equation": state.equation}


def lift_from_dict(data: dict) -> QuatLift:
    return QuatLift(family_from_dict(data["base"]), complex(*data["y0"]),
                    data["equation"])
