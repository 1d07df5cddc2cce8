"""Quantized energy levels of the complex and self-interacting cavities.

The complex levels are E_N = hbar^2 pi^2 N^2 / (2 m ell^2) + V0.  With
self-interaction the quantization K1 = N pi / ell combines with the
coupled dispersion relation to give E1(N) = sqrt(E_N^2 + |U1|^2):
levels are pushed up and their differences compressed, and no constant
quantum of energy exists, although the squared-level differences at
V0 = 0 are integer multiples of the squared complex quantum.

quat_level_brute_force inverts the coupled dispersion relation
numerically and serves as the independent check of the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .model import BranchChoice, CavityModel


def complex_level(model: CavityModel, n: int) -> float:
    if n < 1:
        raise ValueError("level index must be >= 1")
    return (model.hbar * math.pi * n) ** 2 / (2.0 * model.mass * model.ell**2) \
        + model.v0


def quat_level(model: CavityModel, n: int) -> float:
    return math.hypot(complex_level(model, n), abs(model.u1))


@dataclass(frozen=True)
class Level:
    n: int
    e_complex: float
    e_quat: float


def levels(model: CavityModel, n_max: int) -> list[Level]:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return [Level(n, complex_level(model, n), quat_level(model, n))
            for n in range(1, n_max + 1)]


def level_gap(level_list: list[Level], n: int, m: int) -> tuple[float, float, float]:
    """(E_N - E_M, E1(N) - E1(M), E1(N)^2 - E1(M)^2)."""
    if not n >= m >= 1:
        raise ValueError("need N >= M >= 1")
    by_n = {lev.n: lev for lev in level_list}
    ln, lm = by_n[n], by_n[m]
    return (ln.e_complex - lm.e_complex,
            ln.e_quat - lm.e_quat,
            ln.e_quat**2 - lm.e_quat**2)


def spectrum_report(model: CavityModel, n_max: int) -> dict:
    """JSON-ready spectrum report with gaps relative to the previous level."""
    table = levels(model, n_max)
    rows = []
    prev = None
    for lev in table:
        rows.append({
            "n": lev.n,
            "e_complex": lev.e_complex,
            "e_quat": lev.e_quat,
            "gap": None if prev is None else lev.e_quat - prev.e_quat,
            "sq_gap": None if prev is None else lev.e_quat**2 - prev.e_quat**2,
        })
        prev = lev
    return {
        "schema_version": 1,
        "model": {"ell": model.ell, "mass": model.mass, "hbar": model.hbar,
                  "v0": model.v0, "v1": model.v1, "w0": model.w0,
                  "w1": model.w1},
        "levels": rows,
    }


def quat_level_brute_force(model: CavityModel, n: int) -> float:
    """E1(N) by root finding on the coupled dispersion relation.

    Finds the oscillation energy at which the stationary branch of the
    left-equation momentum hits K1 = N pi / ell, without using the
    closed-form level expression.
    """
    from . import dispersion  # local import keeps module load cheap

    if model.v0 < 0:
        raise ValueError("brute-force inversion assumes V0 >= 0")
    target = n * math.pi / model.ell
    signs = BranchChoice(inner_sign=-1)

    def gap(e1: float) -> float:
        momentum = dispersion.quat_dispersion_left(
            complex(-model.v1, e1), model, signs)[0]
        return momentum.imag - target

    lo = abs(model.u1) + 1e-12
    hi = max(2.0 * quat_level(model, n), lo * 2.0 + 1.0)
    while gap(hi) <= 0.0:
        hi *= 2.0
    return brentq(gap, lo, hi, xtol=1e-14, rtol=8.9e-16)
