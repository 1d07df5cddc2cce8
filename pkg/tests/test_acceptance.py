"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as the
criteria execute.  Every tolerance is pinned here; nothing is deferred.
"""

import dataclasses
import math
import time

import numpy as np
import pytest

from qcavity import wavefunctions as wf
from qcavity.dispersion import (complex_dispersion, constraint_residuals,
                                eigen_residual, quat_dispersion_left,
                                quat_dispersion_right)
from qcavity.model import BranchChoice, CavityModel
from qcavity.observables import (OperatorTag, energy_conservation_residual,
                                 real_inner, solution_ii_position)
from qcavity.oracle import (convergence_study, evolve_family,
                            richardson_dirichlet_eigs)
from qcavity.spectra import (complex_level, level_gap, levels, quat_level,
                             quat_level_brute_force)

PI_BOX = CavityModel()


def report(index, description, passed):
    print(f"ACCEPTANCE {index}: {'PASS' if passed else 'FAIL'} - {description}")
    assert passed, f"criterion {index} failed: {description}"


def complex_family_roster():
    base = CavityModel(v1=-0.1)
    evan = CavityModel(v0=3.0, v1=-0.1)
    comb = CavityModel(v1=0.4)
    return [
        wf.kind_i(base, 1),
        wf.kind_i(base, 2),
        wf.kind_ii(base, 1, 0.6, 1.1),
        wf.kind_iii_propagating(base, 1.3, "even"),
        wf.kind_iii_propagating(base, 1.3, "odd"),
        wf.kind_iii_evanescent(evan, 1.2, "even"),
        wf.kind_iii_evanescent(evan, 1.2, "odd"),
        wf.kind_iii_combined(comb, complex(0.2, 1.7), "even"),
        wf.kind_iii_combined(comb, complex(0.2, 1.7), "odd"),
        wf.phase_generalized(base, complex(0.1, 1.3), 0.9),
    ]


def lift_roster():
    left = CavityModel(w0=0.8)
    tilt = CavityModel(v1=0.2, w0=0.5, w1=0.3)
    return [
        wf.lift_quantized(left, 1, "left"),
        wf.lift_quantized(left, 2, "left"),
        wf.lift_quantized(left, 1, "left", theta=0.7, omega=0.5),
        wf.lift_quantized(tilt, 1, "right", inner_sign=+1),
        wf.lift_quantized(tilt, 2, "right", inner_sign=-1),
        wf.lift_stationary_left(CavityModel(w0=1.0), 2.0, "even"),
        wf.lift_stationary_left(CavityModel(v0=3.0, w0=1.0), 1.5, "odd"),
        wf.lift_combined(tilt, complex(0.3, 1.6), "even", "left"),
        wf.lift_combined(tilt, complex(0.3, 1.6), "odd", "right"),
    ]


def test_acceptance_01_constraint_closure():
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        e0, e1, v0, v1 = rng.uniform(-5.0, 5.0, size=4)
        model = CavityModel(v0=v0, v1=v1)
        energy = complex(e0, e1)
        momentum = complex_dispersion(energy, model)
        worst = max(worst, *constraint_residuals(momentum, energy, model))
    elapsed = time.perf_counter() - start
    report(1, f"1000 random draws, worst relative constraint residual "
              f"{worst:.2e} < 1e-11, runtime {elapsed:.2f}s < 1s",
           worst < 1e-11 and elapsed < 1.0)


def test_acceptance_02_spectrum_oracle():
    start = time.perf_counter()
    worst = 0.0
    for v0 in (0.0, 3.0):
        model = CavityModel(v0=v0)
        eigs = richardson_dirichlet_eigs(model, 5, 1000)
        for n, val in enumerate(eigs, start=1):
            worst = max(worst, abs(val - complex_level(model, n)))
    elapsed = time.perf_counter() - start
    report(2, f"Richardson grid eigenvalues vs levels (N<=5, V0 in {{0,3}}), "
              f"worst {worst:.2e} < 1e-6, runtime {elapsed:.1f}s < 30s",
           worst < 1e-6 and elapsed < 30.0)


def test_acceptance_03_quaternionic_eigenproblem():
    rng = np.random.default_rng(103)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        e0, e1, v0, v1 = rng.uniform(-3.0, 3.0, size=4)
        w0, w1 = rng.uniform(0.15, 2.0, size=2) * rng.choice([-1, 1], size=2)
        model = CavityModel(v0=v0, v1=v1, w0=w0, w1=w1)
        energy = complex(e0, e1)
        for which, solver in (("left", quat_dispersion_left),
                              ("right", quat_dispersion_right)):
            for sign in (+1, -1):
                momentum, y0 = solver(energy, model,
                                      BranchChoice(inner_sign=sign))
                worst = max(worst, eigen_residual(momentum, y0, energy,
                                                  model, which))
    elapsed = time.perf_counter() - start
    report(3, f"200 random (E, U), both equations and branches, worst "
              f"eigen-residual {worst:.2e} < 1e-10, runtime {elapsed:.2f}s < 1s",
           worst < 1e-10 and elapsed < 1.0)


def test_acceptance_04_quaternionic_spectrum():
    worst_level = 0.0
    for u1 in (0.5, 1.0, 2.0):
        model = CavityModel(w0=u1)
        for n in range(1, 21):
            closed = quat_level(model, n)
            brute = quat_level_brute_force(model, n)
            worst_level = max(worst_level, abs(closed - brute) / closed)
    quantum = 0.5  # hbar^2 pi^2 / (2 m ell^2) in working units
    table = levels(CavityModel(w0=1.5), 50)
    worst_gap = 0.0
    for n in range(2, 51):
        for m in range(1, n):
            _, _, sq = level_gap(table, n, m)
            target = (n**4 - m**4) * quantum**2
            worst_gap = max(worst_gap, abs(sq - target) / target)
    report(4, f"closed levels vs brute-force inversion (N<=20, 3 couplings) "
              f"{worst_level:.2e} < 1e-10; squared-gap identity at V0=0 "
              f"(N,M<=50) {worst_gap:.2e} < 1e-10",
           worst_level < 1e-10 and worst_gap < 1e-10)


def test_acceptance_05_orthogonality():
    start = time.perf_counter()
    fams = [wf.kind_i(PI_BOX, n) for n in range(1, 21)]
    worst = 0.0
    for i, fa in enumerate(fams):
        for fb in fams[i:]:
            val = wf.orthogonality(fa, fb)
            target = 1.0 if fa.n == fb.n else 0.0
            worst = max(worst, abs(val - target))
    elapsed = time.perf_counter() - start
    report(5, f"kind I pairs N,M <= 20, worst |<phi_N, phi_M> - delta| "
              f"{worst:.2e} < 1e-10, runtime {elapsed:.1f}s < 5s",
           worst < 1e-10 and elapsed < 5.0)


def test_acceptance_06_solution_ii_position():
    model = CavityModel(ell=1.0, v1=-0.1)
    thetas = np.linspace(0.15, 1.35, 5)
    omegas = np.linspace(0.3, 2.8, 5)
    worst = 0.0
    bound_ok = True
    for n in range(1, 6):
        for theta in thetas:
            for omega in omegas:
                sol = wf.kind_ii(model, n, float(theta), float(omega))
                for t in (0.0, 0.6):
                    quad = real_inner(sol, sol, OperatorTag.POSITION, t,
                                      tol=1e-12)
                    closed = solution_ii_position(model, n, float(theta),
                                                  float(omega), t)
                    worst = max(worst, abs(quad - closed) / abs(closed))
                at_zero = solution_ii_position(model, n, float(theta),
                                               float(omega))
                bound_ok = bound_ok and abs(at_zero) < model.ell / (2 * n * math.pi)
    report(6, f"5x5x5 (N, Theta, Omega) grid, quadrature vs closed form "
              f"worst rel {worst:.2e} < 1e-9; bound |<x>| < l/(2 N pi) "
              f"{'holds' if bound_ok else 'violated'}",
           worst < 1e-9 and bound_ok)


def test_acceptance_07_conservation():
    worst = 0.0
    for sol in complex_family_roster():
        for t in np.linspace(0.0, 0.9, 10):
            worst = max(worst, energy_conservation_residual(sol, float(t)))
    report(7, f"energy conservation for all complex families at 10 times, "
              f"worst residual {worst:.2e} < 1e-10 (incl. negative kinetic "
              f"energy)", worst < 1e-10)


def test_acceptance_08_pde_residuals():
    start = time.perf_counter()
    worst_lo, worst_hi = 2.0, 2.0
    all_monotone = True
    for state in complex_family_roster() + lift_roster():
        reports, orders = convergence_study(state, t=0.4)
        residuals = [r.l2_residual for r in reports]
        all_monotone = all_monotone and all(
            a > b for a, b in zip(residuals, residuals[1:]))
        worst_lo = min(worst_lo, *orders)
        worst_hi = max(worst_hi, *orders)
    elapsed = time.perf_counter() - start
    ok = 1.8 <= worst_lo and worst_hi <= 2.2 and all_monotone \
        and elapsed < 120.0
    report(8, f"all families (complex + both lifts): convergence orders in "
              f"[{worst_lo:.3f}, {worst_hi:.3f}] within [1.8, 2.2], residuals "
              f"monotone, runtime {elapsed:.1f}s < 120s", ok)


def test_acceptance_09_evolution_cross_check():
    sol = wf.kind_i(PI_BOX, 1)
    res = evolve_family(sol, 1.0, 2000, 2000)
    decay = wf.kind_i(CavityModel(v1=-0.1), 1)
    res_decay = evolve_family(decay, 1.0, 2000, 2000)
    norm_err = abs(res_decay.norm_ratio - math.exp(-0.2))
    ok = res.max_deviation < 1e-6 and norm_err < 1e-4
    report(9, f"implicit stepper at 2000x2000: max deviation "
              f"{res.max_deviation:.2e} < 1e-6; norm trajectory error "
              f"{norm_err:.2e} < 1e-4 for V1=-0.1", ok)


def test_acceptance_10_limit_recovery():
    tiny = CavityModel(w0=1e-8)
    plain = CavityModel()
    energy = complex(0.3, 1.7)
    k_err = abs(quat_dispersion_left(energy, tiny,
                                     BranchChoice(inner_sign=-1))[0]
                - complex_dispersion(energy, plain))
    level_err = max(abs(quat_level(tiny, n) - complex_level(plain, n))
                    for n in range(1, 11))
    lifted = wf.lift_quantized(tiny, 1, "left")
    complex_sol = wf.kind_i(plain, 1)
    obs_err = 0.0
    for op in (OperatorTag.ENERGY, OperatorTag.MOMENTUM_SQUARED,
               OperatorTag.IDENTITY):
        obs_err = max(obs_err, abs(
            real_inner(lifted, lifted, op) -
            real_inner(complex_sol, complex_sol, op)))
    worst = max(k_err, level_err, obs_err)
    report(10, f"|U1| = 1e-8: momentum, levels (N<=10) and observables match "
               f"the complex case within {worst:.2e} < 1e-6", worst < 1e-6)


def test_acceptance_11_negative_controls():
    model = CavityModel(ell=1.0, w0=1.0)
    momentum, y0 = quat_dispersion_left(2j, model, BranchChoice(inner_sign=-1))
    res_y = eigen_residual(momentum, y0 * (1 + 1e-3), 2j, model, "left")
    res_k = eigen_residual(momentum * (1 + 1e-3), y0, 2j, model, "left")

    lifted = wf.lift_quantized(CavityModel(w0=0.8), 1, "left")
    bad_lift = wf.QuatLift(lifted.base, lifted.y0 * (1 + 1e-3), "left")
    _, orders_y = convergence_study(bad_lift, t=0.3)
    sol = wf.kind_i(PI_BOX, 1)
    bad_sol = dataclasses.replace(sol, momentum=sol.momentum * (1 + 1e-3))
    _, orders_k = convergence_study(bad_sol, t=0.3)

    eigen_detects = res_y > 1e-6 and res_k > 1e-6
    pde_detects = any(o < 1.8 for o in orders_y) and any(
        o < 1.8 for o in orders_k)
    report(11, f"1e-3 perturbations detected: eigen-residuals "
               f"{res_y:.2e}/{res_k:.2e} > 1e-6; PDE convergence orders "
               f"collapse ({['%.2f' % o for o in orders_y]}, "
               f"{['%.2f' % o for o in orders_k]})",
           eigen_detects and pde_detects)
