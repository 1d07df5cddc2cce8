"""Dispersion relations, regime classification and the coupled eigenproblems."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcavity.dispersion import (brute_force_eigenvalues, classify_regime,
                                complex_dispersion, constraint_residuals,
                                coupling_matrix, eigen_residual,
                                quat_dispersion_left, quat_dispersion_right)
from qcavity.model import BranchChoice, CavityModel, Regime, ZeroCouplingError

tidy = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False,
                 allow_infinity=False)


def numpy_eigen_oracle(energy, model, which):
    """Brute-force 2x2 eigensolve, independent of the closed forms."""
    mat = np.array(coupling_matrix(energy, model, which))
    vals, vecs = np.linalg.eig(mat)
    return mat, vals, vecs


class TestComplexDispersion:
    def test_pure_oscillatory(self):
        model = CavityModel(ell=1.0)
        k = complex_dispersion(2j, model)
        assert k == pytest.approx(2j, abs=1e-14)

    def test_pure_evanescent(self):
        model = CavityModel(ell=1.0, v0=5.0)
        k = complex_dispersion(2j, model)
        assert k == pytest.approx(complex(math.sqrt(6.0), 0.0), abs=1e-14)

    def test_combined_point_closes_constraints(self):
        model = CavityModel(v0=1.0, v1=0.5)
        k = complex_dispersion(complex(0.5, 2.0), model)
        r1, r2 = constraint_residuals(k, complex(0.5, 2.0), model)
        assert r1 < 1e-12 and r2 < 1e-12
        assert k.real != 0.0 and k.imag != 0.0

    def test_sign_selectors(self):
        model = CavityModel(v0=1.0, v1=0.5)
        energy = complex(0.5, 2.0)
        k_pp = complex_dispersion(energy, model, BranchChoice(k0_sign=+1))
        k_mm = complex_dispersion(energy, model, BranchChoice(k0_sign=-1))
        assert k_pp == -k_mm  # product constraint flips both together
        # sign coherence: sign(K0 K1) = sign(V1 + E0)
        assert math.copysign(1.0, k_pp.real * k_pp.imag) == math.copysign(
            1.0, model.v1 + energy.real)

    def test_rejects_coupled_model(self):
        with pytest.raises(ValueError):
            complex_dispersion(1j, CavityModel(w0=1.0))

    @given(tidy, tidy, tidy, tidy)
    @settings(max_examples=300)
    def test_constraint_closure_property(self, e0, e1, v0, v1):
        model = CavityModel(v0=v0, v1=v1)
        k = complex_dispersion(complex(e0, e1), model)
        r1, r2 = constraint_residuals(k, complex(e0, e1), model)
        assert r1 < 1e-11 and r2 < 1e-11


class TestRegime:
    def test_propagating(self):
        assert classify_regime(1j, CavityModel()) is Regime.PROPAGATING

    def test_non_propagating(self):
        assert classify_regime(1j, CavityModel(v0=3.0)) is Regime.NON_PROPAGATING

    def test_combined(self):
        assert classify_regime(complex(0.1, 1.0),
                               CavityModel()) is Regime.COMBINED

    def test_degenerate_edge(self):
        assert classify_regime(complex(0.0, 2.0), CavityModel(v0=2.0)) \
            is Regime.PROPAGATING_DEGENERATE

    def test_drive_cancellation(self):
        # V1 + E0 = 0 through mutual cancellation, not both zero
        assert classify_regime(complex(0.7, 1.0),
                               CavityModel(v1=-0.7)) is Regime.PROPAGATING


class TestQuatLeft:
    MODEL = CavityModel(ell=1.0, w0=1.0)  # V0 = 0, |U1| = 1
    ENERGY = 2j  # E0 = -V1 = 0, E1 = 2, so E1^2 > V0^2 + |U1|^2

    def test_stationary_momentum(self):
        k, _ = quat_dispersion_left(self.ENERGY, self.MODEL,
                                    BranchChoice(inner_sign=-1))
        # K0 = 0 and K1^2 = 2m(sqrt(E1^2 - |U1|^2) - V0)/hbar^2 = 2 sqrt(3)
        assert k.real == 0.0
        assert k.imag**2 == pytest.approx(2.0 * math.sqrt(3.0), abs=1e-13)

    def test_coupling_ratio_both_branches(self):
        _, y_minus = quat_dispersion_left(self.ENERGY, self.MODEL,
                                          BranchChoice(inner_sign=-1))
        _, y_plus = quat_dispersion_left(self.ENERGY, self.MODEL,
                                         BranchChoice(inner_sign=+1))
        # (E1/conj(U1)) (+-sqrt(1 - |U1|^2/E1^2) - 1) at U1 = 1, E1 = 2
        assert y_minus == pytest.approx(math.sqrt(3.0) - 2.0, abs=1e-13)
        assert y_plus == pytest.approx(-(math.sqrt(3.0) + 2.0), abs=1e-13)

    def test_against_numpy_eigensolver(self):
        mat, vals, vecs = numpy_eigen_oracle(self.ENERGY, self.MODEL, "left")
        for sign in (+1, -1):
            k, y0 = quat_dispersion_left(self.ENERGY, self.MODEL,
                                         BranchChoice(inner_sign=sign))
            lam = k**2 / 2.0  # hbar = m = 1
            idx = int(np.argmin(np.abs(vals - lam)))
            assert abs(vals[idx] - lam) < 1e-12
            vec = vecs[:, idx]
            ratio = vec[1] / vec[0]  # conj(A1)/A0 = conj(Y0)
            assert abs(ratio - np.conj(y0)) < 1e-12

    def test_stationary_evanescent_branch(self):
        # K0^2 = 2m(V0 - sqrt(E1^2 - |U1|^2))/hbar^2 when that is positive
        model = CavityModel(v0=3.0, w0=1.0)
        k, _ = quat_dispersion_left(1.5j, model, BranchChoice(inner_sign=-1))
        assert k.imag == 0.0
        assert k.real**2 == pytest.approx(
            2.0 * (3.0 - math.sqrt(1.5**2 - 1.0)), rel=1e-13)

    def test_zero_coupling_rejected(self):
        with pytest.raises(ZeroCouplingError):
            quat_dispersion_left(1j, CavityModel())

    def test_limit_recovery(self):
        tiny = CavityModel(w0=1e-8)
        plain = CavityModel()
        energy = complex(0.4, 1.9)
        k_quat, y0 = quat_dispersion_left(energy, tiny,
                                          BranchChoice(inner_sign=-1))
        k_complex = complex_dispersion(energy, plain)
        assert abs(k_quat - k_complex) < 1e-6
        assert abs(y0) < 1e-6


class TestQuatRight:
    def test_spatially_stationary(self):
        model = CavityModel(v1=0.3, w0=0.4)
        root = math.hypot(0.3, 0.4)
        energy = complex(-root, 1.5)  # E0 + sqrt(V1^2+|U1|^2) = 0, V0 < E1
        k, _ = quat_dispersion_right(energy, model, BranchChoice(inner_sign=+1))
        assert k.real == 0.0
        assert k.imag**2 == pytest.approx(2.0 * 1.5, abs=1e-13)
        assert energy.real != 0.0  # decays in time although spatially steady

    def test_complex_limit(self):
        model = CavityModel(v0=1.0, w0=1e-9)
        k, _ = quat_dispersion_right(2j, model, BranchChoice(inner_sign=+1))
        assert abs(k - 1j * math.sqrt(2.0 * (2.0 - 1.0))) < 1e-6

    def test_random_point_eigen_residual(self):
        model = CavityModel(v1=0.3, w0=0.4)
        energy = complex(0.2, 1.5)
        for sign in (+1, -1):
            k, y0 = quat_dispersion_right(energy, model,
                                          BranchChoice(inner_sign=sign))
            assert eigen_residual(k, y0, energy, model, "right") < 1e-10

    def test_against_numpy_eigensolver(self):
        model = CavityModel(v0=0.5, v1=-0.4, w0=0.7, w1=0.9)
        energy = complex(-0.3, 2.2)
        mat, vals, vecs = numpy_eigen_oracle(energy, model, "right")
        for sign in (+1, -1):
            k, y0 = quat_dispersion_right(energy, model,
                                          BranchChoice(inner_sign=sign))
            lam = k**2 / 2.0
            idx = int(np.argmin(np.abs(vals - lam)))
            assert abs(vals[idx] - lam) < 1e-12
            ratio = vecs[1, idx] / vecs[0, idx]
            assert abs(ratio - np.conj(y0)) < 1e-12

    def test_coupling_ratio_energy_independent(self):
        # the right-equation eigenvector depends only on V1, U1 and the branch:
        # conj(Y0) = i (V1 - s sqrt(V1^2 + |U1|^2)) / U1
        model = CavityModel(v0=0.8, v1=0.3, w0=0.4)
        root = math.hypot(0.3, 0.4)
        for sign in (+1, -1):
            expected = np.conj(1j * (0.3 - sign * root) / 0.4)
            for energy in (complex(0.2, 1.5), complex(-1.0, 2.7)):
                _, y0 = quat_dispersion_right(energy, model,
                                              BranchChoice(inner_sign=sign))
                assert abs(y0 - expected) < 1e-13


class TestEigenResidual:
    def test_outputs_pass(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            e0, e1, v0, v1 = rng.uniform(-3, 3, size=4)
            w0, w1 = rng.uniform(0.2, 2.0, size=2)
            model = CavityModel(v0=v0, v1=v1, w0=w0, w1=w1)
            energy = complex(e0, e1)
            for which, solver in (("left", quat_dispersion_left),
                                  ("right", quat_dispersion_right)):
                for sign in (+1, -1):
                    k, y0 = solver(energy, model, BranchChoice(inner_sign=sign))
                    assert eigen_residual(k, y0, energy, model, which) < 1e-10

    def test_sensitivity_to_momentum(self):
        model = CavityModel(ell=1.0, w0=1.0)
        k, y0 = quat_dispersion_left(2j, model, BranchChoice(inner_sign=-1))
        bad = k + 1e-3
        assert eigen_residual(bad, y0, 2j, model, "left") > 1e-6

    def test_decoupled_diagonal_case(self):
        model = CavityModel(v0=1.0, v1=0.2)
        energy = complex(0.1, 2.0)
        k = complex_dispersion(energy, model)
        assert eigen_residual(k, 0j, energy, model, "left") < 1e-12

    def test_quadratic_formula_oracle_agrees(self):
        model = CavityModel(v0=0.7, v1=-0.2, w0=1.1, w1=0.4)
        energy = complex(0.3, 1.4)
        for which in ("left", "right"):
            lam_lo, lam_hi = brute_force_eigenvalues(energy, model, which)
            ks = [quat_dispersion_left, quat_dispersion_right][which == "right"](
                energy, model, BranchChoice(inner_sign=+1))[0]
            lam = ks**2 / 2.0
            assert min(abs(lam - lam_lo), abs(lam - lam_hi)) < 1e-12
