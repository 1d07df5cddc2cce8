"""Quaternion algebra: Hamilton product, i-sidedness, conjugation, norms."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcavity.algebra import (I, J, K, ONE, Quaternion, left_i, quat_conj,
                             quat_mul, quat_norm, right_i)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False,
                   allow_infinity=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)


def random_quats(rng, n):
    return [Quaternion(*rng.standard_normal(4)) for _ in range(n)]


def test_identity_element():
    q = Quaternion(0.3, -1.2, 0.7, 2.0)
    assert quat_mul(ONE, q) == q
    assert quat_mul(q, ONE) == q


def test_unit_products():
    assert quat_mul(I, J) == K
    assert quat_mul(J, I) == -K
    assert quat_mul(I, I) == -ONE
    assert quat_mul(J, J) == -ONE
    assert quat_mul(K, K) == -ONE


def test_left_right_i_on_units():
    assert left_i(ONE) == I
    assert right_i(ONE) == I
    assert left_i(J) == K
    assert right_i(J) == -K


def test_left_minus_right_i_component_expansion():
    rng = np.random.default_rng(7)
    for q in random_quats(rng, 50):
        diff = left_i(q) - right_i(q)
        # i q - q i = 2 (-z j + y k), from expanding the unit products
        expected = Quaternion(0.0, 0.0, -2.0 * q.z, 2.0 * q.y)
        assert diff.isclose(expected, 1e-14)


def test_norm_multiplicative():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        p = Quaternion(*rng.standard_normal(4))
        q = Quaternion(*rng.standard_normal(4))
        assert abs(quat_norm(p * q) - quat_norm(p) * quat_norm(q)) < 1e-14 * (
            1.0 + quat_norm(p) * quat_norm(q))


def test_conj_involution_and_antiautomorphism():
    rng = np.random.default_rng(13)
    assert quat_conj(I) == -I
    assert quat_norm(ONE + J) == pytest.approx(math.sqrt(2.0), abs=1e-15)
    for _ in range(200):
        p = Quaternion(*rng.standard_normal(4))
        q = Quaternion(*rng.standard_normal(4))
        assert quat_conj(quat_conj(p)) == p
        assert quat_conj(p * q).isclose(quat_conj(q) * quat_conj(p), 1e-14)


def test_unit_isometry():
    rng = np.random.default_rng(17)
    for _ in range(1000):
        u = Quaternion(*rng.standard_normal(4))
        n = u.norm()
        u = Quaternion(u.w / n, u.x / n, u.y / n, u.z / n)
        q = Quaternion(*rng.standard_normal(4))
        assert abs((u * q).norm() - q.norm()) < 1e-12


def test_complex_subalgebra_matches_complex_bit_for_bit():
    rng = np.random.default_rng(19)
    for _ in range(500):
        a, b, c, d = rng.standard_normal(4)
        prod = Quaternion(a, b, 0.0, 0.0) * Quaternion(c, d, 0.0, 0.0)
        ref = complex(a, b) * complex(c, d)
        assert prod.y == 0.0 and prod.z == 0.0
        assert prod.w == ref.real and prod.x == ref.imag


@given(finite, finite, finite, finite)
def test_symplectic_round_trip(w, x, y, z):
    q = Quaternion(w, x, y, z)
    assert Quaternion.from_pair(*q.to_pair()) == q


@given(quats, quats, quats)
@settings(max_examples=200)
def test_associativity(p, q, r):
    left = (p * q) * r
    right = p * (q * r)
    scale = 1.0 + p.norm() * q.norm() * r.norm()
    assert (left - right).norm() <= 1e-12 * scale


@given(quats, quats)
@settings(max_examples=200)
def test_norm_multiplicative_property(p, q):
    scale = 1.0 + p.norm() * q.norm()
    assert abs((p * q).norm() - p.norm() * q.norm()) <= 1e-12 * scale


def test_scalar_multiplication():
    q = Quaternion(1.0, 2.0, 3.0, 4.0)
    assert 2.0 * q == Quaternion(2.0, 4.0, 6.0, 8.0)
    assert (1j * q).to_pair() == ((1j * complex(1, 2)), 1j * complex(3, 4))
