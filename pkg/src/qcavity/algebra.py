"""Quaternion arithmetic with explicit left/right multiplication by i.

Quaternions are stored as four reals w + x*i + y*j + z*k and are
interconvertible with the symplectic pair (a0, a1) of Python complex
numbers meaning a0 + a1*j.  The pair form is the working representation
here because the coupled wave equations treat a quaternionic amplitude
as two complex components.

Sign conventions: i*j = k, j*i = -k, and j*z = conj(z)*j for complex z.
Because i does not commute with j, multiplying by i from the left and
from the right are different operations; both are provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Quaternion:
    w: float
    x: float
    y: float
    z: float

    @classmethod
    def from_pair(cls, a0: complex, a1: complex) -> "Quaternion":
        """Build w + x*i + y*j + z*k from the symplectic pair a0 + a1*j."""
        a0 = complex(a0)
        a1 = complex(a1)
        return cls(a0.real, a0.imag, a1.real, a1.imag)

    def to_pair(self) -> tuple[complex, complex]:
        return complex(self.w, self.x), complex(self.y, self.z)

    @classmethod
    def from_complex(cls, a0: complex) -> "Quaternion":
        return cls.from_pair(a0, 0j)

    # -- algebra ------------------------------------------------------------

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        """Hamilton product, or scaling by a real/complex number.

        Complex scalars multiply from the left, i.e. c * q with c taken
        as the quaternion c + 0*j.
        """
        if isinstance(other, Quaternion):
            a0, a1 = self.to_pair()
            b0, b1 = other.to_pair()
            # (a0 + a1 j)(b0 + b1 j) = (a0 b0 - a1 conj(b1)) + (a0 b1 + a1 conj(b0)) j
            return Quaternion.from_pair(
                a0 * b0 - a1 * b1.conjugate(),
                a0 * b1 + a1 * b0.conjugate(),
            )
        if isinstance(other, (int, float, complex)):
            return Quaternion.from_complex(complex(other)) * self
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return Quaternion.from_complex(complex(other)) * self
        return NotImplemented

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        a0, a1 = self.to_pair()
        return math.hypot(abs(a0), abs(a1))

    def scalar_part(self) -> float:
        return self.w

    def isclose(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    return p * q


def left_i(q: Quaternion) -> Quaternion:
    """i * q.  On the pair form: (a0, a1) -> (i*a0, i*a1)."""
    a0, a1 = q.to_pair()
    return Quaternion.from_pair(1j * a0, 1j * a1)


def right_i(q: Quaternion) -> Quaternion:
    """q * i.  On the pair form: (a0, a1) -> (i*a0, -i*a1), since j*i = -i*j."""
    a0, a1 = q.to_pair()
    return Quaternion.from_pair(1j * a0, -1j * a1)


def quat_conj(q: Quaternion) -> Quaternion:
    return q.conjugate()


def quat_norm(q: Quaternion) -> float:
    return q.norm()
