"""Quaternion algebra in symplectic (Cayley-Dickson) form.

A quaternion ``q = φ0 + φ1 i + φ2 j + φ3 k`` is stored as the complex pair
``(za, zb)`` with ``q = za + zb·j``, ``za = φ0 + iφ1`` and ``zb = φ2 + iφ3``.
The one identity that drives every product is ``j·z = conj(z)·j`` for a
complex ``z``.

Wavefunctions in this package are written as ``Φ = φa + j φb``; use
:meth:`Quaternion.from_left_j` and :meth:`Quaternion.left_j_parts` to move
between that form and the stored one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class Quaternion:
    """Immutable quaternion ``za + zb·j``."""

    za: complex = 0j
    zb: complex = 0j

    @classmethod
    def of(cls, z: complex) -> Quaternion:
        """Embed a complex number."""
        return cls(complex(z), 0j)

    @classmethod
    def from_left_j(cls, a: complex, b: complex) -> Quaternion:
        """Build ``a + j·b`` (the wavefunction convention)."""
        return cls(complex(a), complex(b).conjugate())

    @classmethod
    def from_components(cls, phi0: float, phi1: float, phi2: float, phi3: float) -> Quaternion:
        return cls(complex(phi0, phi1), complex(phi2, phi3))

    def components(self) -> tuple[float, float, float, float]:
        """Four-real view ``(φ0, φ1, φ2, φ3)``."""
        return (self.za.real, self.za.imag, self.zb.real, self.zb.imag)

    def left_j_parts(self) -> tuple[complex, complex]:
        """Return ``(a, b)`` such that ``self == a + j·b``."""
        return (self.za, self.zb.conjugate())

    @property
    def scalar(self) -> float:
        return self.za.real

    def norm2(self) -> float:
        """``|q|² = |za|² + |zb|²``."""
        return abs(self.za) ** 2 + abs(self.zb) ** 2

    def norm(self) -> float:
        return math.hypot(abs(self.za), abs(self.zb))

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.za + other.za, self.zb + other.zb)

    def __sub__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.za - other.za, self.zb - other.zb)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.za, -self.zb)

    def __mul__(self, other: Quaternion) -> Quaternion:
        return qmul(self, other)


def qmul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product in symplectic form.

    ``(a + b j)(c + d j) = (a c − b conj(d)) + (a d + b conj(c)) j``
    """
    a, b = p.za, p.zb
    c, d = q.za, q.zb
    return Quaternion(a * c - b * d.conjugate(), a * d + b * c.conjugate())


def qconj(q: Quaternion) -> Quaternion:
    """Quaternionic conjugate: negates the i, j and k parts."""
    return Quaternion(q.za.conjugate(), -q.zb)


def jmul_left(z: complex) -> Quaternion:
    """Return ``j·z``, which equals ``conj(z)·j``."""
    return Quaternion(0j, complex(z).conjugate())


ONE = Quaternion(1 + 0j, 0j)
I = Quaternion(1j, 0j)  # noqa: E741
J = Quaternion(0j, 1 + 0j)
K = Quaternion(0j, 1j)
