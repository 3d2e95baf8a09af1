"""Real quaternions in double precision.

A quaternion ``w + x i + y j + z k`` is stored as four floats.  Besides the
ring operations this module provides the complex split
``q = q1 + q2 j`` (``q1 = w + x i``, ``q2 = y + z i``), the conjugacy
relation (equal real part and equal modulus) and a few helpers that act on
a whole conjugacy sphere.

Complex numbers are represented by the builtin :class:`complex`, identified
with quaternions whose ``j`` and ``k`` components vanish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import DegenerateClassError, DomainError

__all__ = [
    "Quaternion",
    "ONE",
    "I",
    "J",
    "K",
    "ZERO",
    "mul",
    "conj",
    "split",
    "join",
    "equivalent",
    "sphere_representative",
    "power_interpolation_check",
    "left_matrix",
    "right_matrix",
    "sample_ball",
    "sample_offslice",
]

Scalar = int | float


@dataclass(frozen=True, slots=True)
class Quaternion:
    """Immutable quaternion ``w + x i + y j + z k``."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_complex(cls, c: complex) -> Quaternion:
        c = complex(c)
        return cls(c.real, c.imag, 0.0, 0.0)

    @classmethod
    def from_sequence(cls, seq: Sequence[float]) -> Quaternion:
        if len(seq) != 4:
            raise ValueError(f"expected 4 components, got {len(seq)}")
        return cls(*(float(v) for v in seq))

    @classmethod
    def coerce(cls, value: Quaternion | complex | Scalar) -> Quaternion:
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, complex):
            return cls.from_complex(value)
        return cls(float(value))

    # components ---------------------------------------------------------

    def __iter__(self):
        yield self.w
        yield self.x
        yield self.y
        yield self.z

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=float)

    @property
    def re(self) -> float:
        return self.w

    @property
    def im(self) -> Quaternion:
        return Quaternion(0.0, self.x, self.y, self.z)

    def conj(self) -> Quaternion:
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def __abs__(self) -> float:
        return math.hypot(self.w, self.x, self.y, self.z)

    def im_abs(self) -> float:
        return math.hypot(self.x, self.y, self.z)

    def is_real(self) -> bool:
        return self.x == 0.0 and self.y == 0.0 and self.z == 0.0

    def is_complex(self, tol: float = 0.0) -> bool:
        """True when the point lies on the slice spanned by ``1`` and ``i``."""
        return math.hypot(self.y, self.z) <= tol

    def inverse(self) -> Quaternion:
        n2 = self.norm2()
        if n2 == 0.0:
            raise ZeroDivisionError("quaternion inverse of zero")
        return Quaternion(self.w / n2, -self.x / n2, -self.y / n2, -self.z / n2)

    def split(self) -> tuple[complex, complex]:
        return complex(self.w, self.x), complex(self.y, self.z)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)
        if isinstance(other, (int, float, complex)):
            return self + Quaternion.coerce(other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)
        if isinstance(other, (int, float, complex)):
            return self - Quaternion.coerce(other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float, complex)):
            return Quaternion.coerce(other) - self
        return NotImplemented

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __pos__(self) -> Quaternion:
        return self

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        if isinstance(other, complex):
            return mul(self, Quaternion.from_complex(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(other * self.w, other * self.x, other * self.y, other * self.z)
        if isinstance(other, complex):
            return mul(Quaternion.from_complex(other), self)
        return NotImplemented

    def __truediv__(self, other):
        # only division by reals; quaternion quotients are one-sided, use inverse()
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)
        return NotImplemented

    def __pow__(self, k: int) -> Quaternion:
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            base = mul(base, base)
            k >>= 1
        return result

    def __repr__(self) -> str:
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


ZERO = Quaternion(0.0, 0.0, 0.0, 0.0)
ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)  # noqa: E741
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``a * b``."""
    aw, ax, ay, az = a.w, a.x, a.y, a.z
    bw, bx, by, bz = b.w, b.x, b.y, b.z
    return Quaternion(
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    )


def conj(a: Quaternion) -> Quaternion:
    return a.conj()


def split(a: Quaternion) -> tuple[complex, complex]:
    """Return ``(a1, a2)`` with ``a = a1 + a2 j`` and ``a1, a2`` complex."""
    return a.split()


def join(a1: complex, a2: complex) -> Quaternion:
    """Inverse of :func:`split`: build ``a1 + a2 j``."""
    a1 = complex(a1)
    a2 = complex(a2)
    return Quaternion(a1.real, a1.imag, a2.real, a2.imag)


def equivalent(a: Quaternion, b: Quaternion, tol: float = 1e-12) -> bool:
    """Whether ``a`` and ``b`` lie on the same conjugacy sphere.

    Two quaternions are conjugate exactly when their real parts and their
    moduli agree; both comparisons are made with absolute tolerance ``tol``.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return abs(a.w - b.w) <= tol and abs(abs(a) - abs(b)) <= tol


def sphere_representative(g: Quaternion) -> complex:
    """The point ``re(g) + |im(g)| i`` of the complex slice conjugate to ``g``.

    Raises
    ------
    DegenerateClassError
        If ``g`` is real, so that its conjugacy class is a single point.
    """
    r = g.im_abs()
    if r == 0.0:
        raise DegenerateClassError(f"{g!r} is real; its conjugacy class is a single point")
    return complex(g.w, r)


def _check_sphere_triple(a: Quaternion, b: Quaternion, g: Quaternion, tol: float) -> None:
    pts = (a, b, g)
    for p in range(3):
        for q in range(p + 1, 3):
            if pts[p] == pts[q]:
                raise DomainError("points must be pairwise distinct")
            if not equivalent(pts[p], pts[q], tol):
                raise DomainError(f"points {pts[p]!r} and {pts[q]!r} are not equivalent")


def power_interpolation_check(
    a: Quaternion, b: Quaternion, g: Quaternion, k: int, tol: float = 1e-10
) -> Quaternion:
    """Express ``g**k`` through ``a**k`` and ``b**k`` for three conjugate points.

    Returns ``(g - b)(a - b)^{-1} a^k + (a - g)(a - b)^{-1} b^k``, which equals
    ``g**k`` whenever ``a, b, g`` are distinct points of one conjugacy sphere.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    _check_sphere_triple(a, b, g, tol)
    d_inv = (a - b).inverse()
    return (g - b) * d_inv * a**k + (a - g) * d_inv * b**k


def left_matrix(a: Quaternion) -> np.ndarray:
    """4x4 real matrix ``L`` with ``L @ vec(p) == vec(a * p)``."""
    w, x, y, z = a.w, a.x, a.y, a.z
    return np.array(
        [
            [w, -x, -y, -z],
            [x, w, -z, y],
            [y, z, w, -x],
            [z, -y, x, w],
        ]
    )


def right_matrix(b: Quaternion) -> np.ndarray:
    """4x4 real matrix ``R`` with ``R @ vec(p) == vec(p * b)``."""
    w, x, y, z = b.w, b.x, b.y, b.z
    return np.array(
        [
            [w, -x, -y, -z],
            [x, w, z, -y],
            [y, -z, w, x],
            [z, y, -x, w],
        ]
    )


def sample_ball(rng: np.random.Generator, margin: float = 0.05) -> Quaternion:
    """Uniform sample from the ball ``|q| < 1 - margin``.

    Rejection sampling from the cube ``[-1, 1]^4``.
    """
    if not 0.0 <= margin < 1.0:
        raise ValueError("margin must lie in [0, 1)")
    radius = 1.0 - margin
    while True:
        v = rng.uniform(-1.0, 1.0, size=4)
        q = Quaternion(*map(float, v))
        if abs(q) < radius:
            return q


def sample_offslice(
    rng: np.random.Generator, margin: float = 0.05, min_offslice: float = 0.05
) -> Quaternion:
    """Sample from the ball keeping ``hypot(y, z) >= min_offslice``.

    Such points are off the complex slice and their conjugacy spheres are not
    too small, which keeps the two-point extension formulas well conditioned.
    """
    while True:
        q = sample_ball(rng, margin)
        if math.hypot(q.y, q.z) >= min_offslice:
            return q


def quaternions(values: Iterable[Sequence[float]]) -> list[Quaternion]:
    return [Quaternion.from_sequence(v) for v in values]
