"""Slopes on the torus as primitive lattice points of the closed upper half-plane.

A slope ``b/a`` is stored as the lattice vector ``(a, b)``. The pairs ``(a, b)``
and ``(-a, -b)`` name the same curve, so every slope has one canonical
representative: ``b > 0``, or ``b == 0`` and ``a == 1``. Under this convention
``1/0`` (infinity) is ``(0, 1)`` and ``0/1`` is ``(1, 0)``.

All arithmetic is on Python ints, so nothing overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class ZeroVectorError(ValueError):
    """Raised when (0, 0) is offered as a slope."""


class NotAdjacentError(ValueError):
    """Raised when an operation needs two Farey neighbours and gets something else."""


@dataclass(frozen=True)
class Slope:
    a: int
    b: int

    def __post_init__(self) -> None:
        a, b = self.a, self.b
        if a == 0 and b == 0:
            raise ZeroVectorError("(0, 0) is not a slope")
        if gcd(a, b) != 1:
            raise ValueError(f"({a}, {b}) is not primitive; use canonicalize()")
        if not (b > 0 or (b == 0 and a == 1)):
            raise ValueError(f"({a}, {b}) is not sign-normalized; use canonicalize()")

    def __str__(self) -> str:
        return f"{self.b}/{self.a}"

    def __repr__(self) -> str:
        return f"Slope({self.a}, {self.b})"

    @property
    def key(self) -> tuple[int, int]:
        """Sort key: lexicographic on ``(b, a)``."""
        return (self.b, self.a)

    @property
    def is_infinity(self) -> bool:
        return self.a == 0

    def value(self) -> Fraction:
        """The rational number ``b/a``; undefined for ``1/0``."""
        if self.a == 0:
            raise ZeroDivisionError("1/0 has no finite value")
        return Fraction(self.b, self.a)


INFINITY = Slope(0, 1)
ZERO = Slope(1, 0)


def canonicalize(x: int, y: int) -> Slope:
    """Return the canonical slope on the line through the lattice point ``(x, y)``."""
    if x == 0 and y == 0:
        raise ZeroVectorError("cannot canonicalize the zero vector")
    g = gcd(x, y)
    x, y = x // g, y // g
    if y < 0 or (y == 0 and x < 0):
        x, y = -x, -y
    return Slope(x, y)


def intersection_number(s: Slope, t: Slope) -> int:
    """Geometric intersection number ``|b_s a_t - a_s b_t|`` of two slopes."""
    return abs(s.b * t.a - s.a * t.b)


def are_adjacent(s: Slope, t: Slope) -> bool:
    return intersection_number(s, t) == 1


def mediant(s: Slope, t: Slope) -> Slope:
    """Farey sum of two adjacent slopes, taken on their canonical vectors."""
    if intersection_number(s, t) != 1:
        raise NotAdjacentError(f"{s} and {t} are not Farey neighbours")
    return canonicalize(s.a + t.a, s.b + t.b)


def ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``u*x + v*y == g == gcd(x, y) >= 0``."""
    old_r, r = x, y
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def unit_solution(s: Slope) -> tuple[int, int]:
    """A lattice vector ``(x, y)`` with ``b_s*x - a_s*y == 1``."""
    g, u, v = ext_gcd(s.b, s.a)
    assert g == 1
    return u, -v


@dataclass(frozen=True)
class CFExpansion:
    """Continued fraction ``[c0; c1, c2, ...]``.

    ``exact`` is True when the list is the complete expansion of a rational,
    False when it is a prefix of a longer (possibly infinite) expansion.
    """

    coefficients: tuple[int, ...]
    exact: bool = True

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("empty continued fraction")
        if any(c < 1 for c in self.coefficients[1:]):
            raise ValueError("partial quotients after the first must be >= 1")

    def convergents(self) -> list[Fraction]:
        out = []
        p_prev, p = 1, self.coefficients[0]
        q_prev, q = 0, 1
        out.append(Fraction(p, q))
        for c in self.coefficients[1:]:
            p_prev, p = p, c * p + p_prev
            q_prev, q = q, c * q + q_prev
            out.append(Fraction(p, q))
        return out

    def value(self) -> Fraction:
        """Fold the coefficient list back into a rational."""
        return self.convergents()[-1]

    def __str__(self) -> str:
        head, *tail = self.coefficients
        body = f"[{head}" + (f"; {', '.join(map(str, tail))}" if tail else "")
        return body + ("]" if self.exact else ", ...]")


def rational_cf(num: int, den: int) -> list[int]:
    """Euclidean algorithm on ``num/den`` (``den > 0``), floor convention."""
    if den <= 0:
        raise ValueError("denominator must be positive")
    out = []
    while den:
        q, r = divmod(num, den)
        out.append(q)
        num, den = den, r
    return out


def continued_fraction(s: Slope) -> CFExpansion:
    """Continued fraction of the signed rational ``b/a``."""
    if s.a == 0:
        raise ValueError("1/0 has no continued fraction")
    num, den = (s.b, s.a) if s.a > 0 else (-s.b, -s.a)
    return CFExpansion(tuple(rational_cf(num, den)), exact=True)
