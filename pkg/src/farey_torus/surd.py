"""Exact real quadratic irrationals ``p + q*sqrt(d)`` with rational p, q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Union

Rational = Union[int, Fraction]


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _sign(x: Rational) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Surd:
    p: Fraction
    q: Fraction
    d: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))
        if self.d < 0:
            raise ValueError("negative radicand")

    def _coerce(self, other: Union["Surd", Rational]) -> "Surd":
        if isinstance(other, Surd):
            if other.d != self.d and other.q and self.q:
                raise ValueError(f"radicands differ: {self.d} vs {other.d}")
            return other
        return Surd(Fraction(other), Fraction(0), self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return Surd(self.p + o.p, self.q + o.q, self.d)

    __radd__ = __add__

    def __neg__(self) -> "Surd":
        return Surd(-self.p, -self.q, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return Surd(self.p * o.p + self.q * o.q * self.d, self.p * o.q + self.q * o.p, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> "Surd":
        return Surd(self.p, -self.q, self.d)

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.d

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by a zero-norm surd")
        num = self * o.conjugate()
        return Surd(num.p / n, num.q / n, self.d)

    def sign(self) -> int:
        """Exact sign of ``p + q*sqrt(d)``."""
        sp, sq = _sign(self.p), _sign(self.q)
        if sq == 0 or self.d == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: compare p^2 with q^2 d
        return sp if self.p * self.p > self.q * self.q * self.d else (
            0 if self.p * self.p == self.q * self.q * self.d else sq
        )

    def is_zero(self) -> bool:
        return self.sign() == 0

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __abs__(self) -> "Surd":
        return -self if self.sign() < 0 else self

    def is_irrational(self) -> bool:
        return self.q != 0 and not is_square(self.d)

    def to_pqd(self) -> tuple[int, int, int]:
        """Integers ``(P, Q, D)`` with value ``(P + sqrt(D)) / Q`` and ``Q | D - P^2``."""
        if self.q == 0:
            raise ValueError("rational value has no (P + sqrt D)/Q form")
        c = lcm(self.p.denominator, self.q.denominator)
        a = self.p.numerator * (c // self.p.denominator)
        b = self.q.numerator * (c // self.q.denominator)
        sigma = 1 if b > 0 else -1
        return sigma * a * c, sigma * c * c, self.d * b * b * c * c

    def floor(self) -> int:
        P, Q, D = self.to_pqd() if self.q else (self.p.numerator, self.p.denominator, 0)
        return _floor_pqd(P, Q, D)

    def __str__(self) -> str:
        return f"{self.p} + {self.q}*sqrt({self.d})"


def _floor_pqd(P: int, Q: int, D: int) -> int:
    r = isqrt(D)
    if r * r == D:
        return (P + r) // Q
    # sqrt(D) lies strictly between r and r + 1
    return (P + r) // Q if Q > 0 else (P + r + 1) // Q


@dataclass(frozen=True)
class PeriodicCF:
    prefix: tuple[int, ...]  # first k partial quotients
    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    period_state: tuple[int, int, int]  # (P, Q, D) at the start of the repeating block


def surd_cf(x: Surd, k: int) -> PeriodicCF:
    """Continued fraction of an irrational quadratic surd by exact ``(P, Q)`` recurrence.

    Runs until both ``k`` coefficients are known and a state has repeated.
    """
    if not x.is_irrational():
        raise ValueError(f"{x} is rational")
    P, Q, D = x.to_pqd()
    coeffs: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    start = None
    while start is None or len(coeffs) < k:
        if start is None:
            if (P, Q) in seen:
                start = seen[(P, Q)]
                end = len(coeffs)
                state = (P, Q, D)
            else:
                seen[(P, Q)] = len(coeffs)
        a = _floor_pqd(P, Q, D)
        coeffs.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    return PeriodicCF(
        prefix=tuple(coeffs[:k]),
        preperiod=tuple(coeffs[:start]),
        period=tuple(coeffs[start:end]),
        period_state=state,
    )


def verify_period(cf: PeriodicCF) -> bool:
    """Fold the block over the surd at its own start and check the value comes back.

    With ``x = [a1; ..., am, x]`` the convergent matrix gives
    ``x = (p_m x + p_{m-1}) / (q_m x + q_{m-1})``, checked in exact arithmetic.
    """
    P, Q, D = cf.period_state
    x = Surd(Fraction(P, Q), Fraction(1, Q), D)
    p_prev, p, q_prev, q = 1, cf.period[0], 0, 1
    for a in cf.period[1:]:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    folded = (x * p + p_prev) / (x * q + q_prev)
    return (folded - x).is_zero()
