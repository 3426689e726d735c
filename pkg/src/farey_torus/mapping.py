"""Mapping classes of the torus acting on slopes.

A mapping class is an integer matrix ``(p, q; r, s)`` with determinant +-1
acting on column vectors ``(a, b)``. It permutes slopes and preserves
intersection numbers, so it is an isometry of the Farey graph.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .metric import distance
from .slope import CFExpansion, Slope, canonicalize
from .surd import PeriodicCF, Surd, is_square, surd_cf, verify_period


class NotAnosovError(ValueError):
    pass


class Kind(enum.Enum):
    PERIODIC = "periodic"
    REDUCIBLE = "reducible"
    ANOSOV = "anosov"


@dataclass(frozen=True)
class MappingClass:
    p: int
    q: int
    r: int
    s: int

    def __post_init__(self) -> None:
        if abs(self.det) != 1:
            raise ValueError(f"determinant {self.det} is not +-1")

    @classmethod
    def parse(cls, text: str) -> "MappingClass":
        parts = [x.strip() for x in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected four comma-separated integers, got {text!r}")
        return cls(*(int(x) for x in parts))

    @property
    def det(self) -> int:
        return self.p * self.s - self.q * self.r

    @property
    def trace(self) -> int:
        return self.p + self.s

    def __matmul__(self, other: "MappingClass") -> "MappingClass":
        return MappingClass(
            self.p * other.p + self.q * other.r,
            self.p * other.q + self.q * other.s,
            self.r * other.p + self.s * other.r,
            self.r * other.q + self.s * other.s,
        )

    def inverse(self) -> "MappingClass":
        d = self.det
        return MappingClass(self.s * d, -self.q * d, -self.r * d, self.p * d)

    def __pow__(self, n: int) -> "MappingClass":
        base = self if n >= 0 else self.inverse()
        out = MappingClass(1, 0, 0, 1)
        for _ in range(abs(n)):
            out = out @ base
        return out

    def __str__(self) -> str:
        return f"{self.p},{self.q},{self.r},{self.s}"


IDENTITY = MappingClass(1, 0, 0, 1)


def act(m: MappingClass, s: Slope) -> Slope:
    return canonicalize(m.p * s.a + m.q * s.b, m.r * s.a + m.s * s.b)


def classify(m: MappingClass) -> Kind:
    if m.det != 1:
        raise ValueError("classification needs an orientation-preserving class (det = +1)")
    t = abs(m.trace)
    if t < 2:
        return Kind.PERIODIC
    if t == 2:
        return Kind.REDUCIBLE
    return Kind.ANOSOV


def _require_anosov(m: MappingClass) -> None:
    kind = classify(m)
    if kind is not Kind.ANOSOV:
        raise NotAnosovError(f"{m} is {kind.value}, not Anosov")


@dataclass(frozen=True)
class OrbitStep:
    n: int
    image: Slope
    dist: int


@dataclass(frozen=True)
class OrbitReport:
    """Distances ``d(start, m^n start)`` for ``n = 1..N``.

    ``growth`` is the secant slope over the second half of the run,
    ``(dist(N) - dist(h)) / (N - h)`` with ``h = ceil(N/2)`` (``h = 0`` when
    ``N = 1``, where ``dist(0) = 0``). The offsets make every step satisfy
    ``growth*n - lower_offset <= dist(n) <= growth*n + upper_offset``.
    """

    matrix: MappingClass
    start: Slope
    steps: tuple[OrbitStep, ...]
    growth: Fraction
    lower_offset: Fraction
    upper_offset: Fraction


def orbit_growth(m: MappingClass, s: Slope, N: int) -> OrbitReport:
    _require_anosov(m)
    if N < 1:
        raise ValueError("N must be >= 1")
    steps = []
    image = s
    for n in range(1, N + 1):
        image = act(m, image)
        steps.append(OrbitStep(n, image, distance(s, image)))
    dists = [0] + [st.dist for st in steps]
    h = ceil(N / 2) if N > 1 else 0
    growth = Fraction(dists[N] - dists[h], N - h)
    lower = max(Fraction(0), max(growth * n - dists[n] for n in range(1, N + 1)))
    upper = max(Fraction(0), max(dists[n] - growth * n for n in range(1, N + 1)))
    return OrbitReport(m, s, tuple(steps), growth, lower, upper)


@dataclass(frozen=True)
class EigenDirectionReport:
    matrix: MappingClass
    trace: int
    discriminant: int
    eigenvalues: tuple[Surd, Surd]  # (larger, smaller) in absolute value
    attracting: Surd
    repelling: Surd
    cf_prefix: CFExpansion
    cf: PeriodicCF
    period_verified: bool


def fixed_directions(m: MappingClass) -> tuple[Surd, Surd]:
    """Roots ``z = b/a`` of ``q z^2 + (p - s) z - r = 0``, the projectively fixed rays."""
    disc = (m.p - m.s) ** 2 + 4 * m.q * m.r
    base = Fraction(m.s - m.p, 2 * m.q)
    half = Fraction(1, 2 * m.q)
    return Surd(base, half, disc), Surd(base, -half, disc)


def image_direction(m: MappingClass, z: Fraction) -> Fraction | None:
    """Direction of ``m (1, z)``; None when the image is vertical."""
    den = m.p + m.q * z
    if den == 0:
        return None
    return (m.r + m.s * z) / den


def _pulled_closer(m: MappingClass, z: Surd, depth: int) -> bool:
    cf = surd_cf(z, depth)
    c = CFExpansion(cf.prefix, exact=False).value()
    c_img = image_direction(m, c)
    if c_img is None:
        return False
    return abs(z - c_img) < abs(z - c)


def eigen_directions(m: MappingClass, k: int, depth: int = 12) -> EigenDirectionReport:
    """Fixed directions of an Anosov class, their continued fractions and eigenvalues.

    The attracting direction is the one whose convergent (taken ``depth`` terms
    deep) moves strictly closer to it under ``m``.
    """
    _require_anosov(m)
    if k < 1:
        raise ValueError("k must be >= 1")
    disc = m.trace ** 2 - 4 * m.det
    assert not is_square(disc)
    z1, z2 = fixed_directions(m)
    c1, c2 = _pulled_closer(m, z1, depth), _pulled_closer(m, z2, depth)
    if c1 == c2:
        raise ArithmeticError(f"convergent test undecided at depth {depth}")
    attracting, repelling = (z1, z2) if c1 else (z2, z1)
    lam = Surd(Fraction(m.trace, 2), Fraction(1, 2), disc)
    mu = lam.conjugate()
    if abs(lam) < abs(mu):
        lam, mu = mu, lam
    cf = surd_cf(attracting, k)
    return EigenDirectionReport(
        matrix=m,
        trace=m.trace,
        discriminant=disc,
        eigenvalues=(lam, mu),
        attracting=attracting,
        repelling=repelling,
        cf_prefix=CFExpansion(cf.prefix, exact=False),
        cf=cf,
        period_verified=verify_period(cf),
    )
