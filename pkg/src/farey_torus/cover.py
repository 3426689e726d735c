"""Cones in the upper half-plane and cone covers of Farey balls around 1/0.

Directions are the values ``y/x`` of lattice points, compared exactly. A cone
is an open sector ``{lo < y/x < hi}``; when ``lo >= 0`` it sits in the right
quadrant (``x > 0``), when ``hi <= 0`` in the left one (``x < 0``). A sector
may not straddle 0, so neither 0/1 nor 1/0 can ever lie inside a cone.

The cover of the ball ``B_n(1/0)`` is built level by level. Slopes on the lines
``|a| = 1`` and ``b = 1`` and the two points 1/0, 0/1 are set aside. Every other
member at distance ``j`` hangs off the members at distance ``j - 1`` adjacent
to it. A member with a single such parent joins that parent's cluster, and the
cluster gets one cone around the parent's ray. Members with several parents,
or pushed out of a cluster by a cone accepted earlier, become exceptional
points with a small cone of their own unless an earlier cone already holds
them. Everything is certified afterwards by direct checks over the ball.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Optional

from .metric import BallReport, Window, ball, neighbors_in_window, oracle_distances
from .slope import INFINITY, ZERO, Slope


class CoverError(RuntimeError):
    """The construction failed to certify its own coverage (a bug, not an outcome)."""


class NoSafeConeError(RuntimeError):
    def __init__(self, message: str, obstructing: Iterable[Slope] = ()):
        super().__init__(message)
        self.obstructing = tuple(obstructing)


@total_ordering
@dataclass(frozen=True)
class Direction:
    """Direction ``num/den`` of a ray in the upper half-plane; ``den == 0`` is vertical."""

    num: int
    den: int

    @classmethod
    def of(cls, s: Slope) -> "Direction":
        if s.a == 0:
            return cls(1, 0)
        return cls(s.b, s.a) if s.a > 0 else cls(-s.b, -s.a)

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    def __lt__(self, other: "Direction") -> bool:
        if self.den == 0:
            return False
        if other.den == 0:
            return True
        return self.num * other.den < other.num * self.den

    def fraction(self) -> Fraction:
        if self.den == 0:
            raise OverflowError("vertical direction has no finite value")
        return Fraction(self.num, self.den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


def direction_value(s: Slope) -> Fraction:
    return Fraction(s.b, s.a)


@dataclass(frozen=True)
class ConeSector:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"empty sector ({self.lo}, {self.hi})")
        if self.lo < 0 < self.hi:
            raise ValueError(f"sector ({self.lo}, {self.hi}) straddles the vertical")

    @property
    def side(self) -> int:
        """+1 for the right quadrant, -1 for the left one."""
        return 1 if self.lo >= 0 else -1

    def contains(self, s: Slope) -> bool:
        return cone_contains(self, s)

    def overlaps(self, other: "ConeSector") -> bool:
        return self.lo < other.hi and other.lo < self.hi

    def shrink(self, margin: Fraction) -> "ConeSector":
        return ConeSector(self.lo + margin, self.hi - margin)

    def __str__(self) -> str:
        return f"({self.lo}, {self.hi})"


def cone_contains(c: ConeSector, s: Slope) -> bool:
    """Exact membership: two integer sign tests on cross products."""
    a, b = s.a, s.b
    if a == 0 or (a > 0) != (c.side > 0):
        return False
    if a < 0:
        a, b = -a, -b
    lo, hi = c.lo, c.hi
    return lo.numerator * a < b * lo.denominator and b * hi.denominator < hi.numerator * a


def on_exceptional_lines(s: Slope) -> bool:
    """True for 1/0, 0/1 and the slopes on X+, X- (|a| = 1) or Y (b = 1)."""
    return s == INFINITY or s == ZERO or abs(s.a) == 1 or s.b == 1


class _Hulls:
    """Pairwise disjoint closed intervals kept sorted by left end."""

    def __init__(self) -> None:
        self.los: list[Fraction] = []
        self.items: list[tuple[Fraction, Fraction, Slope]] = []

    def find(self, x: Fraction) -> Optional[int]:
        i = bisect.bisect_right(self.los, x) - 1
        if i >= 0 and self.items[i][1] >= x:
            return i
        return None

    def hits(self, lo: Fraction, hi: Fraction) -> bool:
        i = bisect.bisect_right(self.los, hi) - 1
        return i >= 0 and self.items[i][1] >= lo

    def below(self, x: Fraction) -> Optional[Fraction]:
        i = bisect.bisect_left(self.los, x) - 1
        return self.items[i][1] if i >= 0 else None

    def above(self, x: Fraction) -> Optional[Fraction]:
        i = bisect.bisect_right(self.los, x)
        return self.los[i] if i < len(self.los) else None

    def add(self, lo: Fraction, hi: Fraction, anchor: Slope) -> None:
        assert not self.hits(lo, hi)
        i = bisect.bisect_left(self.los, lo)
        self.los.insert(i, lo)
        self.items.insert(i, (lo, hi, anchor))


@dataclass(frozen=True)
class SafeCone:
    cone: ConeSector
    n: int
    window: Window
    certified: bool
    checked: int  # number of ball members tested against the cone


@dataclass(frozen=True)
class CoverReport:
    n: int
    window: Window
    cones: tuple[ConeSector, ...]
    anchors: tuple[Slope, ...]  # the slope whose ray each cone surrounds
    exceptional_points: tuple[Slope, ...]
    gaps: tuple[ConeSector, ...]
    safe_cone: Optional[ConeSector]
    disjoint: bool
    covering: bool
    safe: bool
    ball: BallReport = field(repr=False)

    def line_members(self) -> list[Slope]:
        return [s for s in self.ball.slopes() if on_exceptional_lines(s)]


def margin_for(window: Window) -> Fraction:
    """Below half the spacing of distinct directions with denominators <= max_a."""
    return Fraction(1, 4 * window.max_a ** 2)


def cones_disjoint(cones: Iterable[ConeSector]) -> bool:
    ordered = sorted(cones, key=lambda c: c.lo)
    return all(c.hi <= d.lo for c, d in zip(ordered, ordered[1:]))


def uncovered(cones: list[ConeSector], members: Iterable[Slope]) -> list[Slope]:
    ordered = sorted(cones, key=lambda c: c.lo)
    los = [c.lo for c in ordered]
    missing = []
    for s in members:
        if on_exceptional_lines(s):
            continue
        i = bisect.bisect_left(los, direction_value(s)) - 1
        if i < 0 or not cone_contains(ordered[i], s):
            missing.append(s)
    return missing


def _cluster(n: int, window: Window, dist: dict[Slope, int]) -> tuple[_Hulls, list[Slope]]:
    hulls = _Hulls()
    exceptional: list[Slope] = []
    by_level: dict[int, list[Slope]] = {}
    for s, d in dist.items():
        if not on_exceptional_lines(s):
            by_level.setdefault(d, []).append(s)

    for j in range(2, n + 1):
        groups: dict[Slope, list[Slope]] = {}
        pending: list[Slope] = []
        for m in by_level.get(j, []):
            parents = [
                u for u in neighbors_in_window(m, window)
                if dist.get(u) == j - 1 and u.a != 0 and (u.a > 0) == (m.a > 0)
            ]
            if len(parents) == 1:
                groups.setdefault(parents[0], []).append(m)
            else:
                pending.append(m)

        for anchor in sorted(groups, key=lambda u: (u.b, abs(u.a), u.a)):
            ray = direction_value(anchor)
            free = [m for m in groups[anchor] if hulls.find(direction_value(m)) is None]
            if not free:
                continue
            if hulls.find(ray) is not None:
                # the ray already sits in an earlier cone; strays get their own
                pending.extend(free)
                continue
            floor_, ceil_ = hulls.below(ray), hulls.above(ray)
            inside, outside = [], []
            for m in free:
                v = direction_value(m)
                ok = (floor_ is None or v > floor_) and (ceil_ is None or v < ceil_)
                (inside if ok else outside).append(m)
            pending.extend(outside)
            if inside:
                vals = [direction_value(m) for m in inside] + [ray]
                hulls.add(min(vals), max(vals), anchor)

        for m in sorted(pending, key=direction_value):
            v = direction_value(m)
            if hulls.find(v) is None:
                hulls.add(v, v, m)
                exceptional.append(m)
    return hulls, exceptional


def _gaps(cones: list[ConeSector], members: Iterable[Slope], side: int) -> list[ConeSector]:
    """Bounded open intervals on one side of the vertical meeting no cone and no member ray."""
    blocked = [(Fraction(0), Fraction(0))]  # the ray of 0/1
    for s in members:
        if s.a != 0 and s.b != 0 and (s.a > 0) == (side > 0):
            v = direction_value(s)
            blocked.append((v, v))
    blocked += [(c.lo, c.hi) for c in cones if c.side == side]
    blocked.sort()
    out = []
    reach = blocked[0][1]
    for lo, hi in blocked[1:]:
        if lo > reach:
            out.append(ConeSector(reach, lo))
        reach = max(reach, hi)
    return out


def angular_width(c: ConeSector) -> Fraction:
    """``tan`` of the opening angle, ``(hi - lo) / (1 + lo*hi)``; exact and monotone in the angle."""
    return (c.hi - c.lo) / (1 + c.lo * c.hi)


def _pick_safe(gaps: list[ConeSector], margin: Fraction) -> Optional[ConeSector]:
    # widest by angle: plain value width always favours the truncated steep end
    best = None
    for g in gaps:
        if g.side < 0 or g.hi - g.lo <= 2 * margin:
            continue
        if best is None or angular_width(g) > angular_width(best):
            best = g
    return best.shrink(margin) if best is not None else None


def build_cover(
    n: int, window: Window, ball_report: Optional[BallReport] = None, workers: Optional[int] = None
) -> CoverReport:
    """Cone cover of ``B_n(1/0)`` restricted to ``window``, with certificates."""
    if n < 0:
        raise ValueError("radius must be non-negative")
    br = ball_report if ball_report is not None else ball(INFINITY, n, window, workers)
    if br.center != INFINITY or br.radius != n or br.window != window:
        raise ValueError("ball report does not match (1/0, n, window)")
    dist = br.distances()
    hulls, exceptional = _cluster(n, window, dist)

    pad = margin_for(window)
    cones = [ConeSector(lo - pad, hi + pad) for lo, hi, _ in hulls.items]
    anchors = [anchor for _, _, anchor in hulls.items]

    disjoint = cones_disjoint(cones)
    missing = uncovered(cones, dist)
    if missing:
        raise CoverError(f"{len(missing)} ball members left uncovered, first {missing[:5]}")
    members = list(dist)
    gaps = _gaps(cones, members, -1) + _gaps(cones, members, 1)
    safe_cone = _pick_safe(gaps, margin_for(window)) if n >= 1 else None
    safe = safe_cone is not None and not any(cone_contains(safe_cone, s) for s in members)
    return CoverReport(
        n=n,
        window=window,
        cones=tuple(cones),
        anchors=tuple(anchors),
        exceptional_points=tuple(sorted(exceptional, key=lambda s: s.key)),
        gaps=tuple(gaps),
        safe_cone=safe_cone,
        disjoint=disjoint,
        covering=True,
        safe=safe,
        ball=br,
    )


def verify_cover(r: CoverReport) -> tuple[bool, bool]:
    """Re-derive the ball by plain BFS and re-check disjointness and coverage."""
    members = [s for s, d in oracle_distances(INFINITY, r.window).items() if d <= r.n]
    return cones_disjoint(r.cones), not uncovered(list(r.cones), members)


def find_safe_cone(n: int, window: Window, workers: Optional[int] = None) -> SafeCone:
    """A cone with positive rational bounds holding no member of the windowed ball."""
    if n < 1:
        raise ValueError("safe cones are searched for n >= 1")
    r = build_cover(n, window, workers=workers)
    if r.safe_cone is None:
        positive = [s for s in r.ball.slopes() if s.a > 0]
        raise NoSafeConeError(f"no gap wider than the margin at n={n}, window={window}", positive)
    members = r.ball.slopes()
    hit = [s for s in members if cone_contains(r.safe_cone, s)]
    if hit:
        raise NoSafeConeError(f"safe cone candidate {r.safe_cone} holds ball members", hit)
    return SafeCone(r.safe_cone, n, window, certified=True, checked=len(members))
