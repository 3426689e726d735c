"""Distances, geodesics and balls in the Farey graph.

Vertices are canonical slopes; two slopes are joined by an edge when their
intersection number is 1. The graph is infinite and locally infinite, so every
search here runs inside a finite :class:`Window` of lattice coordinates.

``distance`` is a bidirectional breadth-first search inside the *safety
window* of its endpoints (the box spanned by their largest coordinates).
Geodesics between two slopes can always be drawn through Farey ancestors of
the endpoints, whose coordinates never exceed the endpoints' own, so the
restricted search is exact. ``oracle_distance_bfs`` is the independent check:
a plain single-source BFS over the whole window graph.
"""

from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Iterator, Optional

from .slope import (
    INFINITY,
    ZERO,
    Slope,
    canonicalize,
    intersection_number,
    unit_solution,
)


@dataclass(frozen=True)
class Window:
    """The box ``|a| <= max_a``, ``|b| <= max_b`` in lattice coordinates."""

    max_a: int
    max_b: int

    def __post_init__(self) -> None:
        if self.max_a < 1 or self.max_b < 1:
            raise ValueError(f"window bounds must be >= 1, got {self.max_a}, {self.max_b}")

    @classmethod
    def square(cls, n: int) -> "Window":
        return cls(n, n)

    def __contains__(self, s: Slope) -> bool:
        return abs(s.a) <= self.max_a and abs(s.b) <= self.max_b

    def scaled(self, k: int) -> "Window":
        return Window(self.max_a * k, self.max_b * k)

    def covers(self, other: "Window") -> bool:
        return self.max_a >= other.max_a and self.max_b >= other.max_b

    def slopes(self) -> Iterator[Slope]:
        """Every canonical slope inside the window, ordered by ``(b, a)``."""
        yield ZERO
        for b in range(1, self.max_b + 1):
            for a in range(-self.max_a, self.max_a + 1):
                if gcd(a, b) == 1:
                    yield Slope(a, b)


def safety_window(s: Slope, t: Slope) -> Window:
    return Window(max(abs(s.a), abs(t.a), 1), max(s.b, t.b, 1))


def _ceil_div(n: int, d: int) -> int:
    return -((-n) // d)


def _t_bounds(x0: int, step: int, bound: int) -> tuple[Optional[int], Optional[int]]:
    """Range of t with ``|x0 + t*step| <= bound``; (None, None) means unconstrained."""
    if step == 0:
        return (None, None) if abs(x0) <= bound else (1, 0)
    if step < 0:
        x0, step = -x0, -step
    return _ceil_div(-bound - x0, step), (bound - x0) // step


def _window_t_range(s: Slope, window: Window) -> tuple[int, int, int, int]:
    x0, y0 = unit_solution(s)
    lo_a, hi_a = _t_bounds(x0, s.a, window.max_a)
    lo_b, hi_b = _t_bounds(y0, s.b, window.max_b)
    # a and b are never both zero, so at least one side is constrained
    lo = max(v for v in (lo_a, lo_b) if v is not None)
    hi = min(v for v in (hi_a, hi_b) if v is not None)
    return x0, y0, lo, hi


def neighbor_count(s: Slope, window: Window) -> int:
    _, _, lo, hi = _window_t_range(s, window)
    return max(0, hi - lo + 1)


def neighbors_in_window(s: Slope, window: Window) -> list[Slope]:
    """All Farey neighbours of ``s`` inside ``window``.

    The solutions of ``b_s*x - a_s*y = +1`` already meet every neighbour once
    (the ``-1`` family is their negation), so one family suffices here.
    """
    x0, y0, lo, hi = _window_t_range(s, window)
    return [canonicalize(x0 + t * s.a, y0 + t * s.b) for t in range(lo, hi + 1)]


def neighbor_family(s: Slope, t_range: Iterable[int]) -> list[Slope]:
    """Neighbours of ``s`` from both affine families ``eps*(x0, y0) + t*(a, b)``.

    Duplicates (the two families coincide up to sign after canonicalization)
    are dropped; the first occurrence wins.
    """
    x0, y0 = unit_solution(s)
    ts = list(t_range)
    seen: dict[Slope, None] = {}
    for eps in (1, -1):
        for t in ts:
            seen.setdefault(canonicalize(eps * x0 + t * s.a, eps * y0 + t * s.b))
    return list(seen)


def distance_in_window(
    s: Slope, t: Slope, window: Window, limit: Optional[int] = None
) -> Optional[int]:
    """Bidirectional BFS restricted to ``window``.

    Returns None when the endpoints are disconnected inside the window, or when
    the distance exceeds ``limit``.
    """
    if s == t:
        return 0
    if intersection_number(s, t) == 1:
        return 1 if limit is None or limit >= 1 else None
    if s not in window or t not in window:
        return None
    seen = ({s: 0}, {t: 0})
    fronts = ([s], [t])
    depth = [0, 0]
    while fronts[0] and fronts[1]:
        if limit is not None and depth[0] + depth[1] >= limit:
            return None
        cost = [sum(neighbor_count(v, window) for v in f) for f in fronts]
        side = 0 if cost[0] <= cost[1] else 1
        mine, other = seen[side], seen[1 - side]
        nxt = []
        d = depth[side] + 1
        for v in fronts[side]:
            for u in neighbors_in_window(v, window):
                if u in other:
                    return d + other[u]
                if u not in mine:
                    mine[u] = d
                    nxt.append(u)
        fronts[side][:] = nxt
        depth[side] = d
    return None


def distance(s: Slope, t: Slope, *, verify: bool = False, limit: Optional[int] = None) -> Optional[int]:
    """Exact Farey-graph distance.

    With ``verify=True`` the window is doubled until two successive answers
    agree. With ``limit`` set, returns None for pairs farther apart than it.
    """
    window = safety_window(s, t)
    d = distance_in_window(s, t, window, limit)
    if not verify:
        if d is None and limit is None:
            raise RuntimeError(f"{s} and {t} disconnected in their safety window")
        return d
    while True:
        window = window.scaled(2)
        wider = distance_in_window(s, t, window, limit)
        if wider == d and (d is not None or limit is not None):
            return d
        d = wider


@dataclass(frozen=True)
class GeodesicWitness:
    vertices: tuple[Slope, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def is_path(self) -> bool:
        return all(intersection_number(u, v) == 1 for u, v in zip(self.vertices, self.vertices[1:]))


def geodesic_witness(s: Slope, t: Slope) -> GeodesicWitness:
    """A shortest path from ``s`` to ``t``.

    Built backwards from ``t``: each predecessor is the least slope (by
    ``(b, a)``) that is adjacent to the current vertex and one step closer to
    ``s``. The result is deterministic.
    """
    d = distance(s, t)
    window = safety_window(s, t)
    path = [t]
    current = t
    for remaining in range(d - 1, 0, -1):
        for u in sorted(neighbors_in_window(current, window), key=lambda v: v.key):
            if distance_in_window(s, u, window, remaining) == remaining:
                current = u
                break
        else:
            raise RuntimeError(f"no predecessor for {current} at distance {remaining} from {s}")
        path.append(current)
    if d > 0:
        path.append(s)
    return GeodesicWitness(tuple(reversed(path)))


@dataclass(frozen=True)
class BallReport:
    """The slopes of a window within distance ``radius`` of ``center``."""

    center: Slope
    radius: int
    window: Window
    members: tuple[tuple[Slope, int], ...] = field(default=())

    def distances(self) -> dict[Slope, int]:
        return dict(self.members)

    def slopes(self) -> list[Slope]:
        return [s for s, _ in self.members]

    def __len__(self) -> int:
        return len(self.members)


def _ball_chunk(args: tuple[Slope, int, list[Slope]]) -> list[tuple[Slope, int]]:
    center, n, points = args
    out = []
    for p in points:
        d = distance(center, p, limit=n)
        if d is not None:
            out.append((p, d))
    return out


def ball(center: Slope, n: int, window: Window, workers: Optional[int] = None) -> BallReport:
    """Closed ball of radius ``n`` around ``center``, truncated to ``window``.

    Each lattice point of the window is tested on its own, so the report is
    exact for the window by construction. ``workers > 1`` spreads the points
    over a process pool.
    """
    if n < 0:
        raise ValueError("radius must be non-negative")
    points = list(window.slopes())
    if workers is None or workers <= 1:
        members = _ball_chunk((center, n, points))
    else:
        size = max(1, len(points) // (workers * 8))
        chunks = [(center, n, points[i:i + size]) for i in range(0, len(points), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            members = [m for part in pool.map(_ball_chunk, chunks) for m in part]
    members.sort(key=lambda m: m[0].key)
    return BallReport(center, n, window, tuple(members))


def default_workers() -> int:
    return max(1, min(8, os.cpu_count() or 1))


def oracle_distances(s: Slope, window: Window) -> dict[Slope, int]:
    """Single-source BFS over the finite graph of canonical slopes in ``window``."""
    if s not in window:
        return {}
    dist = {s: 0}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for u in neighbors_in_window(v, window):
            if u not in dist:
                dist[u] = dv
                queue.append(u)
    return dist


def oracle_distance_bfs(s: Slope, t: Slope, window: Window) -> Optional[int]:
    """Distance in the window-truncated graph, or None if ``t`` is unreachable there."""
    if s not in window or t not in window:
        return None
    if s == t:
        return 0
    dist = {s: 0}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for u in neighbors_in_window(v, window):
            if u not in dist:
                if u == t:
                    return dv
                dist[u] = dv
                queue.append(u)
    return None


__all__ = [
    "INFINITY",
    "ZERO",
    "Window",
    "BallReport",
    "GeodesicWitness",
    "safety_window",
    "neighbors_in_window",
    "neighbor_family",
    "neighbor_count",
    "distance",
    "distance_in_window",
    "geodesic_witness",
    "ball",
    "oracle_distances",
    "oracle_distance_bfs",
    "default_workers",
]
