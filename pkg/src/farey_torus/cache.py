"""Persistent distance cache.

One entry per line, ``b/a b'/a' d windowA windowB``: the slope pair (ordered by
``(b, a)``), the distance, and the window it was computed in. The file is
append-only; ``compact`` rewrites it through a temporary file and an atomic
rename. Appends take an exclusive ``flock`` so there is a single writer at a
time.
"""

from __future__ import annotations

import fcntl
import os
import tempfile
from pathlib import Path
from typing import Optional

from .metric import Window, distance, safety_window
from .serialize import parse_slope
from .slope import Slope

DEFAULT_PATH = Path("~/.cache/farey_torus/distances.txt")


def cache_path() -> Path:
    return Path(os.environ.get("FAREY_CACHE") or DEFAULT_PATH).expanduser()


def _ordered(s: Slope, t: Slope) -> tuple[Slope, Slope]:
    return (s, t) if s.key <= t.key else (t, s)


class DistanceCache:
    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path) if path is not None else cache_path()
        self.entries: dict[tuple[Slope, Slope], tuple[int, Window]] = {}
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    s, t, d, wa, wb = line.split()
                    self._merge(parse_slope(s), parse_slope(t), int(d), Window(int(wa), int(wb)))
                except ValueError as exc:
                    raise ValueError(f"{self.path}:{lineno}: {exc}") from None

    def _merge(self, s: Slope, t: Slope, d: int, window: Window) -> bool:
        key = _ordered(s, t)
        old = self.entries.get(key)
        if old is not None and not window.covers(old[1]):
            return False
        self.entries[key] = (d, window)
        return True

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, s: Slope, t: Slope, window: Optional[Window] = None) -> Optional[int]:
        """Cached distance, or None if absent or computed in a window too small."""
        hit = self.entries.get(_ordered(s, t))
        if hit is None:
            return None
        needed = window if window is not None else safety_window(s, t)
        return hit[0] if hit[1].covers(needed) else None

    def put(self, s: Slope, t: Slope, d: int, window: Window) -> None:
        if not self._merge(s, t, d, window):
            return
        u, v = _ordered(s, t)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(f"{u} {v} {d} {window.max_a} {window.max_b}\n")
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    def lookup_or_compute(self, s: Slope, t: Slope, verify: bool = False) -> int:
        window = safety_window(s, t)
        d = self.get(s, t, window)
        if d is None:
            d = distance(s, t, verify=verify)
            self.put(s, t, d, window.scaled(2) if verify else window)
        return d

    def compact(self) -> None:
        """Rewrite the file with one line per pair, sorted."""
        self.path.parent.mkdir(parents=True, exist_ok=True)
        lines = [
            f"{u} {v} {d} {w.max_a} {w.max_b}\n"
            for (u, v), (d, w) in sorted(self.entries.items(), key=lambda kv: (kv[0][0].key, kv[0][1].key))
        ]
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".farey-cache-")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.writelines(lines)
        os.replace(tmp, self.path)
