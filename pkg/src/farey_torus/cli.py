"""Command-line front end: ``farey <subcommand> ...``.

Every subcommand prints one JSON document (or writes it to ``--out``). Exit
status is 0 on success, 2 for bad arguments and 3 when the computation itself
fails; in both failure cases the document is ``{"error": ..., "kind": ...}``.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence

from .cache import DistanceCache
from .cover import CoverError, NoSafeConeError, build_cover, find_safe_cone
from .mapping import MappingClass, NotAnosovError, eigen_directions, orbit_growth
from .metric import Window, ball, distance, geodesic_witness
from .serialize import (
    SlopeSyntaxError,
    ball_to_dict,
    cover_to_dict,
    dumps,
    eigen_to_dict,
    orbit_to_dict,
    parse_slope,
    safe_cone_to_dict,
)
from .svg import render_svg

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE = 0, 2, 3

SUBCOMMANDS = ("dist", "ball", "cover", "safe-cone", "orbit", "eigen", "render")

_INT = re.compile(r"[+-]?\d+")


class UsageError(Exception):
    pass


def exact_int(text: str) -> int:
    if not _INT.fullmatch(text.strip()):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(text)


def nonneg_int(text: str) -> int:
    n = exact_int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return n


def pos_int(text: str) -> int:
    n = exact_int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return n


def window_arg(text: str) -> Window:
    parts = text.split(",")
    if len(parts) not in (1, 2):
        raise argparse.ArgumentTypeError(f"window is A or A,B: {text!r}")
    a = pos_int(parts[0])
    b = pos_int(parts[1]) if len(parts) == 2 else a
    return Window(a, b)


def slope_arg(text: str):
    try:
        return parse_slope(text)
    except SlopeSyntaxError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def matrix_arg(text: str) -> MappingClass:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"matrix is p,q,r,s: {text!r}")
    try:
        return MappingClass(*(exact_int(p) for p in parts))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="farey", description="Exact Farey-graph computations on torus slopes.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", type=Path, help="write the JSON report here instead of stdout")

    p = sub.add_parser("dist", help="distance between two slopes")
    p.add_argument("--from", dest="source", type=slope_arg, required=True)
    p.add_argument("--to", dest="target", type=slope_arg, required=True)
    p.add_argument("--witness", action="store_true", help="include a geodesic")
    p.add_argument("--verify", action="store_true", help="check window stability by doubling")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--compact-cache", action="store_true")
    common(p)

    p = sub.add_parser("ball", help="windowed ball around a slope")
    p.add_argument("--center", type=slope_arg, required=True)
    p.add_argument("-n", type=nonneg_int, required=True)
    p.add_argument("--window", type=window_arg, required=True)
    p.add_argument("--workers", type=pos_int, default=1)
    common(p)

    for name in ("cover", "safe-cone"):
        p = sub.add_parser(name)
        p.add_argument("-n", type=nonneg_int, required=True)
        p.add_argument("--window", type=window_arg, required=True)
        p.add_argument("--workers", type=pos_int, default=1)
        common(p)

    p = sub.add_parser("orbit", help="distance growth along an Anosov orbit")
    p.add_argument("--matrix", type=matrix_arg, required=True)
    p.add_argument("--start", type=slope_arg, required=True)
    p.add_argument("--steps", type=pos_int, required=True)
    common(p)

    p = sub.add_parser("eigen", help="fixed directions of an Anosov class")
    p.add_argument("--matrix", type=matrix_arg, required=True)
    p.add_argument("-k", type=pos_int, default=10)
    common(p)

    p = sub.add_parser("render", help="SVG picture of a ball or a cover")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--ball", action="store_true")
    mode.add_argument("--cover", action="store_true")
    p.add_argument("--center", type=slope_arg, default=parse_slope("1/0"))
    p.add_argument("-n", type=nonneg_int, required=True)
    p.add_argument("--window", type=window_arg, required=True)
    p.add_argument("--svg", type=Path, required=True)
    p.add_argument("--scale", type=pos_int, default=8)
    p.add_argument("--workers", type=pos_int, default=1)
    common(p)
    return parser


@dataclass
class CommandRequest:
    subcommand: str
    params: dict[str, Any] = field(default_factory=dict)
    out: Optional[Path] = None

    def __post_init__(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")


def parse_request(argv: Sequence[str]) -> CommandRequest:
    ns = vars(build_parser().parse_args(list(argv)))
    sub = ns.pop("subcommand")
    out = ns.pop("out", None)
    return CommandRequest(sub, ns, out)


def _dist(p: dict) -> dict:
    s, t = p["source"], p["target"]
    if p.get("no_cache"):
        d = distance(s, t, verify=p.get("verify", False))
    else:
        cache = DistanceCache()
        d = cache.lookup_or_compute(s, t, verify=p.get("verify", False))
        if p.get("compact_cache"):
            cache.compact()
    doc = {"from": str(s), "to": str(t), "distance": d}
    if p.get("witness"):
        doc["geodesic"] = [str(v) for v in geodesic_witness(s, t).vertices]
    return doc


def _render(p: dict) -> dict:
    if p["cover"]:
        report = build_cover(p["n"], p["window"], workers=p["workers"])
        cones = len(report.cones)
        members = len(report.ball)
    else:
        report = ball(p["center"], p["n"], p["window"], workers=p["workers"])
        cones = 0
        members = len(report)
    svg = render_svg(report, scale=p["scale"])
    p["svg"].parent.mkdir(parents=True, exist_ok=True)
    p["svg"].write_text(svg, encoding="utf-8")
    return {"svg": str(p["svg"]), "markers": members, "sectors": cones, "scale": p["scale"]}


def run(req: CommandRequest) -> tuple[int, dict]:
    """Execute a request; returns the exit status and the JSON document."""
    p = req.params
    try:
        if req.subcommand == "dist":
            doc = _dist(p)
        elif req.subcommand == "ball":
            doc = ball_to_dict(ball(p["center"], p["n"], p["window"], workers=p["workers"]))
        elif req.subcommand == "cover":
            doc = cover_to_dict(build_cover(p["n"], p["window"], workers=p["workers"]))
        elif req.subcommand == "safe-cone":
            doc = safe_cone_to_dict(find_safe_cone(p["n"], p["window"], workers=p["workers"]))
        elif req.subcommand == "orbit":
            doc = orbit_to_dict(orbit_growth(p["matrix"], p["start"], p["steps"]))
        elif req.subcommand == "eigen":
            doc = eigen_to_dict(eigen_directions(p["matrix"], p["k"]))
        else:
            doc = _render(p)
    except NoSafeConeError as exc:
        return EXIT_COMPUTE, {
            "error": str(exc),
            "kind": "no-safe-cone",
            "obstructing": [str(s) for s in exc.obstructing[:50]],
        }
    except (NotAnosovError, CoverError, ArithmeticError, RuntimeError, ValueError) as exc:
        return EXIT_COMPUTE, {"error": str(exc), "kind": type(exc).__name__}
    return EXIT_OK, doc


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        req = parse_request(argv)
    except UsageError as exc:
        sys.stdout.write(dumps({"error": str(exc), "kind": "usage"}))
        return EXIT_USAGE
    status, doc = run(req)
    text = dumps(doc)
    if req.out is not None and status == EXIT_OK:
        req.out.parent.mkdir(parents=True, exist_ok=True)
        req.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
