"""SVG pictures of balls and cone covers in the upper half-plane."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from fractions import Fraction
from typing import Union

from .cover import ConeSector, CoverReport
from .metric import BallReport, Window

PALETTE = ["#000000", "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"]
MARGIN = 10
SVG_NS = "http://www.w3.org/2000/svg"

HEADER = (
    " Farey picture. Lattice point (a, b) is drawn at canvas "
    "x = {ox} + {scale}*a, y = {oy} - {scale}*b (pixels, y axis inverted, "
    "{scale} px per lattice unit). Window |a| <= {ma}, |b| <= {mb}. "
    "circle.member: one per ball member, filled by distance; path.cone: one per "
    "cone, a sector from the origin; line.exceptional: the lines X+, X-, Y. "
)


class _Canvas:
    def __init__(self, window: Window, scale: int):
        self.window = window
        self.scale = scale
        self.ox = MARGIN + window.max_a * scale
        self.oy = MARGIN + window.max_b * scale
        self.width = 2 * self.ox
        self.height = self.oy + MARGIN

    def xy(self, a: float, b: float) -> tuple[str, str]:
        return _num(self.ox + self.scale * a), _num(self.oy - self.scale * b)


def _num(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def _root(canvas: _Canvas) -> ET.Element:
    root = ET.Element(
        "svg",
        xmlns=SVG_NS,
        version="1.1",
        width=str(canvas.width),
        height=str(canvas.height),
        viewBox=f"0 0 {canvas.width} {canvas.height}",
    )
    w = canvas.window
    root.append(ET.Comment(HEADER.format(ox=canvas.ox, oy=canvas.oy, scale=canvas.scale, ma=w.max_a, mb=w.max_b)))
    x1, y1 = canvas.xy(-w.max_a, 0)
    x2, y2 = canvas.xy(w.max_a, 0)
    ET.SubElement(root, "line", {"class": "axis", "x1": x1, "y1": y1, "x2": x2, "y2": y2, "stroke": "#bbbbbb"})
    return root


def _lines(root: ET.Element, canvas: _Canvas) -> None:
    w = canvas.window
    g = ET.SubElement(root, "g", {"class": "lines", "stroke": "#888888", "stroke-dasharray": "4 2"})
    for name, (a1, b1, a2, b2) in (
        ("X+", (1, 0, 1, w.max_b)),
        ("X-", (-1, 0, -1, w.max_b)),
        ("Y", (-w.max_a, 1, w.max_a, 1)),
    ):
        x1, y1 = canvas.xy(a1, b1)
        x2, y2 = canvas.xy(a2, b2)
        ET.SubElement(g, "line", {"class": "exceptional", "data-name": name, "x1": x1, "y1": y1, "x2": x2, "y2": y2})


def _members(root: ET.Element, canvas: _Canvas, report: BallReport) -> None:
    g = ET.SubElement(root, "g", {"class": "members"})
    r = _num(max(1.0, canvas.scale / 4))
    for s, d in report.members:
        cx, cy = canvas.xy(s.a, s.b)
        ET.SubElement(g, "circle", {
            "class": "member", "cx": cx, "cy": cy, "r": r,
            "fill": PALETTE[d % len(PALETTE)], "data-slope": str(s), "data-distance": str(d),
        })


def _ray_end(window: Window, v: Fraction, side: int) -> tuple[float, float]:
    # where the ray of direction v leaves the window box
    x = float(window.max_a)
    y = float(v) * x
    if abs(y) > window.max_b:
        x = window.max_b / abs(float(v))
        y = float(v) * x
    return side * x, side * y


def _cones(root: ET.Element, canvas: _Canvas, cones: tuple[ConeSector, ...]) -> None:
    g = ET.SubElement(root, "g", {"class": "cones", "fill": "#1f77b4", "fill-opacity": "0.25"})
    ox, oy = canvas.xy(0, 0)
    for c in cones:
        x1, y1 = canvas.xy(*_ray_end(canvas.window, c.lo, c.side))
        x2, y2 = canvas.xy(*_ray_end(canvas.window, c.hi, c.side))
        ET.SubElement(g, "path", {
            "class": "cone", "d": f"M{ox} {oy}L{x1} {y1}L{x2} {y2}Z",
            "data-lo": str(c.lo), "data-hi": str(c.hi),
        })


def render_svg(report: Union[BallReport, CoverReport], scale: int = 8) -> str:
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    if isinstance(report, CoverReport):
        ball_report = report.ball
    else:
        ball_report = report
    canvas = _Canvas(ball_report.window, scale)
    root = _root(canvas)
    _lines(root, canvas)
    if isinstance(report, CoverReport):
        _cones(root, canvas, report.cones)
    _members(root, canvas, ball_report)
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"
