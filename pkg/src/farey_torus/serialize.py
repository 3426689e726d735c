"""Text forms for slopes and rationals, and JSON documents for every report type.

Slopes are written ``b/a`` and rationals ``p/q`` (always with a slash). Every
document is a plain dict; ``dumps`` fixes key order and indentation so equal
reports give byte-identical output.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .cover import ConeSector, CoverReport, SafeCone
from .mapping import EigenDirectionReport, MappingClass, OrbitReport, OrbitStep
from .metric import BallReport, Window
from .slope import CFExpansion, Slope, ZeroVectorError, canonicalize
from .surd import PeriodicCF, Surd


class SlopeSyntaxError(ValueError):
    def __init__(self, text: str, position: int, reason: str):
        super().__init__(f"bad slope {text!r} at position {position}: {reason}")
        self.text = text
        self.position = position
        self.reason = reason


_INT = re.compile(r"[+-]?\d+")


def parse_slope(text: str) -> Slope:
    """Parse ``b/a`` (or ``inf``) into a canonical slope."""
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    if stripped.lower() == "inf":
        return Slope(0, 1)
    m = _INT.match(stripped)
    if not m:
        raise SlopeSyntaxError(text, offset, "expected an integer numerator")
    pos = m.end()
    if pos >= len(stripped) or stripped[pos] != "/":
        raise SlopeSyntaxError(text, offset + pos, "expected '/'")
    m2 = _INT.fullmatch(stripped, pos + 1)
    if not m2:
        raise SlopeSyntaxError(text, offset + pos + 1, "expected an integer denominator")
    b, a = int(m.group()), int(m2.group())
    try:
        return canonicalize(a, b)
    except ZeroVectorError:
        raise SlopeSyntaxError(text, offset, "0/0 is not a slope") from None


def slope_str(s: Slope) -> str:
    return str(s)


def rational_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den or 1))


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def window_to_dict(w: Window) -> dict:
    return {"maxA": w.max_a, "maxB": w.max_b}


def window_from_dict(d: dict) -> Window:
    return Window(d["maxA"], d["maxB"])


def ball_to_dict(r: BallReport) -> dict:
    return {
        "center": slope_str(r.center),
        "radius": r.radius,
        "window": window_to_dict(r.window),
        "members": [{"slope": slope_str(s), "distance": d} for s, d in r.members],
    }


def ball_from_dict(d: dict) -> BallReport:
    members = tuple((parse_slope(m["slope"]), m["distance"]) for m in d["members"])
    return BallReport(parse_slope(d["center"]), d["radius"], window_from_dict(d["window"]), members)


def cone_to_dict(c: ConeSector | None) -> dict | None:
    if c is None:
        return None
    return {"lo": rational_str(c.lo), "hi": rational_str(c.hi)}


def cone_from_dict(d: dict | None) -> ConeSector | None:
    if d is None:
        return None
    return ConeSector(parse_rational(d["lo"]), parse_rational(d["hi"]))


def cover_to_dict(r: CoverReport) -> dict:
    return {
        "n": r.n,
        "window": window_to_dict(r.window),
        "cones": [
            dict(cone_to_dict(c), anchor=slope_str(a)) for c, a in zip(r.cones, r.anchors)
        ],
        "exceptional": {"lines": ["X+", "X-", "Y"], "points": ["1/0", "0/1"]},
        "exceptionalPoints": [slope_str(s) for s in r.exceptional_points],
        "gaps": [cone_to_dict(g) for g in r.gaps],
        "safeCone": cone_to_dict(r.safe_cone),
        "certificates": {"disjoint": r.disjoint, "covering": r.covering, "safe": r.safe},
        "ball": ball_to_dict(r.ball),
    }


def cover_from_dict(d: dict) -> CoverReport:
    cert = d["certificates"]
    return CoverReport(
        n=d["n"],
        window=window_from_dict(d["window"]),
        cones=tuple(cone_from_dict(c) for c in d["cones"]),
        anchors=tuple(parse_slope(c["anchor"]) for c in d["cones"]),
        exceptional_points=tuple(parse_slope(s) for s in d["exceptionalPoints"]),
        gaps=tuple(cone_from_dict(g) for g in d["gaps"]),
        safe_cone=cone_from_dict(d["safeCone"]),
        disjoint=cert["disjoint"],
        covering=cert["covering"],
        safe=cert["safe"],
        ball=ball_from_dict(d["ball"]),
    )


def safe_cone_to_dict(r: SafeCone) -> dict:
    return {
        "n": r.n,
        "window": window_to_dict(r.window),
        "safeCone": cone_to_dict(r.cone),
        "certificate": r.certified,
        "checkedMembers": r.checked,
    }


def safe_cone_from_dict(d: dict) -> SafeCone:
    return SafeCone(
        cone_from_dict(d["safeCone"]), d["n"], window_from_dict(d["window"]),
        d["certificate"], d["checkedMembers"],
    )


def orbit_to_dict(r: OrbitReport) -> dict:
    return {
        "matrix": str(r.matrix),
        "start": slope_str(r.start),
        "steps": [{"n": st.n, "image": slope_str(st.image), "dist": st.dist} for st in r.steps],
        "growthSlopeEstimate": rational_str(r.growth),
        "estimator": "second-half secant",
        "lowerOffset": rational_str(r.lower_offset),
        "upperOffset": rational_str(r.upper_offset),
    }


def orbit_from_dict(d: dict) -> OrbitReport:
    return OrbitReport(
        matrix=MappingClass.parse(d["matrix"]),
        start=parse_slope(d["start"]),
        steps=tuple(OrbitStep(st["n"], parse_slope(st["image"]), st["dist"]) for st in d["steps"]),
        growth=parse_rational(d["growthSlopeEstimate"]),
        lower_offset=parse_rational(d["lowerOffset"]),
        upper_offset=parse_rational(d["upperOffset"]),
    )


def surd_to_dict(x: Surd) -> dict:
    return {"p": rational_str(x.p), "q": rational_str(x.q), "d": x.d}


def surd_from_dict(d: dict) -> Surd:
    return Surd(parse_rational(d["p"]), parse_rational(d["q"]), d["d"])


def eigen_to_dict(r: EigenDirectionReport) -> dict:
    return {
        "matrix": str(r.matrix),
        "trace": r.trace,
        "discriminant": r.discriminant,
        "eigenvalues": [surd_to_dict(x) for x in r.eigenvalues],
        "attractingDirection": surd_to_dict(r.attracting),
        "repellingDirection": surd_to_dict(r.repelling),
        "cfPrefix": list(r.cf_prefix.coefficients),
        "preperiod": list(r.cf.preperiod),
        "periodic": list(r.cf.period),
        "periodState": list(r.cf.period_state),
        "periodVerified": r.period_verified,
        # on the torus every Anosov fixed ray is irrational, so never a Farey vertex
        "irrational": True,
    }


def eigen_from_dict(d: dict) -> EigenDirectionReport:
    cf = PeriodicCF(
        prefix=tuple(d["cfPrefix"]),
        preperiod=tuple(d["preperiod"]),
        period=tuple(d["periodic"]),
        period_state=tuple(d["periodState"]),
    )
    return EigenDirectionReport(
        matrix=MappingClass.parse(d["matrix"]),
        trace=d["trace"],
        discriminant=d["discriminant"],
        eigenvalues=tuple(surd_from_dict(x) for x in d["eigenvalues"]),
        attracting=surd_from_dict(d["attractingDirection"]),
        repelling=surd_from_dict(d["repellingDirection"]),
        cf_prefix=CFExpansion(tuple(d["cfPrefix"]), exact=False),
        cf=cf,
        period_verified=d["periodVerified"],
    )
