import json
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import slopes_in
from farey_torus import cli
from farey_torus.cache import DistanceCache, cache_path
from farey_torus.cover import NoSafeConeError, build_cover, find_safe_cone
from farey_torus.mapping import MappingClass, eigen_directions, orbit_growth
from farey_torus.metric import Window, ball, distance
from farey_torus.serialize import (
    SlopeSyntaxError,
    ball_from_dict,
    ball_to_dict,
    cover_from_dict,
    cover_to_dict,
    dumps,
    eigen_from_dict,
    eigen_to_dict,
    orbit_from_dict,
    orbit_to_dict,
    parse_rational,
    parse_slope,
    rational_str,
    safe_cone_from_dict,
    safe_cone_to_dict,
)
from farey_torus.slope import INFINITY, Slope
from farey_torus.svg import SVG_NS, render_svg

NS = {"svg": SVG_NS}


def markers(svg: str):
    return ET.fromstring(svg).findall(".//svg:circle[@class='member']", NS)


def cone_paths(svg: str):
    return ET.fromstring(svg).findall(".//svg:path[@class='cone']", NS)


@pytest.fixture(autouse=True)
def private_cache(tmp_path, monkeypatch):
    path = tmp_path / "cache" / "distances.txt"
    monkeypatch.setenv("FAREY_CACHE", str(path))
    return path


def test_parse_slope_examples():
    assert parse_slope("2/5") == Slope(5, 2)
    assert parse_slope("inf") == INFINITY
    assert parse_slope("4/6") == Slope(3, 2)
    assert parse_slope(" -3/7") == Slope(-7, 3)
    assert parse_slope("1/0") == INFINITY


@pytest.mark.parametrize(
    "text, position",
    [("0/0", 0), ("x/2", 0), ("3", 1), ("3/", 2), ("3/4/5", 2), ("3/a", 2), ("  7-1", 3)],
)
def test_parse_slope_errors_carry_position(text, position):
    with pytest.raises(SlopeSyntaxError) as info:
        parse_slope(text)
    assert info.value.position == position
    assert info.value.text == text


@given(slopes_in(1000, 1000))
def test_slope_text_round_trip(s):
    assert parse_slope(str(s)) == s


@given(st.fractions())
def test_rational_text_round_trip(x):
    assert parse_rational(rational_str(x)) == x
    assert "/" in rational_str(x)


def test_ball_json_round_trip():
    r = ball(INFINITY, 2, Window(8, 6))
    doc = ball_to_dict(r)
    assert ball_from_dict(json.loads(dumps(doc))) == r
    assert dumps(ball_to_dict(ball_from_dict(doc))) == dumps(doc)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_cover_json_round_trip(n):
    r = build_cover(n, Window(20, 20))
    doc = json.loads(dumps(cover_to_dict(r)))
    assert cover_from_dict(doc) == r


def test_safe_cone_json_round_trip():
    r = find_safe_cone(2, Window(30, 30))
    text = dumps(safe_cone_to_dict(r))
    back = safe_cone_from_dict(json.loads(text))
    assert back == r
    assert isinstance(back.cone.lo, Fraction)


def test_orbit_json_round_trip():
    r = orbit_growth(MappingClass(2, 1, 1, 1), Slope(1, 0), 4)
    assert orbit_from_dict(json.loads(dumps(orbit_to_dict(r)))) == r


def test_eigen_json_round_trip():
    r = eigen_directions(MappingClass(3, 2, 1, 1), 8)
    assert eigen_from_dict(json.loads(dumps(eigen_to_dict(r)))) == r


def test_serialization_is_deterministic():
    a = dumps(cover_to_dict(build_cover(2, Window(15, 15))))
    b = dumps(cover_to_dict(build_cover(2, Window(15, 15), workers=2)))
    assert a == b and a.endswith("\n")


def test_cache_path_honours_environment(private_cache):
    assert cache_path() == private_cache


def test_cache_round_trip(private_cache):
    cache = DistanceCache()
    pairs = [(INFINITY, parse_slope("2/5")), (parse_slope("13/34"), parse_slope("-1/3"))]
    values = [cache.lookup_or_compute(s, t) for s, t in pairs]
    assert values == [distance(s, t) for s, t in pairs]
    again = DistanceCache()
    assert len(again) == 2
    for (s, t), d in zip(pairs, values):
        assert again.get(t, s) == d


def test_cache_refuses_entries_from_small_windows(private_cache):
    cache = DistanceCache()
    t = parse_slope("2/5")
    cache.put(INFINITY, t, 99, Window(1, 1))
    assert cache.get(INFINITY, t) is None
    assert cache.lookup_or_compute(INFINITY, t) == 3
    assert DistanceCache().get(INFINITY, t) == 3


def test_cache_keeps_larger_window_on_load(private_cache):
    cache = DistanceCache()
    t = parse_slope("2/5")
    cache.put(INFINITY, t, 3, Window(10, 10))
    cache.put(INFINITY, t, 7, Window(5, 5))
    assert DistanceCache().get(INFINITY, t) == 3


def test_cache_compaction_is_bit_identical(private_cache):
    cache = DistanceCache()
    for text in ("2/5", "3/8", "-1/2", "5/1"):
        cache.lookup_or_compute(INFINITY, parse_slope(text))
    cache.lookup_or_compute(INFINITY, parse_slope("2/5"), verify=True)
    cache.compact()
    first = private_cache.read_bytes()
    reloaded = DistanceCache()
    assert reloaded.entries == cache.entries
    reloaded.compact()
    assert private_cache.read_bytes() == first
    assert len(first.splitlines()) == 4


def test_cache_rejects_garbage(private_cache):
    private_cache.parent.mkdir(parents=True)
    private_cache.write_text("1/0 2/5 three 5 5\n")
    with pytest.raises(ValueError, match=":1:"):
        DistanceCache()


def test_svg_ball_markers():
    r = ball(INFINITY, 1, Window(10, 10))
    svg = render_svg(r)
    assert len(markers(svg)) == 22 == len(r)
    slopes = {m.get("data-slope") for m in markers(svg)}
    assert slopes == {str(t) for t in r.slopes()}
    names = {e.get("data-name") for e in ET.fromstring(svg).findall(".//svg:line[@class='exceptional']", NS)}
    assert names == {"X+", "X-", "Y"}


def test_svg_n0_single_marker():
    svg = render_svg(ball(INFINITY, 0, Window(4, 4)))
    (m,) = markers(svg)
    assert m.get("data-slope") == "1/0" and m.get("data-distance") == "0"


def test_svg_cover_counts():
    r1 = build_cover(1, Window(10, 10))
    assert cone_paths(render_svg(r1)) == []
    r2 = build_cover(2, Window(20, 20))
    svg = render_svg(r2, scale=3)
    assert len(cone_paths(svg)) == len(r2.cones)
    assert len(markers(svg)) == len(r2.ball)
    with pytest.raises(ValueError):
        render_svg(r2, scale=0)


def run_main(argv, capsys):
    status = cli.main(argv)
    out = capsys.readouterr().out
    return status, (json.loads(out) if out else None)


def test_cli_dist(capsys):
    status, doc = run_main(["dist", "--from", "1/0", "--to", "2/5", "--witness"], capsys)
    assert status == 0
    assert doc["distance"] == 3
    assert doc["geodesic"] == ["1/0", "0/1", "1/2", "2/5"]
    status, doc = run_main(["dist", "--from", "inf", "--to", "2/5", "--no-cache", "--verify"], capsys)
    assert status == 0 and doc["distance"] == 3


def test_cli_dist_uses_cache(private_cache, capsys):
    run_main(["dist", "--from", "1/0", "--to", "3/8", "--compact-cache"], capsys)
    assert private_cache.read_text().split()[:3] == ["1/0", "3/8", "3"]


def test_cli_ball_n0(capsys):
    status, doc = run_main(["ball", "--center", "1/0", "-n", "0", "--window", "5"], capsys)
    assert status == 0
    assert ball_from_dict(doc) == ball(INFINITY, 0, Window(5, 5))


def test_cli_safe_cone(capsys):
    status, doc = run_main(["safe-cone", "-n", "2", "--window", "40"], capsys)
    assert status == 0
    assert safe_cone_from_dict(doc) == find_safe_cone(2, Window(40, 40))


def test_cli_cover_and_out(tmp_path, capsys):
    out = tmp_path / "r" / "cover.json"
    status, doc = run_main(["cover", "-n", "2", "--window", "20,15", "--out", str(out)], capsys)
    assert status == 0 and doc is None
    assert cover_from_dict(json.loads(out.read_text())) == build_cover(2, Window(20, 15))


def test_cli_orbit_and_eigen(capsys):
    status, doc = run_main(["orbit", "--matrix", "2,1,1,1", "--start", "0/1", "--steps", "3"], capsys)
    assert status == 0 and [st["dist"] for st in doc["steps"]] == [1, 2, 3]
    status, doc = run_main(["eigen", "--matrix", "2,1,1,1", "-k", "5"], capsys)
    assert status == 0 and eigen_from_dict(doc).cf.period == (1,)


def test_cli_render(tmp_path, capsys):
    svg = tmp_path / "ball.svg"
    status, doc = run_main(["render", "--ball", "-n", "1", "--window", "10", "--svg", str(svg)], capsys)
    assert status == 0 and doc["markers"] == 22
    assert len(markers(svg.read_text())) == 22


@pytest.mark.parametrize(
    "argv",
    [
        ["ball", "--center", "1/0", "-n", "-1", "--window", "5"],
        ["ball", "--center", "1/0", "-n", "1", "--window", "1.5"],
        ["dist", "--from", "0/0", "--to", "1/2"],
        ["orbit", "--matrix", "2,0,0,1", "--start", "0/1", "--steps", "2"],
        ["frobnicate"],
        [],
    ],
)
def test_cli_usage_errors(argv, capsys):
    status, doc = run_main(argv, capsys)
    assert status == 2 and doc["kind"] == "usage"


def test_cli_computation_errors(capsys, monkeypatch):
    status, doc = run_main(["orbit", "--matrix", "1,1,0,1", "--start", "0/1", "--steps", "2"], capsys)
    assert status == 3 and doc["kind"] == "NotAnosovError"

    def refuse(n, window, workers=None):
        raise NoSafeConeError("no gap", [INFINITY])

    monkeypatch.setattr(cli, "find_safe_cone", refuse)
    status, doc = run_main(["safe-cone", "-n", "1", "--window", "5"], capsys)
    assert status == 3 and doc["obstructing"] == ["1/0"]
