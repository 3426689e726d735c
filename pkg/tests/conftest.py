from __future__ import annotations

import random
from math import gcd

import pytest
from hypothesis import strategies as st

from farey_torus.mapping import MappingClass
from farey_torus.slope import Slope, canonicalize, ext_gcd

_CRITERIA: list[tuple[int, str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        number, text = marker.args
        _CRITERIA.append((number, text, "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    merged: dict[int, tuple[str, str]] = {}
    for number, text, verdict in _CRITERIA:
        prev = merged.get(number, (text, "PASS"))[1]
        merged[number] = (text, "FAIL" if "FAIL" in (prev, verdict) else "PASS")
    terminalreporter.section("acceptance criteria")
    for number, (text, verdict) in sorted(merged.items()):
        terminalreporter.write_line(f"[{verdict}] criterion {number}: {text}")


def slopes_in(max_a: int, max_b: int):
    """Hypothesis strategy: canonical slopes with |a| <= max_a, b <= max_b."""
    return (
        st.tuples(st.integers(-max_a, max_a), st.integers(0, max_b))
        .filter(lambda v: v != (0, 0) and gcd(*v) == 1)
        .map(lambda v: canonicalize(*v))
    )


@st.composite
def unimodular(draw, bound: int = 6, det: int | None = None):
    """Hypothesis strategy: integer matrices with determinant +-1 and small entries."""
    p = draw(st.integers(-bound, bound))
    r = draw(st.integers(-bound, bound).filter(lambda x: gcd(p, x) == 1))
    _, u, v = ext_gcd(p, r)
    sign = det if det is not None else draw(st.sampled_from([1, -1]))
    k = draw(st.integers(-3, 3))
    s, q = u * sign, -v * sign
    return MappingClass(p, q + k * p, r, s + k * r)


def random_unimodular(rng: random.Random, bound: int) -> MappingClass:
    """A matrix with |det| = 1 and every entry bounded by ``bound`` in absolute value."""
    while True:
        p, r = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if gcd(p, r) != 1:
            continue
        _, u, v = ext_gcd(p, r)
        sign = rng.choice((1, -1))
        s0, q0 = u * sign, -v * sign
        ks = [k for k in range(-2 * bound - 2, 2 * bound + 3)
              if abs(q0 + k * p) <= bound and abs(s0 + k * r) <= bound]
        if ks:
            k = rng.choice(ks)
            return MappingClass(p, q0 + k * p, r, s0 + k * r)


@pytest.fixture
def s():
    """Shorthand constructor: s(b, a) builds the slope written b/a."""
    return lambda b, a: canonicalize(a, b)


__all__ = ["slopes_in", "unimodular", "random_unimodular", "Slope"]
