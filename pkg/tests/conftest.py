from __future__ import annotations

import random

import pytest

from eostrata.curve import FAMILIES, CurveError, FFElement, make_family
from eostrata.ff import ptrim

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(n: int, ok: bool, detail: str = "") -> None:
    prev = ACCEPTANCE.get(n)
    if prev is not None:
        ok = ok and prev[0]
        detail = "; ".join(d for d in (prev[1], detail) if d)
    ACCEPTANCE[n] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


def random_curve(family: str, F, rng: random.Random):
    names = FAMILIES[family].free
    while True:
        params = {n: F.decode(rng.randrange(F.q)) for n in names}
        try:
            return make_family(family, params, F)
        except CurveError:
            continue


def random_element(curve, rng: random.Random, deg: int = 3, den_deg: int = 2) -> FFElement:
    F = curve.field
    num = [ptrim([rng.randrange(F.q) for _ in range(rng.randint(0, deg + 1))]) for _ in range(3)]
    den = tuple(rng.randrange(F.q) for _ in range(rng.randint(0, den_deg))) + (1,)
    return FFElement(curve, num, den)


@pytest.fixture
def rng():
    return random.Random(20240611)
