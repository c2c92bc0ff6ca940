from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from eostrata.ff import (
    FieldError,
    NonInvertible,
    Poly,
    field,
    parse_field,
    pcube,
    pdivmod,
    peval,
    pfrob,
    pgcd,
    pifrob,
    pmul,
    presultant,
    proots,
    psplit3,
    ptrim,
)

FIELDS = [field(3, k) for k in range(1, 7)]
SMALL = FIELDS[:3]


def elems(F):
    return st.integers(0, F.q - 1)


def polys(F, max_deg=6):
    return st.lists(elems(F), max_size=max_deg + 1).map(ptrim)


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.label())
def test_nonzero_elements_are_units_of_order_dividing_q_minus_1(F):
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1
        assert F.power(a, F.q - 1) == 1


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.label())
def test_frobenius_is_an_automorphism_of_order_k(F):
    for a in range(F.q):
        assert F.frob_power(a, F.k) == a
        assert F.ifrob[F.frob[a]] == a
    for a, b in [(1, 2), (F.q - 1, F.q // 2), (F.t.v, F.t.v)]:
        assert F.frob[F.mul(a, b)] == F.mul(F.frob[a], F.frob[b])
        assert F.frob[F.add(a, b)] == F.add(F.frob[a], F.frob[b])


@pytest.mark.parametrize("F", SMALL, ids=lambda F: F.label())
def test_field_axioms(F):
    @given(elems(F), elems(F), elems(F))
    @settings(max_examples=200, deadline=None)
    def check(a, b, c):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.sub(F.add(a, b), b) == a
        if b:
            assert F.mul(F.div(a, b), b) == a
    check()


def test_inverse_of_zero_raises():
    with pytest.raises(NonInvertible):
        field(3, 2).inv(0)


@pytest.mark.parametrize("bad", ["3^0", "3^7", "2^x", "5^2"])
def test_parse_field_rejects(bad):
    with pytest.raises((FieldError, ValueError)):
        parse_field(bad)


def test_parse_field_default_moduli_are_conway():
    assert parse_field("3^2").modulus == (2, 2, 1)
    assert parse_field("9").k == 2
    with pytest.raises(FieldError):
        field(3, 2, (2, 0, 1))  # t^2 - 1 splits


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.label())
def test_to_str_round_trips_through_parser(F):
    from eostrata.curve import parse_element
    for a in range(0, F.q, max(1, F.q // 50)):
        assert parse_element(F, F.to_str(a)) == a


@pytest.mark.parametrize("F", SMALL, ids=lambda F: F.label())
def test_poly_division_and_gcd(F):
    @given(polys(F), polys(F).filter(bool))
    @settings(max_examples=100, deadline=None)
    def check(a, b):
        q, r = pdivmod(F, a, b)
        assert ptrim(pmul(F, q, b)) == ptrim(_sub(F, a, r))
        assert len(r) < len(b)
        g = pgcd(F, a, b)
        assert not pdivmod(F, b, g)[1]
        if a:
            assert not pdivmod(F, a, g)[1]
    check()


def _sub(F, a, b):
    from eostrata.ff import psub
    return psub(F, a, b)


@pytest.mark.parametrize("F", SMALL, ids=lambda F: F.label())
def test_cube_and_split(F):
    @given(polys(F))
    @settings(max_examples=100, deadline=None)
    def check(a):
        c = pcube(F, a)
        assert c == pmul(F, a, pmul(F, a, a))
        q0, q1, q2 = psplit3(c)
        assert not q1 and not q2
        assert pifrob(F, q0) == a
        assert pfrob(F, pifrob(F, a)) == a
    check()


@pytest.mark.parametrize("F", SMALL, ids=lambda F: F.label())
def test_resultant_vanishes_iff_common_root_over_closure(F):
    @given(polys(F, 4).filter(lambda p: len(p) > 1), polys(F, 4).filter(lambda p: len(p) > 1))
    @settings(max_examples=100, deadline=None)
    def check(a, b):
        common = len(pgcd(F, a, b)) > 1
        assert (presultant(F, a, b) == 0) == common
    check()


def test_roots_and_eval():
    F = field(3, 2)
    p = pmul(F, (F.neg[F.t.v], 1), (F.neg[1], 1))
    assert sorted(proots(F, p)) == sorted([F.t.v, 1])
    assert peval(F, p, F.t.v) == 0


def test_poly_wrapper_arithmetic():
    F = field(3, 1)
    x = Poly(F, [0, 1])
    assert (x * x + x).c == (0, 1, 1)
