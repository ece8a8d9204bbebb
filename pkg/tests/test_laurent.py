import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import count_plane_partitions
from toricsheaves.laurent import BiLaurentPoly, LaurentPoly, Window, bilaurent_mul, macmahon, poly_add, poly_mul

polys = st.dictionaries(st.integers(-6, 6), st.integers(-20, 20), max_size=6).map(LaurentPoly)
bipolys = st.dictionaries(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-9, 9), max_size=6
).map(BiLaurentPoly)


def q(*pairs):
    return LaurentPoly(dict(pairs))


def test_add_examples():
    assert poly_add(q((1, 4)), LaurentPoly()) == q((1, 4))
    assert poly_add(q((1, 1)), q((1, -1))).terms == {}
    assert str(poly_add(q((7, -4)), q((9, 36)))) == "-4*q^7 + 36*q^9"


def test_mul_examples():
    assert poly_mul(q((0, 1), (1, 1)), q((0, 1), (1, -1))) == q((0, 1), (2, -1))
    assert poly_mul(q((-1, 1)), q((1, 1))) == LaurentPoly.one()
    assert poly_mul(q((2, 2)), q((-2, 3))) == q((0, 6))


def test_no_zero_coefficients_stored():
    p = LaurentPoly({0: 0, 3: 2, 5: 0})
    assert p.terms == {3: 2}


def test_big_coefficients_do_not_wrap():
    big = LaurentPoly({0: 2**62})
    assert (big * big).coeff(0) == 2**124


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + LaurentPoly() == a
    assert a * LaurentPoly.one() == a
    assert (a - a).terms == {}


@pytest.mark.parametrize(
    "poly, text",
    [
        (LaurentPoly(), "0"),
        (q((1, 4)), "4*q"),
        (q((0, 1), (2, -1)), "1 - q^2"),
        (q((-1, 1), (0, -1)), "q^-1 - 1"),
        (q((0, 6)), "6"),
        (q((2, -1)), "-q^2"),
    ],
)
def test_render(poly, text):
    assert str(poly) == text


@given(polys)
def test_json_round_trip(a):
    data = json.loads(json.dumps(a.to_json()))
    assert LaurentPoly.from_json(data) == a
    qs = [t["q"] for t in data["terms"]]
    assert qs == sorted(qs)


def test_bilaurent_examples():
    w = Window(-5, 5, -5, 5)
    x = BiLaurentPoly({(1, 2): 3, (0, -1): -1})
    assert bilaurent_mul(BiLaurentPoly({(0, 0): 1}), x, w) == x
    assert bilaurent_mul(BiLaurentPoly({(1, 1): 1}), BiLaurentPoly({(1, 1): 1}), Window(q_max=1)).terms == {}
    prod = bilaurent_mul(BiLaurentPoly({(1, 0): 1, (2, 0): 1}), BiLaurentPoly({(0, -1): 1}), Window(p_max=2, q_min=-1))
    assert prod.terms == {(1, -1): 1, (2, -1): 1}
    assert str(prod) == "p*q^-1 + p^2*q^-1"


def test_bilaurent_window_invariant():
    with pytest.raises(ValueError):
        BiLaurentPoly({(3, 0): 1}, Window(p_max=2))


@given(bipolys, bipolys)
def test_bilaurent_mul_order_independent(a, b):
    w = Window(-2, 4, -4, 2)
    ab = bilaurent_mul(a, b, w)
    assert ab == bilaurent_mul(b, a, w)
    shuffled = BiLaurentPoly(dict(reversed(list(a.terms.items()))))
    assert bilaurent_mul(shuffled, b, w) == ab
    assert all(w.contains(*k) for k in ab.terms)


@given(bipolys)
def test_bilaurent_json_round_trip(a):
    data = json.loads(json.dumps(a.to_json()))
    assert BiLaurentPoly.from_json(data) == a
    keys = [(t["q"], t["p"]) for t in data["terms"]]
    assert keys == sorted(keys)


def test_macmahon_examples():
    assert macmahon(0) == LaurentPoly.one()
    assert str(macmahon(2)) == "1 + q + 3*q^2"
    assert str(macmahon(6)) == "1 + q + 3*q^2 + 6*q^3 + 13*q^4 + 24*q^5 + 48*q^6"


@pytest.mark.parametrize("n", range(11))
def test_macmahon_matches_plane_partition_count(n):
    assert macmahon(10).coeff(n) == count_plane_partitions(n)


def test_macmahon_rejects_negative():
    with pytest.raises(ValueError):
        macmahon(-1)
