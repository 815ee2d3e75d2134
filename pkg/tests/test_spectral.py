from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from gbe.exact import G, H, X, MultiPoly
from gbe.spectral import SpectralExpr, parse_poly, parse_spectral, reduce, restore_g, spectral_arith

y = SpectralExpr.y()
x = SpectralExpr.x()

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
terms = st.dictionaries(st.integers(-2, 6), st.lists(small, min_size=1, max_size=3), max_size=3)


def build(t):
    return SpectralExpr({s: sum((c * X ** i for i, c in enumerate(cs)), MultiPoly.const(0)) for s, cs in t.items()})


def test_y_squared_reduces():
    assert reduce(SpectralExpr({-2: MultiPoly.const(1)})) == SpectralExpr({0: X ** 2 - 4 * G})


def test_multiply_out_relation():
    e = SpectralExpr({5: X ** 2}) + SpectralExpr({5: -4 * G})
    assert reduce(e) == SpectralExpr({3: MultiPoly.const(1)})


@given(terms)
@settings(max_examples=50)
def test_reduce_is_idempotent(t):
    e = build(t)
    assert reduce(reduce(e)) == reduce(e)


@given(terms, terms)
@settings(max_examples=30)
def test_products_agree_numerically(a, b):
    ea, eb = build(a), build(b)
    pt = dict(x=3.1, g=0.7, h=0.4)
    lhs = spectral_arith(ea, eb, "mul").evaluate(**pt)
    assert abs(lhs - ea.evaluate(**pt) * eb.evaluate(**pt)) <= 1e-9 * (1 + abs(lhs))


def test_derivative_of_base_resolvent():
    w0 = (x - y) * Fraction(1, 2)
    assert spectral_arith(w0, None, "differentiate") == (SpectralExpr.const(1) - x * SpectralExpr.y(-1)) * Fraction(1, 2)


def test_inverse_y_squared():
    e = spectral_arith(SpectralExpr.y(-1), SpectralExpr.y(-1), "mul")
    assert e == SpectralExpr({2: MultiPoly.const(1)})
    assert abs(e.evaluate(x=3.0, g=1.0) - 1 / (9.0 - 4.0)) < 1e-15


def test_divide_by_y():
    assert spectral_arith(SpectralExpr.const(1), None, "divide_by_y") == SpectralExpr.y(-1)


def test_semicircle_series():
    w0 = (x - y) * Fraction(1, 2)
    s = w0.series_at_infinity(5)
    assert s.coefficient(1) == G
    assert s.coefficient(3) == G ** 2
    assert s.coefficient(5) == 2 * G ** 3


def test_json_and_text_round_trip(ws6):
    for w in ws6:
        assert SpectralExpr.from_json(w.to_json()) == w
        assert parse_spectral(str(w)) == w


def test_parse_poly_round_trip():
    p = Fraction(3, 4) * X ** 2 * H - G * H ** 3 + 5
    assert parse_poly(str(p)) == p


def test_restore_g_reinserts_weight():
    # (x^2 + g)/y^5 has weight -3
    e = restore_g({5: X ** 2 + 1}, -3)
    assert e == SpectralExpr({5: X ** 2 + G})
