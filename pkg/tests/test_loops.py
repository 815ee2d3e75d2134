from fractions import Fraction

import pytest

from gbe import reference
from gbe.correlator import Correlator
from gbe.errors import MethodUnsupported
from gbe.exact import G, H, X, MultiPoly
from gbe.loops import (HierarchyStore, canonical_check, check_resolvent_duality, jet_dag, resolvent_expansion,
                       solve_base, solve_order, vanishing_orders)
from gbe.spectral import SpectralExpr, parse_spectral, reduce

x, y = SpectralExpr.x(), SpectralExpr.y()


@pytest.mark.parametrize("l", range(7))
def test_resolvent_table(ws6, l):
    assert ws6[l] == parse_spectral(reference.RESOLVENT[l])


def test_base_term():
    assert resolvent_expansion(0) == [(x - y) * Fraction(1, 2)]


def test_base_solves_quadratic():
    w = solve_base().to_spectral()
    assert w == (x - y) * Fraction(1, 2)
    assert reduce(w * w - x * w + SpectralExpr({0: G})).is_zero()


def test_first_orders_from_the_hierarchy():
    store = HierarchyStore()
    w11 = solve_order(1, 1, store).to_spectral()
    assert w11 == SpectralExpr({1: H * Fraction(1, 2), 2: -H * X * Fraction(1, 2)})
    w12 = store.ensure(1, 2).to_spectral()
    assert w12 == parse_spectral("h**2*(-x/y**4 + (x**2+g)/y**5) + g/y**5")


def test_jet_and_correlator_engines_agree():
    assert resolvent_expansion(5, method="correlator") == resolvent_expansion(5)


def test_unknown_engine():
    with pytest.raises(MethodUnsupported):
        resolvent_expansion(1, method="guess")


def test_leading_order_at_infinity(ws6):
    for l, w in enumerate(ws6):
        assert vanishing_orders(w, l)
        s = w.series_at_infinity(2 * l + 1)
        assert not s.coefficient(2 * l + 1).is_zero()
    assert ws6[1].series_at_infinity(3).coefficient(3) == -H * G


@pytest.mark.parametrize("l", range(7))
def test_two_term_shape(ws6, l):
    assert canonical_check(ws6[l], l).ok


def test_pure_term_of_w14(ws6):
    assert ws6[4].h_component(0) == SpectralExpr({11: 21 * G * (X ** 2 + G)})


def test_resolvent_duality(ws6):
    assert check_resolvent_duality(ws6)


def test_diagonal_merge_is_consistent(ws6):
    store = HierarchyStore()
    w20 = store.ensure(2, 0)
    a = w20.merge_diagonal(0, 1, 0).to_spectral()
    b = w20.merge_diagonal(0, 1, 3).to_spectral()
    assert a == b
    # at h = 0 the order-(1, 2) equation reads -y W_1^2 + W_2^0(x, x) = 0
    assert a == reduce(y * ws6[2].h_component(0))
    assert a == SpectralExpr({4: G})


def test_dependency_dag():
    dag = jet_dag(4)
    assert dag["schema"] == "gbe/1"
    names = {(n["n"], n["l"]) for n in dag["nodes"]}
    assert (1, 4) in names and (1, 0) in names
    for src, dst in dag["edges"]:
        assert tuple(src) in names and tuple(dst) in names
