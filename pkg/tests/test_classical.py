from fractions import Fraction
from math import factorial

import pytest

from gbe.classical import (Ensemble, closed_form_moment, double_factorial, eta_expr, eta_recursion,
                           expansion_from_polynomial, gse_goe_duality, gue_u_series, harer_zagier,
                           harer_zagier_moments, largeN_moment_expansion, methods, ode_residual,
                           recurrence_moments, u_ode_check, u_series_moments)
from gbe.errors import MethodUnsupported
from gbe.exact import G, NN, X, MultiPoly
from gbe.moments import moment_polynomial
from gbe.spectral import SpectralExpr

N = NN


def test_symbolic_recurrences():
    assert recurrence_moments(Ensemble.GUE, 6)[6] == 33 * N * (4 * N ** 6 + 70 * N ** 4 + 196 * N ** 2 + 45)
    assert recurrence_moments(Ensemble.GOE, 2)[2] == 2 * N ** 3 + 5 * N ** 2 + 5 * N
    assert 4 * recurrence_moments(Ensemble.GSE, 2)[2] == 8 * N ** 3 - 10 * N ** 2 + 5 * N


@pytest.mark.parametrize("e", list(Ensemble))
def test_triple_agreement(ws10, e):
    general = [moment_polynomial(p, ws10) for p in range(11)]
    for n in range(1, 9):
        rec = recurrence_moments(e, 10, n)
        for p in range(11):
            assert general[p].evaluate(n, e.kappa) == rec[p]
            for meth in methods(e):
                if e is Ensemble.GOE and meth == "mezzadri-simm" and n % 2:
                    continue
                assert closed_form_moment(e, meth, p, n) == rec[p], (meth, p, n)


def test_mehta_small_case():
    assert closed_form_moment(Ensemble.GUE, "mehta", 3, 2) == recurrence_moments(Ensemble.GUE, 3, 2)[3]


def test_missing_closed_form():
    with pytest.raises(MethodUnsupported):
        closed_form_moment(Ensemble.GSE, "mehta", 2, 2)


def test_harer_zagier_low_orders():
    assert harer_zagier_moments(1, 5) == [5, 25]
    for n in range(1, 7):
        assert harer_zagier_moments(20, n) == recurrence_moments(Ensemble.GUE, 20, n)
    assert [c * double_factorial(2 * p - 1) for p, c in enumerate(harer_zagier(3, 4))] \
        == recurrence_moments(Ensemble.GUE, 3, 4)


def test_u_series():
    c = gue_u_series(6, 3)
    assert c[1] * factorial(2) == 9
    assert c[2] * factorial(4) == 3 * (2 * 9 + 1)
    assert u_series_moments(gue_u_series(20, 5)) == recurrence_moments(Ensemble.GUE, 20, 5)


@pytest.mark.parametrize("e,n", [(Ensemble.GOE, 3), (Ensemble.GSE, 2), (Ensemble.GUE, 4), (Ensemble.GOE, 6)])
def test_u_odes(e, n):
    assert u_ode_check(e, 10, n)


def test_resolvent_ode_residual_orders(ws6):
    assert ode_residual(Ensemble.GUE, ws6).vanishes_through(7)
    assert ode_residual(Ensemble.GOE, ws6).vanishes_through(6)
    assert ode_residual(Ensemble.GSE, ws6).vanishes_through(6)


def test_eta_recursion_matches_resolvent(ws6):
    tables = eta_recursion(3)
    assert tables[0] == {2: G ** 3}
    for j in range(1, 4):
        assert eta_expr(tables[j - 1], j) == ws6[2 * j].h_component(0)
    assert ws6[4].h_component(0) == SpectralExpr({11: 21 * G * (X ** 2 + G)})
    assert ws6[6].h_component(0) == SpectralExpr({17: 11 * G * (135 * X ** 4 + 558 * G * X ** 2 + 158 * G ** 2)})


def test_large_n_expansions():
    assert largeN_moment_expansion(Ensemble.GUE, 4)[2] == 5
    assert largeN_moment_expansion(Ensemble.GOE, 1)[1] == 1
    assert largeN_moment_expansion(Ensemble.GSE, 1)[1] == Fraction(-1, 2)
    for e in Ensemble:
        for p in range(9):
            m = recurrence_moments(e, p)[p]
            assert largeN_moment_expansion(e, p) == expansion_from_polynomial(e, m, p)


def test_gse_goe_duality():
    for p in range(11):
        assert gse_goe_duality(p)
    goe = recurrence_moments(Ensemble.GOE, 3)[3]
    assert not gse_goe_duality(3, goe=goe + 1)


def test_ensemble_parsing():
    assert Ensemble.parse("goe") is Ensemble.GOE
    assert Ensemble.GSE.kappa == 2
    with pytest.raises(ValueError):
        Ensemble.parse("LUE")
