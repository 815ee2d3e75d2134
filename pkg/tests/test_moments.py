from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gbe import reference
from gbe.errors import DomainError, InsufficientOrder
from gbe.exact import H, MultiPoly
from gbe.moments import (MomentPoly, catalan, check_duality, check_structure, display_contents, h_block_to_k,
                         moment_polynomial, parse_moment, subleading_closed_form, subleading_from_resolvent,
                         unit_circle_zeros)


@pytest.mark.parametrize("p", range(11))
def test_moment_table(ws10, p):
    assert moment_polynomial(p, ws10) == parse_moment(p, reference.MOMENTS[p])


def test_low_moments(ws6):
    assert moment_polynomial(0, ws6) == parse_moment(0, "N")
    assert moment_polynomial(2, ws6) == parse_moment(2, "2*N**3+5*N**2*(-1+k)+N*(3-5*k+3*k**2)")


def test_needs_enough_resolvent_coefficients(ws6):
    with pytest.raises(InsufficientOrder):
        moment_polynomial(7, ws6)


def test_duality_detects_perturbation(ws6):
    m = moment_polynomial(2, ws6)
    assert check_duality(m)
    bad = dict(m.coeffs)
    bad[(1, 0)] += 1
    assert not check_duality(MomentPoly(2, bad))
    assert check_duality(moment_polynomial(0, ws6))


@pytest.mark.parametrize("p", range(11))
def test_structure(ws10, p):
    m = moment_polynomial(p, ws10)
    assert check_duality(m)
    assert check_structure(m).ok
    assert m.n_coefficient(p + 1) == {0: catalan(p)}


def test_m6_structure_details(ws6):
    m = moment_polynomial(3, ws6)
    assert m.n_coefficient(4) == {0: 5}
    assert m.n_coefficient(3) == {0: -22, 1: 22}


def test_structure_flags_a_bad_leading_term(ws6):
    m = moment_polynomial(3, ws6)
    bad = dict(m.coeffs)
    bad[(4, 0)] = Fraction(6)
    rep = check_structure(MomentPoly(3, bad))
    assert not rep.ok and rep.violations[0][0] == "Catalan leading coefficient"


def test_first_subleading_value():
    assert subleading_closed_form(3, 1) == -22 * H


@pytest.mark.parametrize("depth", range(1, 7))
def test_subleading_closed_forms(ws10, depth):
    for l in range(depth, 25):
        assert subleading_closed_form(l, depth) == subleading_from_resolvent(ws10, l, depth)


def test_subleading_domain():
    with pytest.raises(DomainError):
        subleading_closed_form(2, 3)
    with pytest.raises(DomainError):
        subleading_closed_form(9, 7)


def test_zeros_on_unit_circle(ws10):
    for p in range(2, 11):
        assert unit_circle_zeros(moment_polynomial(p, ws10)).max_deviation < 1e-8


def test_zeros_of_m8_tail(ws6):
    rep = unit_circle_zeros(moment_polynomial(4, ws6), tol=1e-9)
    assert rep.within(1e-9)


@given(st.integers(0, 6), st.integers(1, 9), st.fractions(min_value=Fraction(1, 5), max_value=5, max_denominator=7))
@settings(max_examples=40, deadline=None)
def test_duality_numerically(p, N, kappa):
    from gbe.verify import resolvent
    m = moment_polynomial(p, list(resolvent(6)))
    assert m.evaluate(N, kappa) == (-1) ** (p + 1) * kappa ** (-p - 1) * m.evaluate(-kappa * N, 1 / kappa)


def test_h_blocks_become_polynomials_in_inverse_kappa():
    # h^2 = kappa - 2 + 1/kappa, times kappa^(-1) from the l = 2 prefactor
    assert h_block_to_k(H ** 2, 2) == MultiPoly.const(1) - 2 * MultiPoly.var("k") + MultiPoly.var("k") ** 2


def test_json_round_trip(ws6):
    m = moment_polynomial(4, ws6)
    assert MomentPoly.from_json_obj(m.to_json_obj()) == m


def test_latex_follows_tabulated_factoring(ws10):
    m6 = moment_polynomial(3, ws10).to_latex(display_contents(reference.MOMENTS[3]))
    assert "N^{2}\\left(32-54\\kappa^{-1}+32\\kappa^{-2}\\right)" in m6
    m10 = moment_polynomial(5, ws10).to_latex(display_contents(reference.MOMENTS[5]))
    assert "10 N^{4}\\left(145-248\\kappa^{-1}+145\\kappa^{-2}\\right)" in m10
