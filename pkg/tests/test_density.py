import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gbe import reference
from gbe.density import (LinearStatistic, SmoothedDensity, density_from_resolvent, linear_statistic_mean,
                         polynomial_mean, reference_density, semicircle_power_integral, stieltjes)
from gbe.errors import InsufficientSmoothness, InvalidParameter
from gbe.exact import G, H, X, MultiPoly
from gbe.hadamard import SmoothFunction
from gbe.moments import moment_polynomial


def test_semicircle(densities):
    assert densities[0] == SmoothedDensity(0, [(MultiPoly.const(Fraction(1, 2)), 1)], {})
    assert polynomial_mean(densities[0], 0) == G


def test_first_correction(densities):
    want = SmoothedDensity(1, [(H * Fraction(1, 2), -1)], {0: {0: H * Fraction(-1, 4)}})
    assert densities[1] == want
    assert polynomial_mean(densities[1], 0).is_zero()
    assert polynomial_mean(densities[1], 2) == -H * G


def test_boundary_term_at_second_order(densities):
    assert densities[2].delta_coefficient(1) == {-1: H ** 2 * Fraction(1, 8)}


@pytest.mark.parametrize("l", range(7))
def test_density_table(densities, l):
    assert densities[l] == reference_density(l)


def test_tabulated_boundary_coefficients(densities):
    assert densities[3].delta_coefficient(1, 1) == {-3: MultiPoly.const(Fraction(13, 1024))}
    assert densities[3].delta_coefficient(1, 3) == {-3: MultiPoly.const(Fraction(-5, 512))}
    assert densities[6].delta_coefficient(7, 6) == {-3: MultiPoly.const(Fraction(11865, 10321920))}


def test_printed_l3_value_fails_both_oracles(ws6):
    (l, hp, j), (printed, fixed) = next(iter(reference.DENSITY_ERRATA.items()))
    bad = reference_density(l, corrected=False)
    assert bad.delta_coefficient(j, hp)[-1] == MultiPoly.const(Fraction(printed))
    assert any(not polynomial_mean(bad, 2 * s).is_zero() for s in range(l))
    assert stieltjes(bad) != ws6[l]
    good = reference_density(l)
    assert good.delta_coefficient(j, hp)[-1] == MultiPoly.const(Fraction(fixed))


@pytest.mark.parametrize("l", range(1, 7))
def test_low_moments_vanish(densities, l):
    for s in range(l):
        assert polynomial_mean(densities[l], 2 * s).is_zero()


@pytest.mark.parametrize("l", range(7))
def test_stieltjes_round_trip(ws6, densities, l):
    assert stieltjes(densities[l]) == ws6[l]


def test_moments_from_densities_match_moment_polynomials(ws6, densities):
    # int x^(2p) rho~_l is the x^(-2p-1) coefficient of W_1^l
    for l in range(7):
        for p in range(l, 7):
            c = ws6[l].series_at_infinity(2 * p + 1).coefficient(2 * p + 1)
            assert polynomial_mean(densities[l], 2 * p) == c


def test_semicircle_power_integral():
    # (1/pi) int x^2 sqrt(4g - x^2) = 2 g^2; (1/pi) int (4g - x^2)^(-1/2) = 1
    assert semicircle_power_integral(1, 1) == 2 * G ** 2
    assert semicircle_power_integral(0, -1) == MultiPoly.const(1)


def test_json_round_trip(densities):
    for d in densities:
        assert SmoothedDensity.from_json(d.to_json(g=Fraction(1, 4))) == d
        assert d.to_json_obj()["schema"] == "gbe/1"


def test_second_moment_statistic():
    res = linear_statistic_mean(LinearStatistic.monomial(2), 2, kappa=1, g=None)
    assert res.coefficients == [G, 0, 0]


def test_fourth_moment_statistic(ws6):
    res = linear_statistic_mean(LinearStatistic.monomial(4), 2, kappa=Fraction(1, 2), g=None)
    m4 = moment_polynomial(2, ws6)
    # (1/N) <Tr G^4> = (g/N)^2 m_4 / N
    for l in range(3):
        assert res.coefficients[l] == G ** 2 * sum(c * Fraction(2) ** b for (a, b), c in m4.coeffs.items()
                                                   if a == 3 - l)


def test_constant_statistic_has_no_corrections():
    res = linear_statistic_mean(LinearStatistic.monomial(0), 6, kappa=Fraction(3))
    assert res.coefficients == [1] + [0] * 6
    one = LinearStatistic(smooth=SmoothFunction.polynomial([1.0]), label="1")
    q = linear_statistic_mean(one, 6, kappa=3.0, g=0.25)
    assert abs(q.coefficients[0] - 1) < 1e-12 and max(abs(c) for c in q.coefficients[1:]) < 1e-10


@given(st.sampled_from(["poly:4", "poly:8", "cheb:6", "cheb:7", "poly:0"]),
       st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5, 2)]))
@settings(max_examples=12, deadline=None)
def test_quadrature_matches_exact(text, kappa):
    from gbe.cli import parse_statistic
    from gbe.verify import resolvent
    ds = [density_from_resolvent(w, l) for l, w in enumerate(resolvent(6))]
    stat = parse_statistic(text)
    a = linear_statistic_mean(stat, 6, kappa=kappa, densities=ds).coefficients
    b = linear_statistic_mean(stat, 6, kappa=kappa, densities=ds, method="quadrature").coefficients
    scale = max(1.0, max(abs(float(v)) for v in a))
    assert max(abs(float(u) - v) for u, v in zip(a, b)) < 1e-9 * scale


def test_smooth_statistic_matches_its_taylor_polynomial(densities):
    exp = LinearStatistic(smooth=SmoothFunction(lambda x, j: math.exp(x), 60), label="exp")
    taylor = LinearStatistic(poly=sum((X ** k * Fraction(1, math.factorial(k)) for k in range(40)),
                                      MultiPoly.const(0)))
    a = linear_statistic_mean(exp, 6, kappa=2.0, g=0.25, densities=densities).coefficients
    b = linear_statistic_mean(taylor, 6, kappa=Fraction(2), densities=densities).coefficients
    for u, v in zip(a, b):
        assert abs(u - float(v)) < 1e-9


def test_smoothness_is_checked(densities):
    rough = LinearStatistic(smooth=SmoothFunction(lambda x, j: math.exp(x), 3))
    with pytest.raises(InsufficientSmoothness):
        linear_statistic_mean(rough, 6, kappa=2.0, g=0.25, densities=densities)


def test_quadrature_needs_numbers():
    with pytest.raises(InvalidParameter):
        linear_statistic_mean(LinearStatistic.monomial(2), 2, method="quadrature")
