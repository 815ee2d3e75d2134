import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gbe.errors import InsufficientSmoothness, InvalidParameter
from gbe.hadamard import QuadratureConfig, SmoothFunction, beta_tail, finite_part_integral, hadamard_finite_part


def beta_continuation(m: int, n: int) -> float:
    """Analytic continuation of B(m + 1/2, 1/2 - n); zero at poles of the denominator."""
    if m + 1 - n <= 0:
        return 0.0
    return math.gamma(m + 0.5) * math.gamma(0.5 - n) / math.gamma(m + 1 - n)


def test_constant_has_zero_finite_part():
    assert abs(hadamard_finite_part(SmoothFunction.polynomial([1.0]), 1)) < 1e-12


def test_arcsine_integral():
    assert abs(hadamard_finite_part(SmoothFunction.polynomial([1.0]), 0) - math.pi) < 1e-10


def test_beta_continuation_for_y():
    assert abs(hadamard_finite_part(SmoothFunction.polynomial([0.0, 1.0]), 1) + math.pi) < 1e-9


@given(st.lists(st.floats(-3, 3), min_size=1, max_size=7), st.integers(0, 4))
@settings(max_examples=40, deadline=None)
def test_polynomials_against_beta_values(coeffs, n):
    got = hadamard_finite_part(SmoothFunction.polynomial(coeffs), n)
    want = sum(c * beta_continuation(m, n) for m, c in enumerate(coeffs))
    scale = sum(abs(c * beta_continuation(m, n)) for m, c in enumerate(coeffs)) + 1
    assert abs(got - want) < 1e-9 * scale


def exp_handle(order=60):
    return SmoothFunction(lambda y, j: math.exp(y), order)


@pytest.mark.parametrize("n", range(6))
def test_subtraction_order_invariance(n):
    a = hadamard_finite_part(exp_handle(), n)
    for extra in (1, 2):
        assert abs(hadamard_finite_part(exp_handle(), n, order=n - 1 + extra) - a) < 1e-8


def test_exp_against_series_of_beta_values():
    # exp(y) = sum y^m / m!, each term integrated by continuation
    for n in range(4):
        want = sum(beta_continuation(m, n) / math.factorial(m) for m in range(40))
        assert abs(hadamard_finite_part(exp_handle(), n) - want) < 1e-10 * max(1, abs(want))


def test_insufficient_smoothness():
    with pytest.raises(InsufficientSmoothness):
        hadamard_finite_part(SmoothFunction(lambda y, j: math.exp(y), 1), 3)


def test_bad_arguments():
    with pytest.raises(InvalidParameter):
        hadamard_finite_part(exp_handle(), -1)
    with pytest.raises(InvalidParameter):
        QuadratureConfig(rel_tol=0)
    with pytest.raises(InvalidParameter):
        finite_part_integral(math.exp, [1.0, 1.0], 3, order=0)


def test_beta_tail_values():
    assert beta_tail(0, 1) == 0.0
    assert abs(beta_tail(1, 1) - math.pi) < 1e-15
    assert abs(beta_tail(0, -1) - math.pi / 2) < 1e-15
