import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gbe.errors import InvalidParameter
from gbe.montecarlo import (MomentEstimate, estimate_and_compare, exact_moments, generator, sample, trace_moments,
                            trace_powers)


def test_single_gaussian_variance():
    # N = 1: lambda ~ N(0, 1/kappa) in the unscaled convention
    beta = 3.0
    s = sample(1, beta, seed=7, size=100_000, convention="unscaled")
    x = s.diagonal[:, 0]
    var = 2 / beta
    se = var * math.sqrt(2 / (len(x) - 1))
    assert abs(x.var(ddof=1) - var) < 4 * se


def test_determinism():
    a = sample(6, 2.5, seed=42, stream=0)
    b = sample(6, 2.5, seed=42, stream=0)
    assert np.array_equal(a.diagonal, b.diagonal) and np.array_equal(a.offdiagonal, b.offdiagonal)
    c = sample(6, 2.5, seed=42, stream=1)
    assert not np.array_equal(a.diagonal, c.diagonal)


def test_offdiagonal_positive():
    s = sample(10, 0.7, seed=1, size=500)
    assert (s.offdiagonal > 0).all()


def test_gue_second_moment_unscaled():
    est = estimate_and_compare(2, 2, 1, 100_000, seed=3, convention="unscaled")[0]
    assert est.exact == 4
    assert abs(est.z) <= 4


def test_trace_of_identity_power():
    s = sample(5, 1.0, seed=0)
    assert trace_moments(s, 3)[0] == 5


def test_diagonal_only():
    d = np.array([0.3, -1.2, 2.0, 0.5])
    t = trace_powers(d, np.zeros(3), 4)[0]
    for p in range(5):
        assert math.isclose(t[p], float(np.sum(d ** (2 * p))), rel_tol=1e-14)


@given(st.integers(1, 9), st.integers(0, 2 ** 32 - 1))
@settings(max_examples=30, deadline=None)
def test_traces_against_dense_powers(n, seed):
    s = sample(n, 1.7, seed=seed, convention="unscaled")
    T = s.dense()
    got = trace_moments(s, 5)
    M = np.eye(n)
    for p in range(6):
        assert math.isclose(got[p], float(np.trace(M)), rel_tol=1e-12, abs_tol=1e-12)
        M = M @ T @ T


@pytest.mark.parametrize("N,beta,p,exact", [(8, 2, 1, 64.0), (4, 1, 2, 228.0), (6, 5, 2, None)])
def test_worked_examples(N, beta, p, exact):
    est = estimate_and_compare(N, beta, p, 100_000, seed=42, convention="unscaled")[p - 1]
    if exact is None:
        # m_4 = 2 N^3 + 5 N^2 (-1 + k) + N (3 - 5 k + 3 k^2) at k = 2/5
        k = Fraction(2, 5)
        exact = float(2 * N ** 3 + 5 * N ** 2 * (k - 1) + N * (3 - 5 * k + 3 * k * k))
    assert math.isclose(est.exact, exact, rel_tol=1e-15)
    assert not est.flagged


def test_estimate_record():
    e = MomentEstimate(1, 100, 2.0, 0.1, 1.5, 5.0)
    assert e.flagged


def test_threads_do_not_change_results():
    a = estimate_and_compare(5, 1.5, 3, 35_000, seed=9, threads=1)
    b = estimate_and_compare(5, 1.5, 3, 35_000, seed=9, threads=3)
    assert [(x.mean, x.stderr) for x in a] == [(x.mean, x.stderr) for x in b]


def test_convention_rescaling():
    N, g = 6, Fraction(1, 4)
    u = estimate_and_compare(N, 2.5, 3, 5_000, seed=11, convention="unscaled")
    s = estimate_and_compare(N, 2.5, 3, 5_000, seed=11, convention="scaled", g=g)
    for a, b in zip(u, s):
        assert math.isclose(b.mean, a.mean * float(g / N) ** a.p, rel_tol=1e-12)
        assert math.isclose(b.exact, a.exact * float(g / N) ** a.p, rel_tol=1e-12)
        assert math.isclose(b.z, a.z, rel_tol=1e-9, abs_tol=1e-9)


def test_z_scores_are_calibrated():
    zs = [estimate_and_compare(4, 3.0, 2, 2_000, seed=s)[1].z for s in range(20)]
    assert -1 < sum(zs) / len(zs) < 1
    assert max(abs(z) for z in zs) <= 4


def test_exact_moments_scaled_support():
    # m*_2 / N = g at kappa = 1: the semicircle variance on (-2 sqrt(g), 2 sqrt(g))
    assert math.isclose(exact_moments(1000, 2, 1, g=Fraction(1, 4))[1] / 1000, 0.25, rel_tol=1e-12)


def test_validation():
    with pytest.raises(InvalidParameter):
        sample(0, 2.0, seed=1)
    with pytest.raises(InvalidParameter):
        sample(3, -1.0, seed=1)
    with pytest.raises(InvalidParameter):
        estimate_and_compare(3, 2.0, 2, 50, seed=1)
    with pytest.raises(InvalidParameter):
        generator(-1)
