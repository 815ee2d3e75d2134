"""Finite-part integrals against (1 - y)^(-n - 1/2) on (0, 1).

The normal form is

    p.f. int_0^1 y^(-1/2) (1 - y)^(-n - 1/2) F(y) dy,

which equals the convergent integral of the Taylor remainder of F at y = 1
through order n - 1: every subtracted monomial contributes a Beta value with a
pole in the denominator Gamma, hence zero.  Subtracting further terms is
allowed; their (finite, nonzero) Beta values are added back, so the result
does not depend on how many terms are removed.

Quadrature splits the interval at y = 1/2.  The left half uses y = u^2 to
remove the y^(-1/2) endpoint; the right half uses y = 1 - v^2 so that the
remainder, of size (1 - y)^(p+1), cancels the endpoint power.  Very close to
y = 1 the remainder is evaluated from its Taylor tail when enough derivatives
are available, which avoids catastrophic cancellation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import InsufficientSmoothness, InvalidParameter, QuadratureNonConvergence


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    limit: int = 200          # maximum number of subintervals per half
    taylor_terms: int = 24    # extra Taylor terms used next to y = 1 when available

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol < 0 or self.limit < 1:
            raise InvalidParameter("quadrature tolerances must be positive and limit at least 1")


@dataclass
class SmoothFunction:
    """A function with explicitly supplied derivatives.

    ``fn(x, j)`` returns the j-th derivative at x for 0 <= j <= order.
    """
    fn: Callable
    order: int

    def __call__(self, x):
        return self.fn(x, 0)

    def derivative(self, x, j: int):
        if j > self.order:
            raise InsufficientSmoothness(f"derivative of order {j} requested, only {self.order} declared")
        return self.fn(x, j)

    def taylor(self, x0, order: int) -> list:
        """Taylor coefficients f^(q)(x0)/q! for q <= order."""
        return [self.derivative(x0, q) / math.factorial(q) for q in range(order + 1)]

    @classmethod
    def polynomial(cls, coeffs) -> "SmoothFunction":
        """From ascending float coefficients; derivatives of every order exist."""
        p = np.polynomial.Polynomial(np.asarray(coeffs, dtype=float))

        def fn(x, j):
            return float(p.deriv(j)(x)) if j else float(p(x))
        return cls(fn, order=10 ** 6)


def beta_tail(q: int, n: int) -> float:
    """p.f. int_0^1 y^(-1/2) (1-y)^(q - n - 1/2) dy; zero when the denominator Gamma has a pole."""
    b = q - n + 1
    if b <= 0:
        return 0.0
    return math.gamma(0.5) * math.gamma(b - 0.5) / math.gamma(b)


def _quad(f, a, b, cfg: QuadratureConfig, scale: float = 1.0) -> float:
    """Adaptive Gauss-Kronrod on [a, b].

    The absolute tolerance is relative to ``scale``, the size of the function
    being integrated: a remainder that vanishes identically is otherwise pure
    roundoff and can never meet an absolute target below that noise.
    """
    epsabs = cfg.abs_tol * max(1.0, scale)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        out = integrate.quad(f, a, b, epsabs=epsabs, epsrel=cfg.rel_tol,
                             limit=cfg.limit, full_output=1)
    val, err = out[0], out[1]
    if not math.isfinite(val) or not math.isfinite(err):
        raise QuadratureNonConvergence("quadrature produced a non-finite value")
    if len(out) > 3 and err > 10 * max(epsabs, cfg.rel_tol * abs(val)):
        raise QuadratureNonConvergence(f"adaptive quadrature did not converge on [{a}, {b}]: {out[3]}")
    return val


def finite_part_integral(value: Callable, taylor: list, n: int,
                         quadrature: QuadratureConfig | None = None, order: int | None = None) -> float:
    """Finite part with alpha = n + 1/2, n >= -1.

    ``value(y)`` evaluates F on (0, 1); ``taylor`` lists the Taylor coefficients
    of F at y = 1.  ``order`` is the subtraction order (default n - 1); terms
    beyond n - 1 are added back through their Beta values.
    """
    cfg = quadrature or QuadratureConfig()
    if n < -1:
        raise InvalidParameter("n must be at least -1")
    p = max(n - 1, -1) if order is None else order
    if p < n - 1 or p < -1:
        raise InvalidParameter("the subtraction order must be at least n - 1")
    if len(taylor) < p + 1:
        raise InsufficientSmoothness(f"need Taylor coefficients through order {p}, got {len(taylor) - 1}")
    sub = [float(c) for c in taylor[:p + 1]]
    tail = [float(c) for c in taylor[p + 1:p + 1 + cfg.taylor_terms]]

    # below this distance from y = 1, use the Taylor tail instead of F - T_p
    switch = 0.0
    if tail and tail[-1] != 0.0:
        scale = max(abs(c) for c in sub + tail) or 1.0
        # roundoff in F - T_p is ~1e-16 scale; the first omitted term is ~|tail[-1]| t^(p + K)
        K = len(tail)
        switch = min(0.5, (1e-16 * scale / abs(tail[-1])) ** (1.0 / (p + K)))
    elif tail:
        switch = 0.5

    def direct(y):
        return value(y) - sum(c * (y - 1.0) ** q for q, c in enumerate(sub))

    def series(y):
        t = y - 1.0
        return sum(c * t ** (p + 1 + i) for i, c in enumerate(tail))

    def right_integrand(rem):
        return lambda v: 2.0 * v ** (-2 * n) * (1.0 - v * v) ** -0.5 * rem(1.0 - v * v)

    scale = max([abs(c) for c in sub + tail] + [abs(value(0.5))])
    half = math.sqrt(0.5)
    # y in (0, 1/2]: y = u^2
    left = _quad(lambda u: 2.0 * (1.0 - u * u) ** (-n - 0.5) * direct(u * u), 0.0, half, cfg, scale)
    # y in [1/2, 1): y = 1 - v^2, split where the Taylor tail takes over
    vs = math.sqrt(switch)
    right = _quad(right_integrand(direct), vs, half, cfg, scale) if vs < half else 0.0
    if vs > 0:
        right += _quad(right_integrand(series), 0.0, vs, cfg, scale)
    back = sum((-1) ** q * sub[q] * beta_tail(q, n) for q in range(max(n, 0), p + 1))
    return left + right + back


def hadamard_finite_part(F: SmoothFunction, n: int, quadrature: QuadratureConfig | None = None,
                         order: int | None = None) -> float:
    """p.f. int_0^1 y^(-1/2) (1-y)^(-n-1/2) F(y) dy for a smooth handle F and n >= 0."""
    if n < 0:
        raise InvalidParameter("n must be non-negative")
    cfg = quadrature or QuadratureConfig()
    p = n - 1 if order is None else order
    extra = max(0, min(cfg.taylor_terms, F.order - p))
    return finite_part_integral(F, F.taylor(1.0, p + extra), n, cfg, order=p)
