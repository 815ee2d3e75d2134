"""Smoothed signed densities and means of linear statistics.

The jump of a resolvent coefficient across the cut (-2 sqrt(g), 2 sqrt(g))
is read off term by term.  With s = sqrt(4g - x^2) and y(x +/- i0) = +/- i s,

    P(x) y^(-(2m+1))   ->   (-1)^m P(x) / (pi s^(2m+1))     on the support,

while a rational term P(x)/(x^2 - 4g)^m is split into partial fractions at
x = +/- a, a = 2 sqrt(g), and c/(x - a)^(k+1) -> c (-1)^k delta^(k)(x - a)/k!.
Boundary terms are collected in the basis

    eps^(j) = delta^(j)(x - a) + (-1)^j delta^(j)(x + a).

Delta coefficients live in Q[h] extended by g^(1/2); they are stored as
{r: polynomial in h} meaning sum_r poly_r(h) g^(r/2).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .errors import InsufficientSmoothness, InvalidParameter, UnreducibleRationalPart
from .exact import MultiPoly, rational_str
from .hadamard import QuadratureConfig, SmoothFunction, finite_part_integral
from .moments import h_block_to_k
from .spectral import SpectralExpr, parse_expr, parse_poly, poly_latex, restore_g

SCHEMA = "gbe/1"

_X = MultiPoly.var("x")
_G = MultiPoly.var("g")
_H = MultiPoly.var("h")
_K = MultiPoly.var("k")


# ---------------------------------------------------------------------------
# the density record

@dataclass
class SmoothedDensity:
    """rho~_l: bulk terms (1/pi) Q(x) (4g - x^2)^(e/2) on the support plus eps^(j) terms."""
    l: int
    bulk: list = field(default_factory=list)     # [(Q: MultiPoly in x, g, h; e: odd int)]
    delta: dict = field(default_factory=dict)    # {j: {r: MultiPoly in h}}

    def __eq__(self, other):
        if not isinstance(other, SmoothedDensity):
            return NotImplemented
        return (self.l == other.l and _bulk_key(self.bulk) == _bulk_key(other.bulk)
                and _clean(self.delta) == _clean(other.delta))

    def max_delta_order(self) -> int:
        """Highest j with a nonzero eps^(j) coefficient, or -1."""
        live = [j for j, c in _clean(self.delta).items()]
        return max(live) if live else -1

    def delta_coefficient(self, j: int, hpow: int | None = None) -> dict:
        """{r: coefficient} for eps^(j), optionally restricted to one power of h."""
        out = {}
        for r, p in self.delta.get(j, {}).items():
            q = p if hpow is None else p.coeff("h", hpow)
            if not q.is_zero():
                out[r] = q
        return out

    def h_component(self, j: int) -> "SmoothedDensity":
        bulk = [(q.coeff("h", j) * _H ** j, e) for q, e in self.bulk]
        delta = {d: {r: p.coeff("h", j) * _H ** j for r, p in c.items()} for d, c in self.delta.items()}
        return SmoothedDensity(self.l, [(q, e) for q, e in bulk if not q.is_zero()], _clean(delta))

    # -- output ------------------------------------------------------------------
    def to_json_obj(self, g=None) -> dict:
        """Term lists; with a numeric g the coefficients are evaluated at it."""
        bulk, delta = [], []
        for q, e in self.bulk:
            item = {"exponent": f"{e}/2", "numerator": str(q)}
            if g is not None:
                item["numerator_at_g"] = str(q.subs(g=Fraction(g)))
            bulk.append(item)
        for j in sorted(self.delta):
            for r in sorted(self.delta[j]):
                item = {"j": j, "g_half_power": r, "coefficient": str(self.delta[j][r])}
                if g is not None:
                    item["coefficient_at_g"] = _half_power_str(self.delta[j][r], Fraction(g), r)
                delta.append(item)
        out = {"schema": SCHEMA, "l": self.l, "bulk": bulk, "delta": delta}
        if g is not None:
            out["g"] = rational_str(Fraction(g))
        return out

    def to_json(self, g=None) -> str:
        return json.dumps(self.to_json_obj(g))

    @classmethod
    def from_json_obj(cls, obj) -> "SmoothedDensity":
        """Inverse of to_json_obj; the symbolic fields are used, evaluated ones ignored."""
        if obj.get("schema", SCHEMA) != SCHEMA:
            raise ValueError(f"unsupported schema {obj.get('schema')!r}")
        bulk = []
        for item in obj["bulk"]:
            num, den = item["exponent"].split("/")
            if den != "2":
                raise ValueError(f"bad bulk exponent {item['exponent']!r}")
            bulk.append((parse_poly(item["numerator"]), int(num)))
        delta = {}
        for item in obj["delta"]:
            delta.setdefault(item["j"], {})[item["g_half_power"]] = parse_poly(item["coefficient"])
        return cls(obj["l"], bulk, delta)

    @classmethod
    def from_json(cls, s: str) -> "SmoothedDensity":
        return cls.from_json_obj(json.loads(s))

    def to_latex(self) -> str:
        parts = []
        for q, e in self.bulk:
            parts.append(f"\\frac{{1}}{{\\pi}}\\left({poly_latex(q)}\\right)(4g-x^2)^{{{e}/2}}\\chi")
        for j in sorted(self.delta):
            for r in sorted(self.delta[j]):
                gp = "" if r == 0 else (f"g^{{{r // 2}}}" if r % 2 == 0 else f"g^{{{r}/2}}")
                parts.append(f"\\left({poly_latex(self.delta[j][r])}\\right){gp}\\,\\epsilon^{{({j})}}")
        return " + ".join(parts) if parts else "0"


def _bulk_key(bulk):
    acc = {}
    for q, e in bulk:
        acc[e] = acc[e] + q if e in acc else q
    return {e: q for e, q in acc.items() if not q.is_zero()}


def _clean(delta: dict) -> dict:
    out = {}
    for j, c in delta.items():
        c2 = {r: p for r, p in c.items() if not p.is_zero()}
        if c2:
            out[j] = c2
    return out


def _half_power_str(p: MultiPoly, g: Fraction, r: int) -> str:
    root = _exact_sqrt(g)
    if root is not None:
        return str(p * root ** r)
    return str(p * float(g) ** (r / 2))


def _exact_sqrt(q: Fraction):
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


# ---------------------------------------------------------------------------
# resolvent -> density

def _weight(s: int, p: MultiPoly) -> int:
    ws = {e[0] + 2 * e[1] - s for e, _ in p.items()}
    if len(ws) != 1:
        raise UnreducibleRationalPart("term is not homogeneous in (x, sqrt(g)); cannot restore g")
    return ws.pop()


def _local_laurent(P: list, m: int, a: int) -> list:
    """Principal part of P(x)/(x^2-4)^m at x = a (a = +/-2): [c_0, .., c_{m-1}], c_k for (x-a)^-(k+1).

    P is a list of h-polynomials indexed by the power of x.
    """
    # shift P to x = a + t
    deg = len(P) - 1
    shifted = [MultiPoly.const(0)] * (deg + 1)
    for d, c in enumerate(P):
        for i in range(d + 1):
            shifted[i] = shifted[i] + c * (comb(d, i) * Fraction(a) ** (d - i))
    # (t + 2a)^(-m) = (2a)^(-m) sum_j binom(-m, j) (t/(2a))^j
    inv = []
    for j in range(m):
        inv.append(Fraction(comb(m + j - 1, j) * (-1) ** j) / Fraction(2 * a) ** (m + j))
    out = []
    for k in range(m):
        i_total = m - 1 - k           # power of t in P(a+t)(t+2a)^(-m)
        acc = MultiPoly.const(0)
        for i in range(min(i_total, deg) + 1):
            acc = acc + shifted[i] * inv[i_total - i]
        out.append(acc)
    return out


def density_from_resolvent(w: SpectralExpr, l: int) -> SmoothedDensity:
    """rho~_l from W_1^l (reduced form)."""
    bulk = []
    delta = {}
    for s, p in sorted(w.terms.items()):
        if s % 2:
            m = (s - 1) // 2
            bulk.append((p * (-1) ** (m % 2), -s))
            continue
        if s <= 0:
            continue                     # polynomial in x: no jump
        m = s // 2
        wt = _weight(s, p)
        p1 = p.subs(g=1)
        P = [p1.coeff("x", d) for d in range(p1.degree("x") + 1)]
        plus = _local_laurent(P, m, 2)
        minus = _local_laurent(P, m, -2)
        for k in range(m):
            cp = plus[k] * Fraction((-1) ** k, factorial(k))
            cm = minus[k] * Fraction((-1) ** k, factorial(k))
            if cm != cp * (-1) ** k:
                raise UnreducibleRationalPart(f"boundary terms of order {k} are not of the eps form")
            if cp.is_zero():
                continue
            r = wt + k + 1
            slot = delta.setdefault(k, {})
            slot[r] = slot[r] + cp if r in slot else cp
    return SmoothedDensity(l, bulk, _clean(delta))


def stieltjes(d: SmoothedDensity) -> SpectralExpr:
    """Stieltjes transform int rho(t)/(x - t) dt, term by term, as a spectral expression.

    Individual boundary terms carry negative powers of g, so the sum is formed
    at g = 1 and g is reinserted from the weight 1 - 2l of rho~_l.
    """
    out = SpectralExpr.const(0)
    for q, e in d.bulk:
        s = -e
        m = (s - 1) // 2
        term = SpectralExpr({s: q.subs(g=1) * (-1) ** (m % 2)})
        # a Stieltjes transform decays at infinity: drop the polynomial part
        ser = term.series_at_infinity(1)
        poly = MultiPoly.const(0)
        for ex, c in ser.as_dict().items():
            if ex <= 0:
                poly = poly + c * _X ** (-ex)
        out = out + term - SpectralExpr({0: poly})
    for j, coeffs in d.delta.items():
        n = j + 1
        num = MultiPoly.const(0)
        for i in range(n + 1):
            if (i - j) % 2 == 0:
                num = num + 2 * comb(n, i) * 2 ** i * _X ** (n - i)
        c = sum(coeffs.values(), MultiPoly.const(0))
        out = out + SpectralExpr({2 * n: num * c * ((-1) ** j * factorial(j))})
    return restore_g(out.subs(g=1).terms, 1 - 2 * d.l)


# ---------------------------------------------------------------------------
# reference forms

def reference_density(l: int, corrected: bool = True) -> SmoothedDensity:
    """The tabulated rho~_l (0 <= l <= 6); by default with the recorded errata applied."""
    from . import reference
    names = {"x": _X, "g": _G, "h": _H}
    e, qtext = reference.DENSITY_BULK[l]
    delta = {}
    for hp, rows in reference.DENSITY_DELTA[l].items():
        for j, c, r in rows:
            fix = reference.DENSITY_ERRATA.get((l, hp, j))
            if corrected and fix is not None:
                if c != fix[0]:
                    raise AssertionError("erratum does not match the printed table")
                c = fix[1]
            slot = delta.setdefault(j, {})
            term = Fraction(c) * _H ** hp
            slot[r] = slot[r] + term if r in slot else term
    return SmoothedDensity(l, [(MultiPoly.coerce(parse_expr(qtext, names)), e)], _clean(delta))


# ---------------------------------------------------------------------------
# exact moments

def _gamma_half(two_a: int):
    """Gamma(two_a/2) as (rational, power of sqrt(pi)); None at a pole."""
    if two_a % 2 == 0:
        n = two_a // 2
        return None if n <= 0 else (Fraction(factorial(n - 1)), 0)
    n = (two_a - 1) // 2
    if n >= 0:
        return Fraction(factorial(2 * n), 4 ** n * factorial(n)), 1
    n = -n
    return Fraction((-4) ** n * factorial(n), factorial(2 * n)), 1


def semicircle_power_integral(q: int, e: int) -> MultiPoly:
    """(1/pi) p.f. int x^(2q) (4g - x^2)^(e/2) dx over the support, e odd.

    Equals (1/pi) (4g)^((2q+e+1)/2) B(q + 1/2, e/2 + 1), continued in e.
    """
    if e % 2 == 0:
        raise InvalidParameter("the bulk exponent must be odd")
    den = _gamma_half(2 * q + e + 3)
    if den is None:
        return MultiPoly.const(0)
    a, _ = _gamma_half(2 * q + 1)
    b, _ = _gamma_half(e + 2)
    val = a * b / den[0]            # sqrt(pi)^2 cancels the 1/pi
    return val * (4 * _G) ** ((2 * q + e + 1) // 2)


def polynomial_mean(d: SmoothedDensity, degree: int) -> MultiPoly:
    """int x^degree rho~_l, exact in g and h (degree odd gives 0).

    Single boundary terms may carry negative powers of g; these are collected
    separately and must cancel.
    """
    if degree < 0:
        raise InvalidParameter("degree must be non-negative")
    if degree % 2:
        return MultiPoly.const(0)
    total = MultiPoly.const(0)
    for q, e in d.bulk:
        for a in range(q.degree("x") + 1):
            c = q.coeff("x", a)
            if c.is_zero() or (degree + a) % 2:
                continue
            total = total + c * semicircle_power_integral((degree + a) // 2, e)
    negative = {}
    for j, coeffs in d.delta.items():
        if j > degree:
            continue
        fall = factorial(degree) // factorial(degree - j)
        for r, c in coeffs.items():
            gp = r + degree - j
            if gp % 2:
                raise UnreducibleRationalPart("boundary term leaves an odd power of sqrt(g)")
            term = c * (2 * (-1) ** j * fall * 2 ** (degree - j))
            if gp >= 0:
                total = total + term * _G ** (gp // 2)
            else:
                negative[gp // 2] = negative[gp // 2] + term if gp // 2 in negative else term
    if any(not v.is_zero() for v in negative.values()):
        raise UnreducibleRationalPart("negative powers of g do not cancel in a polynomial mean")
    return total


# ---------------------------------------------------------------------------
# linear statistics

@dataclass
class LinearStatistic:
    """a(x) in A = sum_j a(lambda_j): an exact polynomial or a smooth handle."""
    poly: MultiPoly | None = None
    smooth: SmoothFunction | None = None
    label: str = ""

    def __post_init__(self):
        if (self.poly is None) == (self.smooth is None):
            raise InvalidParameter("give exactly one of poly or smooth")
        if self.poly is not None and self.poly.variables() - {"x"}:
            raise InvalidParameter("a polynomial statistic may only involve x")

    @property
    def order(self) -> int:
        return 10 ** 6 if self.poly is not None else self.smooth.order

    @classmethod
    def monomial(cls, degree: int) -> "LinearStatistic":
        return cls(poly=_X ** degree, label=f"x^{degree}")

    @classmethod
    def chebyshev(cls, k: int) -> "LinearStatistic":
        """T_k(x), the Chebyshev polynomial of the first kind."""
        if k < 0:
            raise InvalidParameter("k must be non-negative")
        t0, t1 = MultiPoly.const(1), _X
        for _ in range(k):
            t0, t1 = t1, 2 * _X * t1 - t0
        return cls(poly=t0, label=f"T_{k}")

    def handle(self) -> SmoothFunction:
        if self.smooth is not None:
            return self.smooth
        deg = max(self.poly.degree("x"), 0)
        return SmoothFunction.polynomial([float(self.poly.coeff("x", d).constant_value())
                                          for d in range(deg + 1)])


@dataclass
class StatisticMean:
    """(1/N) <A> ~ sum_l coefficients[l] N^(-l)."""
    coefficients: list
    total: object = None


def _density_list(l_max: int, densities):
    if densities is not None:
        if len(densities) < l_max + 1:
            raise InvalidParameter("not enough densities supplied")
        return densities[:l_max + 1]
    from .loops import resolvent_expansion
    ws = resolvent_expansion(l_max)
    return [density_from_resolvent(w, l) for l, w in enumerate(ws)]


def exact_level_mean(a: LinearStatistic, d: SmoothedDensity) -> MultiPoly:
    """int a rho~_l for a polynomial statistic, in Q[g, h]."""
    total = MultiPoly.const(0)
    for e, c in a.poly.items():
        total = total + polynomial_mean(d, e[0]) * c
    return total


def required_smoothness(d: SmoothedDensity) -> int:
    """Derivatives of a needed against rho~_l: boundary orders and bulk Taylor subtraction."""
    return max([d.max_delta_order(), 0] + [(-e - 1) // 2 - 1 for _, e in d.bulk])


def quadrature_level_mean(a: LinearStatistic, d: SmoothedDensity, g: float, h: float,
                          quadrature: QuadratureConfig | None = None, detail: bool = False):
    """int a rho~_l numerically: finite-part quadrature on the bulk plus boundary terms.

    With ``detail`` a size is returned as well: the boundary terms in absolute
    value plus, for each bulk term, its prefactor times the largest Taylor
    coefficient of F at y = 1.  At l >= 1 the pieces cancel strongly, so this
    is the scale against which the quadrature error should be judged.
    """
    f = a.handle()
    A = 2.0 * math.sqrt(g)
    need = required_smoothness(d)
    if f.order < need:
        raise InsufficientSmoothness(f"statistic has {f.order} derivatives, level {d.l} needs {need}")
    cfg = quadrature or QuadratureConfig()
    total = 0.0
    size = 0.0
    for q, e in d.bulk:
        n = (-e - 1) // 2          # (4g - x^2)^(e/2) = A^e (1 - u^2)^(-(n + 1/2))
        qc = [float(q.coeff("x", i).evaluate(g=g, h=h)) for i in range(max(q.degree("x"), 0) + 1)]
        Q = np.polynomial.Polynomial(qc)
        extra = max(0, min(cfg.taylor_terms, f.order - max(n - 1, -1)))
        K = max(n - 1, -1) + extra

        def Gder(u, j):
            return A ** j * sum(comb(j, i) * f.derivative(A * u, i) * float(Q.deriv(j - i)(A * u))
                                for i in range(j + 1))

        taylor = _even_part_taylor([Gder(1.0, j) / factorial(j) for j in range(K + 1)],
                                   [Gder(-1.0, j) / factorial(j) for j in range(K + 1)], K)

        def F(y):
            r = math.sqrt(y)
            return 0.5 * (f(A * r) * Q(A * r) + f(-A * r) * Q(-A * r))

        part = A ** (e + 1) * finite_part_integral(F, taylor, n, cfg) / math.pi
        total += part
        size += abs(A ** (e + 1)) * max(abs(c) for c in taylor) / math.pi
    for j, coeffs in d.delta.items():
        edge = (-1) ** j * (f.derivative(A, j) + (-1) ** j * f.derivative(-A, j))
        for r, c in coeffs.items():
            part = float(c.evaluate(h=h)) * g ** (r / 2) * edge
            total += part
            size += abs(part)
    return (total, size) if detail else total


def _even_part_taylor(plus: list, minus: list, K: int) -> list:
    """Taylor coefficients at y = 1 of (G(sqrt y) + G(-sqrt y))/2, from those of G at u = +1 and -1."""
    # s(t) = sqrt(1 + t) - 1
    s = np.zeros(K + 1)
    c = 1.0
    for i in range(1, K + 1):
        c = c * (0.5 - (i - 1)) / i
        s[i] = c
    out = np.zeros(K + 1)
    power = np.zeros(K + 1)
    power[0] = 1.0
    for j in range(K + 1):
        out += 0.5 * (plus[j] + minus[j] * (-1) ** j) * power
        power = np.convolve(power, s)[:K + 1]
    return list(out)


def linear_statistic_mean(a: LinearStatistic, l_max: int, N=None, kappa=None, g=Fraction(1, 4),
                          densities=None, method: str = "auto",
                          quadrature: QuadratureConfig | None = None) -> StatisticMean:
    """Large-N expansion of (1/N) <sum_j a(lambda_j)> in the scaled ensemble.

    Level l contributes g^(l-1) kappa^(-l/2) int a rho~_l times N^(-l).  The
    exact path (polynomial statistics) returns polynomials in g and k = 1/kappa,
    specialised when g or kappa are given; the quadrature path needs numeric g
    and kappa.
    """
    if l_max < 0:
        raise InvalidParameter("l_max must be non-negative")
    if method not in ("auto", "exact", "quadrature"):
        raise InvalidParameter(f"unknown method {method!r}")
    if method == "auto":
        method = "exact" if a.poly is not None else "quadrature"
    if method == "exact" and a.poly is None:
        raise InvalidParameter("the exact path needs a polynomial statistic")
    ds = _density_list(l_max, densities)
    coeffs = []
    if method == "exact":
        for l, d in enumerate(ds):
            v = exact_level_mean(a, d)
            c = MultiPoly.const(0)
            for hp in range(v.degree("h") + 1):
                block = v.coeff("h", hp)
                for ge, gc in block.items():
                    c = c + h_block_to_k(MultiPoly.monomial(gc, h=hp), l) * _G ** ge[1]
            c = c * _G ** l if l else c
            c = c.divide_monomial(g=1)
            if g is not None:
                c = c.subs(g=Fraction(g))
            if kappa is not None:
                c = c.subs(k=1 / Fraction(kappa))
            coeffs.append(c.constant_value() if c.is_constant() else c)
    else:
        if kappa is None or g is None:
            raise InvalidParameter("the quadrature path needs numeric g and kappa")
        gf, kf = float(g), float(kappa)
        need = max(required_smoothness(d) for d in ds)
        if a.order < need:
            raise InsufficientSmoothness(f"statistic has {a.order} derivatives, levels up to {l_max} need {need}")
        h = math.sqrt(kf) - 1 / math.sqrt(kf)
        for l, d in enumerate(ds):
            coeffs.append(gf ** (l - 1) * kf ** (-l / 2) * quadrature_level_mean(a, d, gf, h, quadrature))
    total = None
    if N is not None and not isinstance(N, MultiPoly):
        total = sum(c * Fraction(N) ** -l if not isinstance(c, float) else c * float(N) ** -l
                    for l, c in enumerate(coeffs))
    return StatisticMean(coeffs, total)
