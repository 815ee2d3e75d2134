"""The orthogonal, unitary and symplectic cases (kappa = 1/2, 1, 2).

Moments here are those of the unscaled ensemble with weight exp(-kappa x^2 / 2),
m_{2p}(N, kappa) = <Tr G^(2p)>.  N may be an integer, a Fraction, or the
MultiPoly variable N for symbolic work.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb, factorial

from .errors import DomainError, MethodUnsupported, ParityUnsupported
from .exact import MultiPoly
from .moments import catalan, gamma_ratio
from .spectral import SpectralExpr

NN = MultiPoly.var("N")


class Ensemble(Enum):
    GOE = Fraction(1, 2)
    GUE = Fraction(1)
    GSE = Fraction(2)

    @property
    def kappa(self) -> Fraction:
        return self.value

    @classmethod
    def parse(cls, text: str) -> "Ensemble":
        try:
            return cls[text.upper()]
        except KeyError:
            raise ValueError(f"unknown ensemble {text!r}; expected GOE, GUE or GSE") from None


# ---------------------------------------------------------------------------
# recurrences

def recurrence_moments(e: Ensemble, p_max: int, N=NN) -> list:
    """[m_0, m_2, ..., m_{2 p_max}] from the ensemble's linear recurrence."""
    if p_max < 0:
        raise ValueError("p_max must be non-negative")
    N = N if isinstance(N, MultiPoly) else Fraction(N)
    F = Fraction
    if e is Ensemble.GUE:
        m = [N * 1, N * N]
    elif e is Ensemble.GOE:
        m = [N * 1, N * (N + 1)]
    else:
        m = [N * 1, N * (N - F(1, 2))]
    for p in range(2, p_max + 1):
        prev = lambda k: m[p - k] if p - k >= 0 else 0
        if e is Ensemble.GUE:
            rhs = (4 * p - 2) * N * prev(1) + (p - 1) * (2 * p - 1) * (2 * p - 3) * prev(2)
        elif e is Ensemble.GOE:
            a = (2 * p - 3) * (2 * p - 4) * (2 * p - 5)
            rhs = ((4 * p - 1) * (2 * N - 1) * prev(1)
                   + (2 * p - 3) * (10 * p * p - 9 * p - 8 * N * N + 8 * N) * prev(2)
                   - 5 * a * (2 * N - 1) * prev(3)
                   - 2 * a * (2 * p - 6) * (2 * p - 7) * prev(4))
        else:
            a = (2 * p - 3) * (2 * p - 4) * (2 * p - 5)
            rhs = (F(1, 2) * (4 * p - 1) * (4 * N + 1) * prev(1)
                   + F(1, 4) * (2 * p - 3) * (10 * p * p - 9 * p - 32 * N * N - 16 * N) * prev(2)
                   - F(5, 8) * a * (4 * N + 1) * prev(3)
                   - F(1, 8) * a * (2 * p - 6) * (2 * p - 7) * prev(4))
        m.append(rhs * F(1, p + 1))
    return m[:p_max + 1]


# ---------------------------------------------------------------------------
# numbers of the form q * pi^(k/2), used for half-integer Pochhammer symbols

@dataclass(frozen=True)
class PiTagged:
    q: Fraction
    k: int = 0          # power of sqrt(pi)

    def __mul__(self, other):
        if isinstance(other, PiTagged):
            return PiTagged(self.q * other.q, self.k + other.k)
        return PiTagged(self.q * other, self.k)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiTagged):
            return PiTagged(self.q / other.q, self.k - other.k)
        return PiTagged(self.q / other, self.k)

    def __add__(self, other):
        if other == 0:
            return self
        if self.q == 0:
            return other
        if other.k != self.k:
            raise ValueError("cannot add terms with different powers of sqrt(pi)")
        return PiTagged(self.q + other.q, self.k)

    __radd__ = __add__

    def rational(self) -> Fraction:
        if self.q != 0 and self.k != 0:
            raise AssertionError(f"sqrt(pi)^{self.k} failed to cancel")
        return self.q


def gamma(a) -> PiTagged:
    """Gamma at a positive integer or a half-integer."""
    a = Fraction(a)
    if a.denominator == 1:
        if a <= 0:
            raise ValueError("Gamma has a pole at non-positive integers")
        return PiTagged(Fraction(factorial(int(a) - 1)))
    if a.denominator != 2:
        raise ValueError("only integer and half-integer arguments are supported")
    n = int(a - Fraction(1, 2))
    if n >= 0:
        return PiTagged(Fraction(factorial(2 * n), 4 ** n * factorial(n)), 1)
    n = -n
    return PiTagged(Fraction((-4) ** n * factorial(n), factorial(2 * n)), 1)


def pochhammer(a, n) -> PiTagged:
    """(a)_n = Gamma(a + n) / Gamma(a), with n possibly a half-integer."""
    a, n = Fraction(a), Fraction(n)
    if n.denominator == 1 and n >= 0:
        v = Fraction(1)
        for i in range(int(n)):
            v *= a + i
        return PiTagged(v)
    return gamma(a + n) / gamma(a)


def gbinom(a, k: int) -> Fraction:
    """Binomial coefficient with arbitrary rational top."""
    if k < 0:
        return Fraction(0)
    a = Fraction(a)
    v = Fraction(1)
    for i in range(k):
        v = v * (a - i) / (i + 1)
    return v


# ---------------------------------------------------------------------------
# closed forms

GUE_METHODS = ("mehta", "mezzadri-simm")
GOE_METHODS = ("goulden-jackson", "mezzadri-simm")
GSE_METHODS = ("mezzadri-simm",)


def methods(e: Ensemble) -> tuple:
    return {Ensemble.GUE: GUE_METHODS, Ensemble.GOE: GOE_METHODS, Ensemble.GSE: GSE_METHODS}[e]


def _gue_mehta(p: int, N: int) -> Fraction:
    s = sum(comb(p, j) * comb(N, j + 1) * 2 ** j for j in range(p + 1))
    return Fraction(factorial(2 * p), 2 ** p * factorial(p)) * s


def _gue_ms(p: int, N: int) -> Fraction:
    if N % 2 == 0:
        n = N // 2
        pref = PiTagged(Fraction(2) ** (N + p)) * gamma(n + 1) * gamma(n) / PiTagged(Fraction(2 * p + 1), 1) / gamma(N)
        s = sum((comb(p, j) * comb(p + 1, j + 1) * pochhammer(n - j, Fraction(2 * p + 1, 2))
                 for j in range(min(n - 1, p) + 1)), PiTagged(Fraction(0), 1))
    else:
        n = (N + 1) // 2
        pref = PiTagged(Fraction(2) ** (N + p)) * gamma(n) * gamma(n) / PiTagged(Fraction(2 * p + 1), 1) / gamma(N)
        s = sum((comb(p, j) * comb(p + 1, j) * pochhammer(n - j, Fraction(2 * p + 1, 2))
                 for j in range(min((N - 1) // 2, p) + 1)), PiTagged(Fraction(0), 1))
    return (pref * s).rational()


def _goe_gj(p: int, N: int) -> Fraction:
    s = Fraction(0)
    for i in range(p + 1):
        for j in range(p + 1):
            s += 2 ** (2 * p - i) * gbinom(Fraction(2 * p - 1, 2), p - j) * gbinom(i + j - 1, i) \
                * gbinom(Fraction(N - 1, 2), j)
    return _gue_mehta(p, N - 1) + factorial(p) * s


def _goe_phi(p: int, N: int) -> Fraction:
    """The boundary term of the even-N GOE formula.

    For N <= 2p the finite sums are used in the form that agrees with the
    recurrence: C(N-1, 2i) / (j! (2j + 2i + 1)) in the first sum and
    2^(p - 2i) in the second.
    """
    n = N // 2
    if N <= 2 * p:
        g_n = gamma(n).rational()
        a = Fraction(0)
        for j in range(p - n + 1):
            for i in range(n):
                a += Fraction(comb(N - 1, 2 * i) * (-1) ** j,
                              factorial(j) * (2 * j + 2 * i + 1) * factorial(p - n - j)) * Fraction(2) ** (-j - 2 * i)
        b = Fraction(0)
        for j in range(n):
            for i in range(j + 1):
                b += Fraction(factorial(n - i - 1) * comb(N - 1, N - 2 * i - 1),
                              factorial(j - i) * factorial(p - j)) / Fraction(2) ** (p - 2 * i)
        return factorial(2 * p) * 2 ** n / g_n * a + factorial(2 * p) / g_n * b
    s = Fraction(0)
    for j in range(p + 1):
        s += pochhammer(Fraction(N + 1, 2) - j, j).rational() * Fraction(2) ** (3 * j) \
            / (factorial(2 * j) * factorial(p - j))
    return factorial(2 * p) * s


def _goe_ms(p: int, N: int) -> Fraction:
    if N % 2:
        raise ParityUnsupported("this GOE closed form needs even N")
    n = N // 2
    s = PiTagged(Fraction(0))
    for j in range(1, min(n - 1, p) + 1):
        for i in range(min(p, n - 1 - j) + 1):
            s = s + comb(p, i) * comb(p, i + j) * (pochhammer(n - i - j, Fraction(2 * p + 1, 2))
                                                   / pochhammer(n - j, Fraction(1, 2)))
    return _gue_mehta(p, N - 1) - 2 ** p * s.rational() + _goe_phi(p, N)


def _gse_ms(p: int, N: int) -> Fraction:
    pref = gamma(N + 1) * gamma(N) / (PiTagged(Fraction(4) ** (1 - N), 1) * gamma(2 * N))
    s = PiTagged(Fraction(0), 1)
    for j in range(1, min(N, p) + 1):
        for i in range(min(N - j, p - j) + 1):
            s = s + comb(p, i) * comb(p, i + j) * pochhammer(N - i - j + 1, Fraction(2 * p - 1, 2))
    return Fraction(1, 2 ** (p + 1)) * _gue_mehta(p, 2 * N) - (pref * s).rational()


def closed_form_moment(e: Ensemble, method: str, p: int, N: int) -> Fraction:
    """m_{2p}(N, kappa) from one of the explicit finite-sum formulas."""
    if p < 0 or N < 1:
        raise ValueError("need p >= 0 and N >= 1")
    table = {
        (Ensemble.GUE, "mehta"): _gue_mehta,
        (Ensemble.GUE, "mezzadri-simm"): _gue_ms,
        (Ensemble.GOE, "goulden-jackson"): _goe_gj,
        (Ensemble.GOE, "mezzadri-simm"): _goe_ms,
        (Ensemble.GSE, "mezzadri-simm"): _gse_ms,
    }
    fn = table.get((e, method))
    if fn is None:
        raise MethodUnsupported(f"no closed form {method!r} for {e.name}")
    return Fraction(fn(p, int(N)))


# ---------------------------------------------------------------------------
# generating functions

def harer_zagier(p_max: int, N: int) -> list:
    """Taylor coefficients in s^2 of (1/2s^2)[((1 + s^2)/(1 - s^2))^N - 1]."""
    if p_max < 0:
        raise ValueError("p_max must be non-negative")
    n = p_max + 1
    # (1 + t)^N (1 - t)^(-N), coefficients of t^0..t^n
    a = [gbinom(N, i) for i in range(n + 1)]
    b = [gbinom(N + i - 1, i) for i in range(n + 1)]
    c = [sum(a[i] * b[m - i] for i in range(m + 1)) for m in range(n + 1)]
    return [c[p + 1] / 2 for p in range(p_max + 1)]


def double_factorial(n: int) -> int:
    v = 1
    while n > 1:
        v *= n
        n -= 2
    return v


def harer_zagier_moments(p_max: int, N: int) -> list:
    return [c * double_factorial(2 * p - 1) for p, c in enumerate(harer_zagier(p_max, N))]


def gue_u_series(p_max: int, N) -> list:
    """Coefficients in t^2 of N exp(-t^2/2) 1F1(1 + N; 2; t^2)."""
    if p_max < 0:
        raise ValueError("p_max must be non-negative")
    N = N if isinstance(N, MultiPoly) else Fraction(N)
    ex = [Fraction(-1, 2) ** k / factorial(k) for k in range(p_max + 1)]
    hyp = []
    poch = Fraction(1) if not isinstance(N, MultiPoly) else MultiPoly.const(1)
    for k in range(p_max + 1):
        hyp.append(poch * Fraction(1, factorial(k + 1) * factorial(k)))
        poch = poch * (N + 1 + k)
    return [N * sum((ex[i] * hyp[p - i] for i in range(p + 1)), 0 * N) for p in range(p_max + 1)]


def u_series_moments(coeffs: list) -> list:
    return [c * factorial(2 * p) for p, c in enumerate(coeffs)]


# ODEs for u(t) = sum m_{2p} t^(2p)/(2p)!: lists of (coefficient, power of t, derivative order)
def u_ode_terms(e: Ensemble, N) -> list:
    F = Fraction
    if e is Ensemble.GUE:
        return [(1, 1, 2), (3, 0, 1), (-1, 3, 0), (-4 * N, 1, 0)]
    if e is Ensemble.GOE:
        return [(1, 1, 4), (5, 0, 3), (-5, 3, 2), (-(8 * N - 4), 1, 2), (-36, 2, 1), (-(20 * N - 10), 0, 1),
                (4, 5, 0), (20 * N - 10, 3, 0), (16 * N * N - 16 * N - 44, 1, 0)]
    return [(1, 1, 4), (5, 0, 3), (F(-5, 4), 3, 2), (-(8 * N + 2), 1, 2), (-9, 2, 1), (-(20 * N + 5), 0, 1),
            (F(1, 4), 5, 0), (5 * N + F(5, 4), 3, 0), (16 * N * N + 8 * N - 11, 1, 0)]


def ode_series_residual(u: list, terms: list) -> list:
    """Residual coefficients of sum c t^a u^(d), for every t-power fully determined by u[0..len-1]."""
    top = len(u) - 1
    out = []
    m = 0
    while True:
        needed = [m - a + d for _, a, d in terms if m - a >= 0]
        if needed and max(needed) > top:
            break
        r = 0
        for c, a, d in terms:
            k = m - a
            if k < 0:
                continue
            r = r + c * u[k + d] * (factorial(k + d) // factorial(k))
        out.append(r)
        m += 1
        if m > top + 10:
            break
    return out


def _u_from_moments(ms: list) -> list:
    u = []
    for p, m in enumerate(ms):
        u.append(Fraction(m) / factorial(2 * p))
        u.append(Fraction(0))
    return u[:-1]


def u_ode_check(e: Ensemble, p_max: int, N) -> bool:
    """The recurrence moments solve the ensemble's u-ODE through t^(2 p_max)."""
    N = Fraction(N)
    u = _u_from_moments(recurrence_moments(e, p_max, N))
    ok = all(r == 0 for r in ode_series_residual(u, u_ode_terms(e, N)))
    if e is Ensemble.GOE:
        # U = u'' - (4t^2 + 4N - 2)u solves t U'' + 5U' - t(t^2 + 4N - 2)U = 0
        U = [0] * (len(u) - 2)
        for k in range(len(U)):
            U[k] = u[k + 2] * (k + 2) * (k + 1) - (4 * N - 2) * u[k] - (4 * u[k - 2] if k >= 2 else 0)
        res = ode_series_residual(U, [(1, 1, 2), (5, 0, 1), (-1, 3, 0), (-(4 * N - 2), 1, 0)])
        ok = ok and all(r == 0 for r in res)
    return ok


# ---------------------------------------------------------------------------
# the resolvent ODEs, in the starred scaling, as series in eps = 1/N

@dataclass
class OdeSpec:
    """F = (g/N) W_1 satisfies sum_d coeff_d(x, eps) F^(d) = rhs(x, eps).

    Coefficients are dicts {eps power: MultiPoly in x and g}.
    """
    ensemble: Ensemble
    order: int
    coeffs: dict
    rhs: dict


def ode_spec(e: Ensemble) -> OdeSpec:
    x, g = MultiPoly.var("x"), MultiPoly.var("g")
    F = Fraction
    if e is Ensemble.GUE:
        c = {3: {2: g ** 2}, 1: {0: 4 * g - x ** 2}, 0: {0: x}}
        return OdeSpec(e, 3, c, {0: 2 * g})
    if e is Ensemble.GOE:
        c = {5: {4: -4 * g ** 4},
             3: {2: 5 * g ** 2 * (x ** 2 - 4 * g), 3: 10 * g ** 3},
             2: {2: -6 * g ** 2 * x},
             1: {0: -x ** 4 + 8 * g * x ** 2 - 16 * g ** 2, 1: -4 * g * x ** 2 + 16 * g ** 2, 2: 2 * g ** 2},
             0: {0: x * (x ** 2 - 4 * g), 1: 2 * g * x}}
        return OdeSpec(e, 5, c, {0: 2 * g * (x ** 2 - 4 * g), 1: 10 * g ** 2})
    c = {5: {4: F(-1, 4) * g ** 4},
         3: {2: 5 * g ** 2 * (F(1, 4) * x ** 2 - g), 3: F(-5, 4) * g ** 3},
         2: {2: F(-3, 2) * g ** 2 * x},
         1: {0: -x ** 4 + 8 * g * x ** 2 - 16 * g ** 2, 1: 2 * g * x ** 2 - 8 * g ** 2, 2: F(1, 2) * g ** 2},
         0: {0: x * (x ** 2 - 4 * g), 1: -g * x}}
    return OdeSpec(e, 5, c, {0: 2 * g * (x ** 2 - 4 * g), 1: -5 * g ** 2})


def specialise(w: SpectralExpr, l: int, kappa) -> SpectralExpr:
    """g^l kappa^(-l/2) W_1^l at a rational kappa (half powers of kappa cancel against h)."""
    k = 1 / Fraction(kappa)
    out = SpectralExpr.const(0)
    g = MultiPoly.var("g")
    for j in sorted(w.h_degrees()):
        if (l - j) % 2:
            raise AssertionError("h-parity of the resolvent coefficient is broken")
        out = out + w.h_component(j) * ((1 - k) ** j * k ** ((l - j) // 2))
    return out * g ** l


@dataclass
class OdeResidualReport:
    ensemble: str
    l_max: int
    first_nonzero: int | None        # lowest power of 1/N with a nonzero residual
    checked_through: int

    def vanishes_through(self, order: int) -> bool:
        return self.first_nonzero is None or self.first_nonzero > order


def ode_residual(e: Ensemble, resolvent: list) -> OdeResidualReport:
    """Insert the truncated 1/N expansion into the resolvent ODE and find the first nonzero order."""
    spec = ode_spec(e)
    l_max = len(resolvent) - 1
    V = [specialise(w, l, e.kappa) for l, w in enumerate(resolvent)]
    derivs = []
    for v in V:
        ds = [v]
        for _ in range(spec.order):
            ds.append(ds[-1].differentiate())
        derivs.append(ds)
    top = l_max + 2
    first = None
    for m in range(top + 1):
        r = SpectralExpr.const(0)
        for d, byeps in spec.coeffs.items():
            for a, c in byeps.items():
                l = m - a
                if 0 <= l <= l_max:
                    r = r + derivs[l][d] * c
        if m in spec.rhs:
            r = r - spec.rhs[m]
        if not r.is_zero():
            first = m
            break
    return OdeResidualReport(e.name, l_max, first, top)


# ---------------------------------------------------------------------------
# large-N expansion of the GUE resolvent

def eta_recursion(j_max: int) -> list:
    """Tables {r: C_{j,r}} for j = 1..j_max, with (g/N) W_1 = sum_j eta_j N^(-2j) at kappa = 1.

    eta_j = sum_r C_{j,r} (x^2 - 4g)^(-r - 1/2), so C_{j,r} carries g^(2j) relative
    to the coefficients of W_1^{2j}.
    """
    if j_max < 1:
        raise ValueError("j_max must be at least 1")
    g = MultiPoly.var("g")
    tables = [{2: g ** 3}]
    for j in range(1, j_max):
        prev = tables[-1]
        nxt = {}
        for r in range(2 * j + 2, 3 * j + 3):
            v = (prev.get(r - 2, 0) * (r - 1) + prev.get(r - 3, 0) * g * (4 * r - 10))
            v = g ** 2 * Fraction((2 * r - 3) * (2 * r - 1), r + 1) * v
            if v != 0:
                nxt[r] = v
        tables.append(nxt)
    return tables


def eta_expr(table: dict, j: int) -> SpectralExpr:
    """eta_j / g^(2j) as a spectral expression, comparable with W_1^{2j} at h = 0."""
    out = SpectralExpr.const(0)
    for r, c in table.items():
        out = out + SpectralExpr({2 * r + 1: c.divide_monomial(g=2 * j)})
    return out


# ---------------------------------------------------------------------------
# closed large-N expansions

def largeN_moment_expansion(e: Ensemble, p: int, order: int = 6) -> list:
    """Coefficients of N^0, N^-1, ..., N^-order.

    GUE: of m_{2p}/(C_p N^{p+1}).  GOE and GSE: of m_{2p}/N^{p+1}.
    """
    if not 0 <= order <= 6:
        raise DomainError("closed forms are known through N^-6")
    if p < 0:
        raise DomainError("p must be non-negative")
    P = Fraction(p)
    G = gamma_ratio(p)
    two = lambda k: Fraction(2) ** k
    if e is Ensemble.GUE:
        out = [Fraction(1), Fraction(0),
               (P + 1) * P * (P - 1) / 12, Fraction(0),
               (P + 1) * P * (P - 1) * (P - 2) * (P - 3) * (5 * P - 2) / 1440, Fraction(0),
               (P + 1) * P * (P - 1) * (P - 2) * (P - 3) * (P - 4) * (P - 5) * (35 * P ** 2 - 77 * P + 12) / 362880]
        return out[:order + 1]
    goe = [Fraction(catalan(p)),
           two(2 * p - 1) * (1 - G),
           Fraction(1, 3) * two(2 * p - 2) * P * (-3 + (7 * P - 1) * G),
           Fraction(1, 3) * two(2 * p - 4) * P * (P - 1) * (8 * P - 7 - (14 * P - 4) * G),
           Fraction(1, 45) * two(2 * p - 5) * P * (P - 1) * (P - 2) * (-15 * (8 * P - 9) + (185 * P ** 2 - 317 * P + 6) * G),
           Fraction(1, 45) * two(2 * p - 8) * P * (P - 1) * (P - 2) * (P - 3)
           * (320 * P ** 2 - 1008 * P + 487 - 4 * (185 * P ** 2 - 387 * P + 28) * G),
           Fraction(1, 2835) * two(2 * p - 9) * P * (P - 1) * (P - 2) * (P - 3) * (P - 4)
           * (-63 * (320 * P ** 2 - 1168 * P + 675) + 4 * (6209 * P ** 3 - 29106 * P ** 2 + 26605 * P - 60) * G)]
    if e is Ensemble.GOE:
        return goe[:order + 1]
    gse = [Fraction(catalan(p)),
           two(2 * p - 2) * (-1 + G),
           Fraction(1, 3) * two(2 * p - 4) * P * (-3 + (7 * P - 1) * G),
           Fraction(1, 3) * two(2 * p - 7) * P * (P - 1) * (-8 * P + 7 + 2 * (7 * P - 2) * G),
           Fraction(1, 45) * two(2 * p - 9) * P * (P - 1) * (P - 2) * (-15 * (8 * P - 9) + (185 * P ** 2 - 317 * P + 6) * G),
           Fraction(1, 45) * two(2 * p - 13) * P * (P - 1) * (P - 2) * (P - 3)
           * (-320 * P ** 2 + 1008 * P - 487 + 4 * (185 * P ** 2 - 387 * P + 28) * G),
           Fraction(1, 2835) * two(2 * p - 15) * P * (P - 1) * (P - 2) * (P - 3) * (P - 4)
           * (-63 * (320 * P ** 2 - 1168 * P + 675) + 4 * (6209 * P ** 3 - 29106 * P ** 2 + 26605 * P - 60) * G)]
    return gse[:order + 1]


def expansion_from_polynomial(e: Ensemble, m: MultiPoly, p: int, order: int = 6) -> list:
    """The same coefficients read off an exact moment polynomial in N."""
    scale = Fraction(catalan(p)) if e is Ensemble.GUE else Fraction(1)
    return [m.coeff("N", p + 1 - j).constant_value() / scale if p + 1 - j >= 0 else Fraction(0)
            for j in range(order + 1)]


def gse_goe_duality(p: int, gse=None, goe=None) -> bool:
    """m_{2p}(N, 2) = (-1)^(p+1) 2^(-p-1) m_{2p}(-2N, 1/2), as polynomials in N."""
    gse = recurrence_moments(Ensemble.GSE, p)[p] if gse is None else gse
    goe = recurrence_moments(Ensemble.GOE, p)[p] if goe is None else goe
    image = goe.subs(N=-2 * NN) * (Fraction(-1) ** (p + 1) / 2 ** (p + 1))
    return image == gse
