"""Multi-point correlators W_n^l as sums of Zhukovsky rational terms.

A ``Correlator`` stores its value at g = 1 as a list of ``RF`` terms in the
variables z_0..z_{n-1} (and h).  The coupling is restored on output through
homogeneity: W_n^l carries weight 4 - 2l - 3n when x has weight 1 and g
weight 2, so W(x; g) = g^(w/2) W(x / sqrt(g); 1).
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import comb

from .errors import DiagonalPoleResidue, InsufficientOrder
from .exact import MultiPoly, pmul, pscale
from .spectral import SpectralExpr, restore_g
from .zhukovsky import RF, _canon_factor, mono, remap, swap_variables

POLE_CAP = 4


def hierarchy_weight(n: int, l: int) -> int:
    return 4 - 2 * l - 3 * n


class Correlator:
    """n-point expression sum(terms) at g = 1, tagged with its (n, l) slot."""

    def __init__(self, n: int, terms, tag=None, weight: int | None = None):
        self.n = n
        self.terms = [t for t in terms if not t.is_zero()]
        for t in self.terms:
            if t.nv != n + 1:
                raise ValueError("term arity does not match the variable count")
        self.tag = tag
        if weight is None and tag is not None:
            weight = hierarchy_weight(*tag)
        self.weight = weight
        self._nf = None

    @classmethod
    def from_rf(cls, rf: RF, tag=None, weight=None) -> "Correlator":
        return cls(rf.nv - 1, [rf], tag=tag, weight=weight)

    def normal_form(self) -> RF:
        if self._nf is None:
            acc = RF.const(self.n + 1, 0)
            for t in self.terms:
                acc = acc + t
            self._nf = acc.reduce()
        return self._nf

    def is_zero(self) -> bool:
        return self.normal_form().is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Correlator):
            return NotImplemented
        return self.n == other.n and (self.normal_form() - other.normal_form()).is_zero()

    def __sub__(self, other: "Correlator") -> "Correlator":
        return Correlator(self.n, self.terms + [-t for t in other.terms], weight=self.weight)

    def swapped(self, i: int, j: int) -> "Correlator":
        return Correlator(self.n, [swap_variables(t, i, j) for t in self.terms],
                          tag=self.tag, weight=self.weight)

    def is_symmetric(self) -> bool:
        nf = self.normal_form()
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if not (swap_variables(nf, i, j) - nf).is_zero():
                    return False
        return True

    def merge_diagonal(self, i: int, j: int, extra_order: int) -> "Correlator":
        """Limit x_j -> x_i, by Taylor expansion in t = z_j - z_i of each term.

        Negative powers of t must cancel across the whole term sum; a surviving
        one raises DiagonalPoleResidue.
        """
        if i == j:
            raise ValueError("merge needs two distinct variables")
        poles = [t.den.get(_canon_factor(("d", i, j))[0], 0) for t in self.terms]
        kmax = max(poles, default=0)
        if kmax > POLE_CAP:
            raise DiagonalPoleResidue(f"pole order {kmax} exceeds the cap {POLE_CAP}")
        if extra_order < kmax:
            raise InsufficientOrder(f"extra_order {extra_order} below pole order {kmax}")
        nv = self.n + 1
        mp = {}
        for v in range(self.n):
            if v == j:
                mp[v] = i - (1 if i > j else 0)
            else:
                mp[v] = v - (1 if v > j else 0)
        laurent = {}
        for t, k in zip(self.terms, poles):
            series = _taylor_in_t(t, i, j, extra_order)
            # the stored factor is z_i - z_j = -t when i < j, else z_j - z_i = t
            flip = i < j and k % 2 == 1
            for m, c in enumerate(series):
                e = m - k
                c = -c if flip else c
                laurent[e] = laurent[e] + c if e in laurent else c
        for e, c in sorted(laurent.items()):
            if e < 0 and not c.reduce().is_zero():
                raise DiagonalPoleResidue(f"coefficient of t^{e} does not cancel")
        const = laurent.get(0, RF.const(nv, 0))
        out = remap(const, nv - 1, {v: mp[v] for v in range(self.n)})
        return Correlator(self.n - 1, [out], weight=self.weight)

    # -- output ----------------------------------------------------------------
    def to_spectral(self) -> SpectralExpr:
        if self.n != 1:
            raise ValueError("only one-point correlators convert to SpectralExpr")
        if self.weight is None:
            raise ValueError("weight unknown; cannot restore g")
        nf = self.normal_form()
        num = nf.num
        a = nf.den.get(("z", 0), 0)
        b = nf.den.get(("m", 0), 0)
        c = nf.den.get(("p", 0), 0)
        if b > c:
            for _ in range(b - c):
                num = pmul(num, {(1, 0): 1, (0, 0): 1})
        elif c > b:
            for _ in range(c - b):
                num = pmul(num, {(1, 0): 1, (0, 0): -1})
        b = max(b, c)
        shifted = {(ze - a, he): v for (ze, he), v in num.items()}
        return laurent_to_spectral(shifted, b, self.weight)

    def evaluate(self, xs, g: float = 1.0, h: float = 0.0) -> complex:
        """Numeric value at points x_i off the cut (-2 sqrt g, 2 sqrt g)."""
        if self.weight is None:
            raise ValueError("weight unknown; cannot restore g")
        rg = cmath.sqrt(g)
        zs = []
        for x in xs:
            u = complex(x) / rg
            y = u * cmath.sqrt(1 - 4 / (u * u))
            zs.append((u + y) / 2)
        return rg ** self.weight * complex(self.normal_form().evaluate(zs, h))

    def __repr__(self):
        return f"Correlator(n={self.n}, tag={self.tag}, terms={len(self.terms)})"


def _taylor_in_t(term: RF, i: int, j: int, order: int):
    """Coefficients (as RF in the original variables, z_j absent) of
    term_without_diagonal(z_j = z_i + t) for t^0 .. t^order."""
    nv = term.nv
    dfac = _canon_factor(("d", i, j))[0]
    # numerator expansion
    num_series = [dict() for _ in range(order + 1)]
    for k, v in term.num.items():
        p = k[j]
        base = list(k)
        base[j] = 0
        for m in range(min(p, order) + 1):
            e = list(base)
            e[i] += p - m
            e = tuple(e)
            num_series[m][e] = num_series[m].get(e, 0) + v * comb(p, m)
    series = [RF(nv, {kk: vv for kk, vv in ns.items() if vv}, {}) for ns in num_series]
    static = {}
    for f, e in term.den.items():
        if f == dfac:
            continue
        if j not in f[1:]:
            static[f] = e
            continue
        fs, s, bmono = _shifted_factor(nv, f, i, j)
        fac = []
        for m in range(order + 1):
            c = _gen_binom(-e, m) * s ** (e + m)
            den = {}
            for ff in fs:
                den[ff] = den.get(ff, 0) + e + m
            num = {(0,) * nv: c}
            for _ in range(m):
                num = pmul(num, bmono)
            fac.append(RF(nv, num, den))
        series = _series_mul(series, fac, order)
    if static:
        st = RF(nv, {(0,) * nv: 1}, static)
        series = [c * st for c in series]
    return series


def _gen_binom(a: int, m: int) -> int:
    out = Fraction(1)
    for r in range(m):
        out = out * (a - r) / (r + 1)
    assert out.denominator == 1
    return int(out)


def _shifted_factor(nv, f, i, j):
    """Write f(z_j = z_i + t) as A + B t with A = sign * prod(alphabet factors)."""
    kind = f[0]
    one = mono(nv, [])
    if kind in ("z", "m", "p"):
        return [(kind, i)], 1, one
    a, b = f[1], f[2]
    other = b if a == j else a
    if kind == "d":
        if other == i:
            raise AssertionError("diagonal factor handled separately")
        # f = z_a - z_b ; substitute z_j = z_i + t
        g, s = _canon_factor(("d", i if a == j else a, i if b == j else b))
        return [g], s, mono(nv, [], 1 if a == j else -1)
    # kind == 'a'
    if other == i:
        return [("m", i), ("p", i)], 1, mono(nv, [(i, 1)])
    g, _ = _canon_factor(("a", other, i))
    return [g], 1, mono(nv, [(other, 1)])


def _series_mul(a, b, order):
    out = []
    nv = a[0].nv
    for m in range(order + 1):
        acc = RF.const(nv, 0)
        for r in range(m + 1):
            if a[r].is_zero() or b[m - r].is_zero():
                continue
            acc = acc + a[r] * b[m - r]
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# one-variable conversion

_AB_CACHE = {0: ({0: 1}, {})}


def _ab(m: int):
    """(x + y)^m = A_m(x) + B_m(x) y at g = 1, y^2 = x^2 - 4."""
    if m in _AB_CACHE:
        return _AB_CACHE[m]
    A, B = _ab(m - 1)
    nA, nB = {}, {}
    for d, c in A.items():
        nA[d + 1] = nA.get(d + 1, 0) + c
        nB[d] = nB.get(d, 0) + c
    for d, c in B.items():
        nA[d + 2] = nA.get(d + 2, 0) + c
        nA[d] = nA.get(d, 0) - 4 * c
        nB[d + 1] = nB.get(d + 1, 0) + c
    res = ({d: c for d, c in nA.items() if c}, {d: c for d, c in nB.items() if c})
    _AB_CACHE[m] = res
    return res


def laurent_to_spectral(P: dict, b: int, weight: int) -> SpectralExpr:
    """Convert sum P[(m, j)] z^m h^j / (z^2 - 1)^b (at g = 1) to a SpectralExpr
    with g restored.

    Uses z^2 - 1 = z y, z = (x + y)/2 and 1/z = (x - y)/2.
    """
    even, odd = {}, {}
    for (m, j), c in P.items():
        m -= b
        A, B = _ab(abs(m))
        scale = Fraction(c, 2 ** abs(m))
        sgn = 1 if m >= 0 else -1
        for d, v in A.items():
            key = (d, 0, j, 0, 0)
            even[key] = even.get(key, 0) + scale * v
        for d, v in B.items():
            key = (d, 0, j, 0, 0)
            odd[key] = odd.get(key, 0) + sgn * scale * v
    terms = {b: MultiPoly(even), b - 1: MultiPoly(odd)}
    return restore_g({s: p for s, p in terms.items() if not p.is_zero()}, weight)
