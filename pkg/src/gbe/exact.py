"""Exact arithmetic: rationals, sparse multivariate polynomials and truncated series.

Polynomials are plain dicts mapping exponent tuples to coefficients.  The
low-level helpers (``padd``, ``pmul`` ...) work for any arity and any
coefficient type that supports ``+`` and ``*`` (the hierarchy engines run
them on Python ints).  ``MultiPoly`` wraps the same representation over the
fixed alphabet (x, g, h, N, k) with k standing for 1/kappa.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import DivisionByZeroSeries

Rational = Fraction

ALPHABET = ("x", "g", "h", "N", "k")
_INDEX = {name: i for i, name in enumerate(ALPHABET)}
_NV = len(ALPHABET)


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, _RationalABC):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def rational_str(q) -> str:
    q = to_rational(q)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# raw dict polynomials (any arity)

def padd(a: dict, b: dict, s=1) -> dict:
    """a + s*b."""
    r = dict(a)
    for k, v in b.items():
        w = r.get(k, 0) + s * v
        if w:
            r[k] = w
        else:
            r.pop(k, None)
    return r


def pmul(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    r = defaultdict(int)
    for ka, va in a.items():
        for kb, vb in b.items():
            r[tuple(x + y for x, y in zip(ka, kb))] += va * vb
    return {k: v for k, v in r.items() if v}


def pscale(a: dict, c) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def ppow(a: dict, n: int, nv: int) -> dict:
    r = {(0,) * nv: 1}
    for _ in range(n):
        r = pmul(r, a)
    return r


# ---------------------------------------------------------------------------

def _coerce_scalar(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    return to_rational(c)


class MultiPoly:
    """Polynomial over Q in the indeterminates x, g, h, N, k (k = 1/kappa).

    Immutable.  Zero coefficients are never stored, so equality is plain
    dict equality.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != _NV:
                    raise ValueError(f"exponent vector {e} does not match alphabet {ALPHABET}")
                c = _coerce_scalar(c)
                if c:
                    t[e] = t.get(e, 0) + c
                    if not t[e]:
                        del t[e]
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t):
        p = cls.__new__(cls)
        p._t = t
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = _coerce_scalar(c)
        return cls._raw({(0,) * _NV: c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MultiPoly":
        e = [0] * _NV
        e[_INDEX[name]] = power
        return cls._raw({tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, coeff=1, **exps) -> "MultiPoly":
        e = [0] * _NV
        for name, d in exps.items():
            e[_INDEX[name]] = d
        c = _coerce_scalar(coeff)
        return cls._raw({tuple(e): c} if c else {})

    @classmethod
    def coerce(cls, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return cls.const(other)

    # -- inspection --------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._t)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._t.get((0,) * _NV, Fraction(0))

    def degree(self, name: str | None = None) -> int:
        """Total degree, or degree in one variable.  Zero polynomial: -1."""
        if not self._t:
            return -1
        if name is None:
            return max(sum(e) for e in self._t)
        i = _INDEX[name]
        return max(e[i] for e in self._t)

    def min_degree(self, name: str) -> int:
        i = _INDEX[name]
        return min(e[i] for e in self._t) if self._t else 0

    def variables(self) -> set:
        out = set()
        for e in self._t:
            for i, d in enumerate(e):
                if d:
                    out.add(ALPHABET[i])
        return out

    def coeff(self, name: str, d: int) -> "MultiPoly":
        """Coefficient of name**d, as a polynomial in the remaining variables."""
        i = _INDEX[name]
        t = {}
        for e, c in self._t.items():
            if e[i] == d:
                t[e[:i] + (0,) + e[i + 1:]] = c
        return MultiPoly._raw(t)

    def sorted_terms(self):
        """Terms in graded lexicographic order, highest first."""
        return sorted(self._t.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other)
            except TypeError:
                return NotImplemented
        return MultiPoly._raw(padd(self._t, other._t))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other)
            except TypeError:
                return NotImplemented
        return MultiPoly._raw(padd(self._t, other._t, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            return MultiPoly._raw(pmul(self._t, other._t))
        try:
            c = _coerce_scalar(other)
        except TypeError:
            return NotImplemented
        return MultiPoly._raw(pscale(self._t, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_constant() or other.is_zero():
                return NotImplemented
            other = other.constant_value()
        try:
            c = _coerce_scalar(other)
        except TypeError:
            return NotImplemented
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return MultiPoly._raw({e: v / c for e, v in self._t.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        r = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                r = r * base
            n >>= 1
            if n:
                base = base * base
        return r

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._t == other._t
        try:
            return self._t == MultiPoly.const(other)._t
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # -- calculus & substitution --------------------------------------------
    def diff(self, name: str) -> "MultiPoly":
        i = _INDEX[name]
        t = {}
        for e, c in self._t.items():
            if e[i]:
                t[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return MultiPoly._raw(t)

    def subs(self, **values) -> "MultiPoly":
        """Substitute scalars or MultiPolys for variables."""
        out = MultiPoly._raw({})
        idx = [(_INDEX[n], MultiPoly.coerce(v)) for n, v in values.items()]
        cache = {}
        for e, c in self._t.items():
            e2 = list(e)
            term = MultiPoly.const(c)
            for i, v in idx:
                d = e2[i]
                if d:
                    key = (i, d)
                    if key not in cache:
                        cache[key] = v ** d
                    term = term * cache[key]
                    e2[i] = 0
            out = out + term * MultiPoly._raw({tuple(e2): Fraction(1)})
        return out

    def evaluate(self, **values):
        """Evaluate at scalar values for every variable present."""
        total = 0
        for e, c in self._t.items():
            v = c
            for i, d in enumerate(e):
                if d:
                    v = v * values[ALPHABET[i]] ** d
            total = total + v
        return total

    def divide_monomial(self, **exps) -> "MultiPoly":
        """Exact division by a monomial; raises ValueError if not exact."""
        m = [0] * _NV
        for name, d in exps.items():
            m[_INDEX[name]] = d
        t = {}
        for e, c in self._t.items():
            e2 = tuple(a - b for a, b in zip(e, m))
            if min(e2) < 0:
                raise ValueError("monomial division is not exact")
            t[e2] = c
        return MultiPoly._raw(t)

    def divide_linear(self, name: str, root) -> "MultiPoly":
        """Exact division by (name - root); root may be a MultiPoly free of name."""
        root = MultiPoly.coerce(root)
        deg = self.degree(name)
        if deg < 1:
            if self.is_zero():
                return self
            raise ValueError("division by a linear factor is not exact")
        q = {}
        cur = MultiPoly.const(0)
        for d in range(deg, 0, -1):
            cur = self.coeff(name, d) + root * cur
            q[d - 1] = cur
        rem = self.coeff(name, 0) + root * cur
        if not rem.is_zero():
            raise ValueError("division by a linear factor is not exact")
        out = MultiPoly.const(0)
        for d, c in q.items():
            out = out + c * MultiPoly.var(name, d)
        return out

    # -- display -------------------------------------------------------------
    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (ALPHABET[i] if d == 1 else f"{ALPHABET[i]}^{d}") for i, d in enumerate(e) if d
            )
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}"
            parts.append(s)
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


X = MultiPoly.var("x")
G = MultiPoly.var("g")
H = MultiPoly.var("h")
NN = MultiPoly.var("N")
K = MultiPoly.var("k")


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------

def _is_zero(c) -> bool:
    if isinstance(c, (int, Fraction, float)):
        return c == 0
    z = getattr(c, "is_zero", None)
    if z is not None:
        return z()
    return c == 0


def _invert_scalar(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(1) / c
    if isinstance(c, MultiPoly) and c.is_constant():
        return Fraction(1) / c.constant_value()
    raise TypeError("leading series coefficient is not an invertible scalar")


class TruncatedSeries:
    """Laurent series sum_{e >= lo} c_e t^e + O(t^order).

    ``coeffs[i]`` is the coefficient of t^(lo + i); the list never reaches
    past ``order``.  Coefficients may be ints, Fractions, MultiPolys or
    SpectralExprs.
    """

    __slots__ = ("var", "lo", "coeffs", "order")

    def __init__(self, var: str, lo: int, coeffs, order: int):
        coeffs = list(coeffs)[: max(0, order - lo)]
        self.var = var
        self.lo = lo
        self.coeffs = coeffs
        self.order = order

    @classmethod
    def from_dict(cls, var, d: dict, order: int):
        keys = [e for e in d if e < order]
        if not keys:
            return cls(var, order, [], order)
        lo = min(keys)
        return cls(var, lo, [d.get(e, 0) for e in range(lo, order)], order)

    def coefficient(self, e: int):
        if e >= self.order:
            raise ValueError(f"coefficient t^{e} is beyond the truncation order {self.order}")
        i = e - self.lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def as_dict(self) -> dict:
        return {self.lo + i: c for i, c in enumerate(self.coeffs) if not _is_zero(c)}

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return self.lo + i
        return None

    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            raise TypeError("series arithmetic needs two TruncatedSeries")
        if other.var != self.var:
            raise ValueError(f"series variables differ: {self.var} vs {other.var}")

    def __add__(self, other):
        self._check(other)
        order = min(self.order, other.order)
        d = {}
        for s in (self, other):
            for e, c in s.as_dict().items():
                if e < order:
                    d[e] = d[e] + c if e in d else c
        return TruncatedSeries.from_dict(self.var, d, order)

    def __neg__(self):
        return TruncatedSeries(self.var, self.lo, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return TruncatedSeries(self.var, self.lo, [c * x for x in self.coeffs], self.order)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        va, vb = self.valuation(), other.valuation()
        if va is None or vb is None:
            lo_a = self.lo if va is None else va
            lo_b = other.lo if vb is None else vb
            order = min(self.order + lo_b, other.order + lo_a)
            return TruncatedSeries(self.var, order, [], order)
        order = min(self.order + vb, other.order + va)
        da, db = self.as_dict(), other.as_dict()
        d = {}
        for ea, ca in da.items():
            for eb, cb in db.items():
                e = ea + eb
                if e < order:
                    p = ca * cb
                    d[e] = d[e] + p if e in d else p
        return TruncatedSeries.from_dict(self.var, d, order)

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(_invert_scalar(other))
        self._check(other)
        vb = other.valuation()
        if vb is None:
            raise DivisionByZeroSeries("divisor vanishes to its truncation order")
        inv_lead = _invert_scalar(other.coefficient(vb))
        va = self.valuation()
        rel_b = other.order - vb
        if va is None:
            order = self.order - vb
            return TruncatedSeries(self.var, order, [], order)
        rel_a = self.order - va
        rel = min(rel_a, rel_b)
        lo = va - vb
        b = [other.coefficient(vb + i) for i in range(rel)]
        a = [self.coefficient(va + i) for i in range(rel)]
        q = []
        for i in range(rel):
            acc = a[i]
            for j in range(1, i + 1):
                if not _is_zero(b[j]):
                    acc = acc - q[i - j] * b[j]
            q.append(acc * inv_lead)
        return TruncatedSeries(self.var, lo, q, lo + rel)

    def differentiate(self):
        d = {}
        for e, c in self.as_dict().items():
            if e:
                d[e - 1] = c * e
        return TruncatedSeries.from_dict(self.var, d, self.order - 1)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.var != other.var or self.order != other.order:
            return False
        return self.as_dict() == other.as_dict()

    def __repr__(self):
        body = " + ".join(f"({c})*{self.var}^{e}" for e, c in sorted(self.as_dict().items()))
        return f"TruncatedSeries({body or '0'} + O({self.var}^{self.order}))"


def series_arith(a: TruncatedSeries, b: TruncatedSeries | None, op: str) -> TruncatedSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "differentiate":
        return a.differentiate()
    raise ValueError(f"unknown op {op!r}")


def polynomial_series(var: str, coeffs: dict, order: int) -> TruncatedSeries:
    """An exactly known polynomial viewed as a series truncated at `order`."""
    return TruncatedSeries.from_dict(var, {e: c for e, c in coeffs.items()}, order)
