"""One-variable expressions on the Gaussian spectral curve y^2 = x^2 - 4g.

A ``SpectralExpr`` is sum_sigma P_sigma(x; g, h) * y^(-sigma).  After
reduction every parity class of sigma holds a single term whose sigma is as
small as the numerator allows: the numerator is divided by (x^2 - 4g) while
that is exact and sigma stays above its floor (0 for even, -1 for odd).
"""

from __future__ import annotations

import ast
import cmath
import json
import math
from fractions import Fraction

from .exact import ALPHABET, MultiPoly, TruncatedSeries, to_rational, rational_str

SCHEMA = "gbe/1"

_X = MultiPoly.var("x")
_G = MultiPoly.var("g")
_Y2 = _X * _X - 4 * _G          # x^2 - 4g


def _floor(sigma: int) -> int:
    return 0 if sigma % 2 == 0 else -1


def divide_y2(p: MultiPoly):
    """Quotient of p by (x^2 - 4g), or None when the division is not exact."""
    if p.is_zero():
        return p
    deg = p.degree("x")
    if deg < 2:
        return None
    four_g = 4 * _G
    q = {}
    for d in range(deg, 1, -1):
        q[d - 2] = p.coeff("x", d) + (four_g * q[d] if d in q else 0)
    for d in (1, 0):
        rem = p.coeff("x", d) + (four_g * q[d] if d in q else 0)
        if not rem.is_zero():
            return None
    out = MultiPoly.const(0)
    for d, c in q.items():
        if not c.is_zero():
            out = out + c * MultiPoly.var("x", d)
    return out


class SpectralExpr:
    """Immutable element sum_sigma P_sigma * y^(-sigma) of Q[g,h][x, y]/(y^2 - x^2 + 4g)."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None, *, reduced: bool = False):
        t = {}
        for s, p in (terms or {}).items():
            p = MultiPoly.coerce(p)
            if not p.is_zero():
                t[int(s)] = t[int(s)] + p if int(s) in t else p
        self._terms = t if reduced else _reduce_terms(t)

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, c) -> "SpectralExpr":
        return cls({0: MultiPoly.coerce(c)})

    @classmethod
    def x(cls) -> "SpectralExpr":
        return cls({0: _X})

    @classmethod
    def y(cls, power: int = 1) -> "SpectralExpr":
        return cls({-power: MultiPoly.const(1)})

    @classmethod
    def coerce(cls, v) -> "SpectralExpr":
        if isinstance(v, SpectralExpr):
            return v
        return cls({0: MultiPoly.coerce(v)})

    # -- inspection ----------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def sigmas(self):
        return sorted(self._terms)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        try:
            other = SpectralExpr.coerce(other)
        except TypeError:
            return NotImplemented
        t = dict(self._terms)
        for s, p in other._terms.items():
            t[s] = t[s] + p if s in t else p
        return SpectralExpr(t)

    __radd__ = __add__

    def __neg__(self):
        return SpectralExpr({s: -p for s, p in self._terms.items()}, reduced=True)

    def __sub__(self, other):
        try:
            other = SpectralExpr.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SpectralExpr):
            try:
                other = MultiPoly.coerce(other)
            except TypeError:
                return NotImplemented
            return SpectralExpr({s: p * other for s, p in self._terms.items()})
        t = {}
        for s1, p1 in self._terms.items():
            for s2, p2 in other._terms.items():
                s = s1 + s2
                t[s] = t[s] + p1 * p2 if s in t else p1 * p2
        return SpectralExpr(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by scalars, constant polynomials, or monomials c*y^k."""
        if isinstance(other, SpectralExpr):
            if len(other._terms) != 1:
                return NotImplemented
            (s, p), = other._terms.items()
            if not p.is_constant():
                # c * y^(-s) with c = (x^2 - 4g)^m appears when y^even is reduced
                m = 0
                q = p
                while not q.is_constant():
                    q = divide_y2(q)
                    if q is None:
                        return NotImplemented
                    m += 1
                s -= 2 * m
                p = q
            c = p.constant_value()
            return SpectralExpr({k - s: v / c for k, v in self._terms.items()})
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                return NotImplemented
            other = other.constant_value()
        c = to_rational(other)
        return SpectralExpr({s: p / c for s, p in self._terms.items()}, reduced=True)

    def __rtruediv__(self, other):
        try:
            other = SpectralExpr.coerce(other)
        except TypeError:
            return NotImplemented
        return other.__truediv__(self)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) == 1:
                (s, p), = self._terms.items()
                if p == 1:
                    return SpectralExpr({s * n: MultiPoly.const(1)})
            return NotImplemented
        r = SpectralExpr.const(1)
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other):
        if isinstance(other, SpectralExpr):
            return self._terms == other._terms
        try:
            return self._terms == SpectralExpr.coerce(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- calculus --------------------------------------------------------------
    def differentiate(self) -> "SpectralExpr":
        """d/dx using d/dx y^(-s) = -s x y^(-s-2)."""
        t = {}
        for s, p in self._terms.items():
            dp = p.diff("x")
            if not dp.is_zero():
                t[s] = t[s] + dp if s in t else dp
            if s:
                q = p * _X * (-s)
                t[s + 2] = t[s + 2] + q if s + 2 in t else q
        return SpectralExpr(t)

    def divide_by_y(self) -> "SpectralExpr":
        return SpectralExpr({s + 1: p for s, p in self._terms.items()})

    def map_coeffs(self, fn) -> "SpectralExpr":
        return SpectralExpr({s: fn(p) for s, p in self._terms.items()})

    def subs(self, **values) -> "SpectralExpr":
        """Substitute for g or h (never x)."""
        if "x" in values:
            raise ValueError("x cannot be substituted inside a spectral expression")
        return self.map_coeffs(lambda p: p.subs(**values))

    def h_component(self, j: int) -> "SpectralExpr":
        """Coefficient of h^j."""
        return self.map_coeffs(lambda p: p.coeff("h", j))

    def h_degrees(self) -> set:
        out = set()
        for p in self._terms.values():
            for e, _ in p.items():
                out.add(e[2])
        return out

    # -- evaluation --------------------------------------------------------------
    def series_at_infinity(self, order: int) -> TruncatedSeries:
        """Expansion in u = 1/x through u^order, on the branch y ~ x."""
        if order < 1:
            raise ValueError("order must be at least 1")
        d = {}
        four_g = 4 * _G
        for s, p in self._terms.items():
            half = Fraction(s, 2)
            for e, c in p.items():
                a = e[0]
                rest = MultiPoly({(0,) + tuple(e[1:]): c})
                k = 0
                binom = Fraction(1)      # (s/2)_k / k!
                gp = MultiPoly.const(1)
                while s - a + 2 * k <= order:
                    if binom:
                        ex = s - a + 2 * k
                        term = rest * gp * binom
                        d[ex] = d[ex] + term if ex in d else term
                    binom = binom * (half + k) / (k + 1)
                    gp = gp * four_g
                    k += 1
                    if s == 0:
                        break
        return TruncatedSeries.from_dict("u", {e: c for e, c in d.items() if not c.is_zero()}, order + 1)

    def evaluate(self, x, g, h=0):
        """Numeric value at a point off the cut (complex allowed)."""
        x = complex(x)
        y = x * cmath.sqrt(1 - 4 * g / (x * x))
        total = 0j
        for s, p in self._terms.items():
            total += complex(p.evaluate(x=x, g=g, h=h, N=0, k=0)) * y ** (-s)
        return total

    # -- serialization -------------------------------------------------------------
    def to_json_obj(self) -> dict:
        terms = []
        for s in sorted(self._terms):
            coeffs = []
            for e, c in self._terms[s].sorted_terms():
                if any(e[3:]):
                    raise ValueError("only x, g, h may appear in a spectral numerator")
                coeffs.append([e[0], e[1], e[2], rational_str(c)])
            terms.append({"sigma": s, "coeffs": coeffs})
        return {"schema": SCHEMA, "terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "SpectralExpr":
        if obj.get("schema", SCHEMA) != SCHEMA:
            raise ValueError(f"unsupported schema {obj.get('schema')!r}")
        t = {}
        for term in obj["terms"]:
            p = {}
            for xd, gd, hd, c in term["coeffs"]:
                p[(xd, gd, hd, 0, 0)] = Fraction(c)
            t[term["sigma"]] = MultiPoly(p)
        return cls(t)

    @classmethod
    def from_json(cls, s: str) -> "SpectralExpr":
        return cls.from_json_obj(json.loads(s))

    def to_latex(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for s in sorted(self._terms):
            num = poly_latex(self._terms[s])
            if s == 0:
                parts.append(num)
            elif s < 0:
                yp = "y" if s == -1 else f"y^{{{-s}}}"
                parts.append(f"\\left({num}\\right) {yp}")
            else:
                yp = "y" if s == 1 else f"y^{{{s}}}"
                parts.append(f"\\frac{{{num}}}{{{yp}}}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SpectralExpr({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for s in sorted(self._terms):
            p = self._terms[s]
            if s == 0:
                parts.append(f"({p})")
            elif s < 0:
                parts.append(f"({p})*y**{-s}")
            else:
                parts.append(f"({p})/y**{s}")
        return " + ".join(parts)


def _reduce_terms(t: dict) -> dict:
    classes = {}
    for s, p in t.items():
        if p.is_zero():
            continue
        classes.setdefault(s % 2, []).append((s, p))
    out = {}
    for par, items in classes.items():
        top = max(s for s, _ in items)
        num = MultiPoly.const(0)
        for s, p in items:
            k = (top - s) // 2
            num = num + (p * (_Y2 ** k) if k else p)
        if num.is_zero():
            continue
        s = top
        floor = _floor(par)
        # y^(-s) with s below the floor: multiply out y^2 factors
        while s < floor:
            num = num * _Y2
            s += 2
        while s - 2 >= floor:
            q = divide_y2(num)
            if q is None:
                break
            num, s = q, s - 2
        out[s] = num
    return out


def reduce(e: SpectralExpr) -> SpectralExpr:
    """Normal form; instances are kept reduced, so this re-normalizes a copy."""
    return SpectralExpr(e.terms)


def spectral_arith(a: SpectralExpr, b: SpectralExpr | None, op: str) -> SpectralExpr:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "differentiate":
        return a.differentiate()
    if op == "divide_by_y":
        return a.divide_by_y()
    raise ValueError(f"unknown op {op!r}")


def series_at_infinity(e: SpectralExpr, order: int) -> TruncatedSeries:
    return e.series_at_infinity(order)


# ---------------------------------------------------------------------------
# LaTeX for polynomials

_LATEX_NAMES = {"x": "x", "g": "g", "h": "h", "N": "N", "k": "\\kappa^{-1}"}


def poly_latex(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms()):
        mono = ""
        for name, d in zip(ALPHABET, e):
            if d:
                base = _LATEX_NAMES[name]
                if name == "k":
                    mono += "\\kappa^{-1}" if d == 1 else f"\\kappa^{{-{d}}}"
                else:
                    mono += base if d == 1 else f"{base}^{{{d}}}"
        sign = "-" if c < 0 else ("+" if i else "")
        a = abs(c)
        if a.denominator != 1:
            cs = f"\\frac{{{a.numerator}}}{{{a.denominator}}}"
        elif a == 1 and mono:
            cs = ""
        else:
            cs = str(a.numerator)
        out.append(f"{sign}{cs}{mono}")
    return " ".join(out).replace("+ ", "+").strip()


# ---------------------------------------------------------------------------
# restricted expression parser for reference strings

_ALLOWED = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Constant, ast.Name, ast.Load,
            ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd)


def parse_expr(text: str, names: dict):
    """Evaluate an arithmetic expression over the supplied objects only.

    Integer literals become Fractions so that 1/2 stays exact.
    """
    tree = ast.parse(text.replace("^", "**"), mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise ValueError(f"disallowed syntax in expression: {type(node).__name__}")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise ValueError("only integer literals are allowed")
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ValueError(f"unknown name {node.id!r}")
            return names[node.id]
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        a, b = ev(node.left), ev(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if isinstance(a, Fraction) and isinstance(b, Fraction):
                return a / b
            return a / b
        if isinstance(node.op, ast.Pow):
            if not isinstance(b, Fraction) or b.denominator != 1:
                raise ValueError("exponents must be integers")
            return a ** int(b)
        raise ValueError("unsupported operator")

    return ev(tree)


def parse_spectral(text: str) -> SpectralExpr:
    """Parse strings such as "h**2*(-x/y**4 + (x**2+g)/y**5) + g/y**5"."""
    names = {"x": SpectralExpr.x(), "y": SpectralExpr.y(),
             "g": SpectralExpr({0: _G}), "h": SpectralExpr({0: MultiPoly.var("h")})}
    v = parse_expr(text, names)
    return SpectralExpr.coerce(v)


def parse_poly(text: str) -> MultiPoly:
    """Parse a polynomial in x, g, h, N, k as printed by str(MultiPoly)."""
    from .exact import ALPHABET
    return MultiPoly.coerce(parse_expr(text, {n: MultiPoly.var(n) for n in ALPHABET}))


def restore_g(terms_g1: dict, weight: int) -> SpectralExpr:
    """Reinsert powers of g in an expression computed at g = 1.

    ``terms_g1`` maps sigma to a polynomial in x and h; x carries weight 1,
    g weight 2 and y weight 1, and the whole expression has the given weight.
    """
    t = {}
    for s, p in terms_g1.items():
        q = {}
        for e, c in p.items():
            if e[1]:
                raise ValueError("input must be free of g")
            twice = weight - e[0] + s
            if twice % 2 or twice < 0:
                raise ValueError("inconsistent homogeneity while restoring g")
            q[(e[0], twice // 2) + tuple(e[2:])] = c
        t[s] = MultiPoly(q)
    return SpectralExpr(t)
