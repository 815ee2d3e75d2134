"""Moments m_{2p}(N, kappa) of the Gaussian beta ensemble, read off the resolvent.

Writing k = 1/kappa and h = sqrt(kappa) - 1/sqrt(kappa), the coefficient of
x^(-2p-1) in W_1^l is c_{l,p}(h) g^(p+1-l), and

    m_{2p} = sum_l N^(p+1-l) kappa^(-l/2) c_{l,p}(h).

Since c_{l,p} only carries powers h^j with j = l mod 2, every product
h^j kappa^(-l/2) = (1 - k)^j k^((l-j)/2) is a polynomial in k.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .errors import DomainError, InsufficientOrder
from .exact import MultiPoly, rational_str
from .reports import StructureReport, ZeroReport
from .spectral import SCHEMA

_H = MultiPoly.var("h")
_K = MultiPoly.var("k")
_N = MultiPoly.var("N")


def catalan(p: int) -> int:
    return factorial(2 * p) // (factorial(p) * factorial(p + 1))


def gamma_ratio(l: int) -> Fraction:
    """Gamma(l + 1/2) / (sqrt(pi) Gamma(l + 1)) = (2l)! / (4^l (l!)^2)."""
    return Fraction(factorial(2 * l), 4 ** l * factorial(l) ** 2)


@dataclass
class MomentPoly:
    """m_{2p} as {(N-degree, k-degree): Fraction}."""
    p: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {tuple(e): Fraction(c) for e, c in self.coeffs.items() if c}

    @classmethod
    def from_multipoly(cls, p: int, poly: MultiPoly) -> "MomentPoly":
        out = {}
        for e, c in poly.items():
            if e[0] or e[1] or e[2]:
                raise ValueError("a moment polynomial may only involve N and k")
            out[(e[3], e[4])] = c
        return cls(p, out)

    def to_multipoly(self) -> MultiPoly:
        return MultiPoly({(0, 0, 0, a, b): c for (a, b), c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, MomentPoly):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def degree_N(self) -> int:
        return max((a for a, _ in self.coeffs), default=-1)

    def n_coefficient(self, a: int) -> dict:
        """Coefficient of N^a as {k-degree: Fraction}."""
        return {b: c for (aa, b), c in self.coeffs.items() if aa == a}

    def evaluate(self, N, kappa):
        """Exact value for rational N and kappa (floats also accepted)."""
        kinv = 1 / (Fraction(kappa) if not isinstance(kappa, float) else kappa)
        total = 0
        for (a, b), c in self.coeffs.items():
            total += c * N ** a * kinv ** b
        return total

    def to_json_obj(self) -> dict:
        return {"schema": SCHEMA, "p": self.p,
                "coeffs": [[a, b, rational_str(c)] for (a, b), c in sorted(self.coeffs.items(), reverse=True)]}

    @classmethod
    def from_json_obj(cls, obj) -> "MomentPoly":
        return cls(obj["p"], {(a, b): Fraction(c) for a, b, c in obj["coeffs"]})

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    def to_latex(self, contents: dict | None = None) -> str:
        """One display line, N-coefficients factored by their integer content.

        ``contents`` maps a power of N to the factor pulled out in front of its
        bracket, overriding the default (the gcd of the coefficients).
        """
        parts = []
        for a in range(self.degree_N(), 0, -1):
            cf = self.n_coefficient(a)
            if not cf:
                continue
            content = _content(cf.values())
            if contents and a in contents and len(cf) > 1:
                content = Fraction(contents[a])
                if any((v / content).denominator != 1 for v in cf.values()):
                    raise ValueError(f"{content} does not divide the N^{a} coefficients")
            npow = "N" if a == 1 else f"N^{{{a}}}"
            if len(cf) == 1 and 0 in cf:
                c = cf[0]
                s = f"{_num(c)} {npow}" if c not in (1, -1) else ("-" if c < 0 else "") + npow
            else:
                inner = ""
                for b in sorted(cf):
                    v = cf[b] / content
                    mono = "" if b == 0 else ("\\kappa^{-1}" if b == 1 else f"\\kappa^{{-{b}}}")
                    mag = abs(v)
                    coef = "" if (mag == 1 and mono) else _num(mag)
                    sign = "-" if v < 0 else ("+" if inner else "")
                    inner += f"{sign}{coef}{mono}"
                lead = "" if content == 1 else f"{_num(content)} "
                s = f"{lead}{npow}\\left({inner}\\right)"
            parts.append(s)
        body = "+".join(parts).replace("+-", "-") or "0"
        return f"m_{{{2 * self.p}}} = {body}"

    def __str__(self):
        return str(self.to_multipoly())


_TERM = re.compile(r"^([+-]?)(\d+)?\*?N(?:\*\*(\d+))?\*?\(")


def display_contents(text: str) -> dict:
    """{power of N: factor in front of its bracket} read off a tabulated moment."""
    out, depth, start = {}, 0, 0
    terms = []
    for i, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and ch in "+-" and i > start:
            terms.append(text[start:i])
            start = i
    terms.append(text[start:])
    for t in terms:
        m = _TERM.match(t)
        if m:
            out[int(m.group(3) or 1)] = int(m.group(2) or 1)
    return out


def _content(vals):
    from math import gcd
    g = 0
    for v in vals:
        if Fraction(v).denominator != 1:
            return Fraction(1)
        g = gcd(g, abs(int(v)))
    return Fraction(g or 1)


def _num(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


# ---------------------------------------------------------------------------

def h_block_to_k(block: MultiPoly, l: int) -> MultiPoly:
    """kappa^(-l/2) * block(h), rewritten as a polynomial in k = 1/kappa."""
    out = MultiPoly.const(0)
    for e, c in block.items():
        if e[0] or e[1] or e[3] or e[4]:
            raise ValueError("expected a polynomial in h only")
        j = e[2]
        if (l - j) % 2:
            raise AssertionError("half-integer power of kappa survives")
        out = out + c * (1 - _K) ** j * _K ** ((l - j) // 2)
    return out


def resolvent_coefficients(w, p: int) -> MultiPoly:
    """[x^(-2p-1)] w, as a polynomial in g and h."""
    return w.series_at_infinity(2 * p + 1).coefficient(2 * p + 1)


def scaled_coefficient(w, l: int, p: int) -> MultiPoly:
    """c_{l,p}(h): the x^(-2p-1) coefficient of W_1^l with its g^(p+1-l) removed."""
    c = resolvent_coefficients(w, p)
    if c == 0:
        return MultiPoly.const(0)
    gpow = p + 1 - l
    for e, _ in c.items():
        if e[1] != gpow:
            raise AssertionError(f"coefficient of W_1^{l} is not proportional to g^{gpow}")
    return c.divide_monomial(g=gpow) if gpow >= 0 else c


def moment_polynomial(p: int, resolvent: list) -> MomentPoly:
    """m_{2p}(N, kappa) from the resolvent coefficients W_1^0..W_1^p."""
    if p < 0:
        raise ValueError("p must be non-negative")
    if len(resolvent) < p + 1:
        raise InsufficientOrder(f"m_{2 * p} needs W_1^0..W_1^{p}; got {len(resolvent)} coefficients")
    total = MultiPoly.const(0)
    for l in range(0, len(resolvent)):
        c = scaled_coefficient(resolvent[l], l, p)
        if l > p:
            if c != 0:
                raise AssertionError(f"W_1^{l} contributes to m_{2 * p}; expansion should terminate")
            continue
        total = total + _N ** (p + 1 - l) * h_block_to_k(c, l)
    return MomentPoly.from_multipoly(p, total)


def check_duality(m: MomentPoly) -> bool:
    """m(N, kappa) = (-1)^(p+1) kappa^(-p-1) m(-kappa N, 1/kappa)."""
    p = m.p
    image = {}
    for (a, b), c in m.coeffs.items():
        key = (a, p + 1 - a - b)
        image[key] = image.get(key, 0) + c * (-1) ** (a + p + 1)
    image = {k: v for k, v in image.items() if v}
    return image == m.coeffs


def check_structure(m: MomentPoly) -> StructureReport:
    p = m.p
    rep = StructureReport(f"m_{2 * p}")
    rep.add("degree in N", m.degree_N() == p + 1, f"degree {m.degree_N()}, expected {p + 1}")
    rep.add("vanishing tail", not m.n_coefficient(0), "no N^0 term")
    lead = m.n_coefficient(p + 1)
    rep.add("Catalan leading coefficient", lead == {0: Fraction(catalan(p))},
            f"{lead} vs C_{p} = {catalan(p)}")
    for a in range(1, p + 1):
        cf = m.n_coefficient(a)
        d = p + 1 - a
        deg = max(cf, default=-1)
        rep.add(f"N^{a} degree in 1/kappa", deg == d, f"degree {deg}, expected {d}")
        if d % 2 == 0:
            ok = all(cf.get(b, 0) == cf.get(d - b, 0) for b in range(d + 1))
            rep.add(f"N^{a} palindromic", ok)
        else:
            ok = all(cf.get(b, 0) == -cf.get(d - b, 0) for b in range(d + 1))
            rep.add(f"N^{a} anti-palindromic", ok)
            rep.add(f"N^{a} has factor kappa - 1", sum(cf.values()) == 0)
    return rep


def subleading_closed_form(l: int, depth: int) -> MultiPoly:
    """Coefficient of kappa^(-depth/2) N^(l+1-depth) in m_{2l}, as a polynomial in h."""
    if depth not in range(1, 7):
        raise DomainError("depth must lie in 1..6")
    if l < depth:
        raise DomainError(f"the depth-{depth} formula needs l >= {depth}")
    G = gamma_ratio(l)
    L = Fraction(l)
    F = Fraction
    p2 = lambda e: F(2) ** e
    h = _H
    if depth == 1:
        return p2(2 * l - 1) * (-1 + G) * h
    if depth == 2:
        return (F(1, 3) * p2(2 * l - 2) * L * (-3 + (5 * L + 1) * G) * h ** 2
                + F(1, 3) * p2(2 * l - 2) * L * (L - 1) * G)
    if depth == 3:
        return (F(5, 3) * p2(2 * l - 6) * L ** 2 * (L - 1) * (-3 + 8 * G) * h ** 3
                + F(1, 3) * p2(2 * l - 7) * L * (L - 1) * (28 - 17 * L + 16 * (L - 1) * G) * h)
    P3 = L * (L - 1) * (L - 2)
    if depth == 4:
        return (p2(2 * l - 7) * P3 * (F(1, 3) * (8 - 15 * L) + 4 * (1105 * L ** 2 - 193 * L - 42) * G / 945) * h ** 4
                + p2(2 * l - 8) * P3 * (F(1, 3) * (28 - 17 * L) + 16 * (590 * L ** 2 - 1259 * L - 84) * G / 945) * h ** 2
                + p2(2 * l - 5) * P3 * (L - 3) * (5 * L - 2) * G / 45)
    P4 = P3 * (L - 3)
    if depth == 5:
        return (p2(2 * l - 13) * L * P4 * (F(1, 3) * (99 - 113 * L) + 128 * (1105 * L - 1243) * G / 945) * h ** 5
                + p2(2 * l - 14) * P4 * (-F(1, 45) * (5677 * L ** 2 - 17271 * L + 4952)
                                         + (302080 * L ** 2 - 698368 * L + 10752) * G / 945) * h ** 3
                + p2(2 * l - 13) * P4 * (-F(1, 15) * (L - 1) * (239 * L - 886)
                                         + 128 * (L - 3) * (5 * L - 2) * G / 45) * h)
    P5 = P4 * (L - 4)
    return (p2(2 * l - 14) * P5 * (-F(1, 15) * (565 * L ** 2 - 1295 * L + 512)
                                   + 128 * (82825 * L ** 3 - 135690 * L ** 2 + 8081 * L + 1716) * G / 405405) * h ** 6
            + p2(2 * l - 15) * P5 * (-F(1, 45) * (5677 * L ** 2 - 19991 * L + 9432)
                                     + 256 * (5929 * L ** 3 - 23320 * L ** 2 + 12861 * L + 312) * G / 12285) * h ** 4
            + p2(2 * l - 14) * P5 * (-F(1, 15) * (L - 1) * (239 * L - 886)
                                     + 128 * (93427 * L ** 3 - 549765 * L ** 2 + 623360 * L + 9438) * G / 405405) * h ** 2
            + p2(2 * l - 7) * P5 * (L - 5) * (35 * L ** 2 - 77 * L + 12) * G / 2835)


def subleading_from_resolvent(resolvent: list, l: int, depth: int) -> MultiPoly:
    """The same coefficient read directly off W_1^depth."""
    return scaled_coefficient(resolvent[depth], depth, l)


def unit_circle_zeros(m: MomentPoly, tol: float = 1e-8) -> ZeroReport:
    """Roots in kappa of each N-coefficient numerator; distance of |root| from 1."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    rep = ZeroReport()
    for a in range(1, m.degree_N() + 1):
        cf = m.n_coefficient(a)
        d = max(cf, default=0)
        if d < 1:
            continue
        # numerator kappa^d * sum c_b kappa^(-b): coefficient of kappa^(d-b) is c_b
        poly = [float(cf.get(b, 0)) for b in range(0, d + 1)]   # highest power of kappa first
        roots = np.roots(poly)
        dev = float(np.max(np.abs(np.abs(roots) - 1))) if len(roots) else 0.0
        sep = float("inf")
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                sep = min(sep, float(abs(roots[i] - roots[j])))
        rep.per_coefficient.append((a, d, dev, sep))
        rep.max_deviation = max(rep.max_deviation, dev)
        rep.min_separation = min(rep.min_separation, sep)
    return rep


def parse_moment(p: int, text: str) -> MomentPoly:
    from .spectral import parse_expr
    v = parse_expr(text, {"N": _N, "k": _K})
    return MomentPoly.from_multipoly(p, MultiPoly.coerce(v))
