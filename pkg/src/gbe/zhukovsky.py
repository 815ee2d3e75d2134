"""Rational functions in Zhukovsky coordinates.

At g = 1 the spectral curve is parametrised by x_i = z_i + 1/z_i and
y_i = z_i - 1/z_i, and every correlator of the Gaussian hierarchy becomes a
rational function of the z_i (times powers of h).  Denominators are products
of powers of a small alphabet of irreducible factors:

    ('z', i)     z_i
    ('m', i)     z_i - 1
    ('p', i)     z_i + 1
    ('d', i, j)  z_i - z_j      (i < j)
    ('a', i, j)  z_i z_j - 1    (i < j)

Numerators are dicts {exponent tuple: int}; the last slot of the tuple is
the power of h.  All coefficients stay integral: every division performed
is an exact synthetic division by one of the monic-in-z_i factors above.
"""

from __future__ import annotations

from collections import defaultdict

from .errors import DiagonalPoleResidue
from .exact import padd, pmul, pscale


def mono(nv: int, idx_exp, c: int = 1) -> dict:
    e = [0] * nv
    for i, p in idx_exp:
        e[i] += p
    return {tuple(e): c}


def lin_factor(nv: int, f) -> dict:
    kind = f[0]
    if kind == "z":
        return mono(nv, [(f[1], 1)])
    if kind == "m":
        return padd(mono(nv, [(f[1], 1)]), mono(nv, [], -1))
    if kind == "p":
        return padd(mono(nv, [(f[1], 1)]), mono(nv, [], 1))
    if kind == "d":
        return padd(mono(nv, [(f[1], 1)]), mono(nv, [(f[2], 1)], -1))
    if kind == "a":
        return padd(mono(nv, [(f[1], 1), (f[2], 1)]), mono(nv, [], -1))
    raise ValueError(f"unknown factor {f!r}")


def _group(p: dict, i: int) -> dict:
    g = defaultdict(dict)
    for k, v in p.items():
        g[k[i]][k[:i] + (0,) + k[i + 1:]] = v
    return g


def _shift(p: dict, i: int, s: int) -> dict:
    return {k[:i] + (k[i] + s,) + k[i + 1:]: v for k, v in p.items()}


def try_div(p: dict, f, nv: int):
    """Exact quotient of p by the factor f, or None when f does not divide p."""
    kind = f[0]
    if not p:
        return {}
    if kind == "z":
        i = f[1]
        if all(k[i] >= 1 for k in p):
            return _shift(p, i, -1)
        return None
    if kind in ("m", "p", "d"):
        i = f[1]
        if kind == "m":
            root = mono(nv, [], 1)
        elif kind == "p":
            root = mono(nv, [], -1)
        else:
            root = mono(nv, [(f[2], 1)])
        g = _group(p, i)
        deg = max(g)
        if deg == 0:
            return None
        # p = (z_i - root) q  =>  q_{k-1} = p_k + root q_k
        q = {}
        cur = {}
        for k in range(deg, 0, -1):
            cur = padd(g.get(k, {}), pmul(root, cur))
            q[k - 1] = cur
        if padd(g.get(0, {}), pmul(root, cur)):
            return None
        out = {}
        for k, c in q.items():
            out = padd(out, _shift(c, i, k))
        return out
    if kind == "a":
        i, j = f[1], f[2]
        g = _group(p, i)
        deg = max(g)
        if deg == 0:
            return None
        zj = mono(nv, [(j, 1)])
        # p_k = z_j q_{k-1} - q_k
        q = {}
        prev = {}
        for k in range(0, deg):
            cur = padd(pmul(zj, prev), g.get(k, {}), -1)
            q[k] = cur
            prev = cur
        if padd(g.get(deg, {}), pmul(zj, prev), -1):
            return None
        out = {}
        for k, c in q.items():
            out = padd(out, _shift(c, i, k))
        return out
    raise ValueError(f"unknown factor {f!r}")


def _canon_factor(f):
    """Order the indices of two-variable factors; returns (factor, sign)."""
    if f[0] in ("d", "a") and f[1] > f[2]:
        return (f[0], f[2], f[1]), (-1 if f[0] == "d" else 1)
    return f, 1


class RF:
    """num / prod(factor^exp) in variables z_0..z_{nv-2} and h (last slot)."""

    __slots__ = ("nv", "num", "den")

    def __init__(self, nv: int, num: dict, den: dict):
        self.nv = nv
        self.num = num
        self.den = {f: e for f, e in den.items() if e}

    @classmethod
    def const(cls, nv: int, c: int = 1) -> "RF":
        return cls(nv, mono(nv, [], c) if c else {}, {})

    def copy(self) -> "RF":
        return RF(self.nv, dict(self.num), dict(self.den))

    def is_zero(self) -> bool:
        return not self.num

    def reduce(self) -> "RF":
        if not self.num:
            self.den = {}
            return self
        for f in list(self.den):
            e = self.den[f]
            while e > 0:
                q = try_div(self.num, f, self.nv)
                if q is None:
                    break
                self.num = q
                e -= 1
            self.den[f] = e
        self.den = {f: e for f, e in self.den.items() if e}
        return self

    def __add__(self, o: "RF") -> "RF":
        if not o.num:
            return self
        if not self.num:
            return o
        den = dict(self.den)
        for f, e in o.den.items():
            den[f] = max(den.get(f, 0), e)
        n1 = self.num
        n2 = o.num
        for f, e in den.items():
            lf = None
            for _ in range(e - self.den.get(f, 0)):
                lf = lf or lin_factor(self.nv, f)
                n1 = pmul(n1, lf)
            for _ in range(e - o.den.get(f, 0)):
                lf = lf or lin_factor(self.nv, f)
                n2 = pmul(n2, lf)
        return RF(self.nv, padd(n1, n2), den).reduce()

    def __neg__(self) -> "RF":
        return RF(self.nv, pscale(self.num, -1), self.den)

    def __sub__(self, o: "RF") -> "RF":
        return self + (-o)

    def __mul__(self, o) -> "RF":
        if isinstance(o, int):
            return RF(self.nv, pscale(self.num, o), self.den)
        den = dict(self.den)
        for f, e in o.den.items():
            den[f] = den.get(f, 0) + e
        return RF(self.nv, pmul(self.num, o.num), den).reduce()

    def __eq__(self, o) -> bool:
        if not isinstance(o, RF):
            return NotImplemented
        return (self - o).is_zero()

    def dz(self, i: int) -> "RF":
        """Partial derivative with respect to z_i."""
        nv = self.nv
        dn = {}
        for k, v in self.num.items():
            if k[i]:
                dn[k[:i] + (k[i] - 1,) + k[i + 1:]] = v * k[i]
        deps = [f for f in self.den if i in f[1:]]
        F = mono(nv, [])
        for f in deps:
            F = pmul(F, lin_factor(nv, f))
        res = pmul(dn, F)
        for f in deps:
            e = self.den[f]
            if f[0] in ("z", "m", "p"):
                fp = mono(nv, [])
            elif f[0] == "d":
                fp = mono(nv, [], 1 if f[1] == i else -1)
            else:
                fp = mono(nv, [(f[2] if f[1] == i else f[1], 1)])
            rest = mono(nv, [])
            for f2 in deps:
                if f2 != f:
                    rest = pmul(rest, lin_factor(nv, f2))
            res = padd(res, pscale(pmul(pmul(self.num, fp), rest), -e))
        den = dict(self.den)
        for f in deps:
            den[f] += 1
        return RF(nv, res, den).reduce()

    def dx(self, i: int) -> "RF":
        """Partial derivative with respect to x_i, using dz/dx = z^2/((z-1)(z+1))."""
        return self.dz(i) * RF(self.nv, mono(self.nv, [(i, 2)]), {("m", i): 1, ("p", i): 1})

    def evaluate(self, zs, h=0):
        """Numeric value; zs lists the z_i, h the deformation parameter."""
        pts = list(zs) + [h]
        num = 0
        for k, v in self.num.items():
            t = v
            for val, d in zip(pts, k):
                if d:
                    t = t * val ** d
            num += t
        den = 1
        for f, e in self.den.items():
            kind = f[0]
            if kind == "z":
                val = pts[f[1]]
            elif kind == "m":
                val = pts[f[1]] - 1
            elif kind == "p":
                val = pts[f[1]] + 1
            elif kind == "d":
                val = pts[f[1]] - pts[f[2]]
            else:
                val = pts[f[1]] * pts[f[2]] - 1
            den = den * val ** e
        return num / den

    def __repr__(self):
        return f"RF(nv={self.nv}, terms={len(self.num)}, den={self.den})"


def remap(w: RF, nv_new: int, mp: dict) -> RF:
    """Rename variables old i -> mp[i] (h stays last).  Two old variables sent
    to the same new one must not share a ('d', ...) factor."""
    num = defaultdict(int)
    for k, v in w.num.items():
        e = [0] * nv_new
        for i in range(w.nv - 1):
            e[mp[i]] += k[i]
        e[-1] += k[-1]
        num[tuple(e)] += v
    num = {k: v for k, v in num.items() if v}
    den = defaultdict(int)
    sign = 1
    for f, e in w.den.items():
        if f[0] in ("z", "m", "p"):
            den[(f[0], mp[f[1]])] += e
            continue
        a, b = mp[f[1]], mp[f[2]]
        if a == b:
            if f[0] == "d":
                raise DiagonalPoleResidue("pole on the diagonal survives a variable merge")
            den[("m", a)] += e
            den[("p", a)] += e
            continue
        g, s = _canon_factor((f[0], a, b))
        if s < 0 and e % 2:
            sign = -sign
        den[g] += e
    if sign < 0:
        num = pscale(num, -1)
    return RF(nv_new, num, dict(den)).reduce()


def swap_variables(w: RF, i: int, j: int) -> RF:
    mp = {k: k for k in range(w.nv - 1)}
    mp[i], mp[j] = j, i
    return remap(w, w.nv, mp)


# ---------------------------------------------------------------------------
# building blocks at g = 1

def rf_x(nv: int, i: int) -> RF:
    """x_i = (z_i^2 + 1)/z_i."""
    return RF(nv, padd(mono(nv, [(i, 2)]), mono(nv, [])), {("z", i): 1})


def rf_y(nv: int, i: int) -> RF:
    """y_i = (z_i - 1)(z_i + 1)/z_i."""
    return RF(nv, padd(mono(nv, [(i, 2)]), mono(nv, [], -1)), {("z", i): 1})


def rf_inv_y(nv: int, i: int) -> RF:
    return RF(nv, mono(nv, [(i, 1)]), {("m", i): 1, ("p", i): 1})


def rf_inv_dx(nv: int, i: int, j: int) -> RF:
    """1/(x_i - x_j) = z_i z_j / ((z_i - z_j)(z_i z_j - 1))."""
    f, s = _canon_factor(("d", i, j))
    a, _ = _canon_factor(("a", i, j))
    return RF(nv, mono(nv, [(i, 1), (j, 1)], s), {f: 1, a: 1})


def rf_h(nv: int) -> RF:
    return RF(nv, mono(nv, [(nv - 1, 1)]), {})
