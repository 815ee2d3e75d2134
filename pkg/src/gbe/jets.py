"""Diagonal jet solver for the one-point resolvent coefficients.

Only W_1^l is needed for the resolvent, and every multi-point correlator
enters W_1^l only through its Taylor jet on the diagonal.  So each W_n^L is
stored as a truncated Taylor series in local offsets t_0..t_{n-1}, all
variables expanded around one common base point z (x = z + 1/z at g = 1):

    W_n^L(z + t_0, ..., z + t_{n-1}) = sum_alpha c_alpha(z, h) t^alpha.

Coefficients are pairs (P, b) meaning P(z, h) / (z^2 - 1)^b with P a
Laurent polynomial {(z-exponent, h-exponent): int}.  W_n^L is kept to total
degree l_max - (2(n - 1) + L), which is exactly what the W_1^{l_max}
equation consumes.  Merging two arguments becomes the substitution
t_1 -> t_0, and the difference quotient of the loop equation is a finite
polynomial identity in the offsets.
"""

from __future__ import annotations

import itertools
import logging
import time
from collections import defaultdict

log = logging.getLogger(__name__)

_U = {(2, 0): 1, (0, 0): -1}     # z^2 - 1
ZERO = ({}, 0)


def _pm(a: dict, b: dict) -> dict:
    r = defaultdict(int)
    for (za, ha), va in a.items():
        for (zb, hb), vb in b.items():
            r[(za + zb, ha + hb)] += va * vb
    return {k: v for k, v in r.items() if v}


def cadd(a, b):
    (pa, ba), (pb, bb) = a, b
    if not pa:
        return b
    if not pb:
        return a
    while ba < bb:
        pa = _pm(pa, _U)
        ba += 1
    while bb < ba:
        pb = _pm(pb, _U)
        bb += 1
    r = dict(pa)
    for k, v in pb.items():
        w = r.get(k, 0) + v
        if w:
            r[k] = w
        else:
            del r[k]
    return (r, ba)


def cmul(a, b):
    if not a[0] or not b[0]:
        return ZERO
    return (_pm(a[0], b[0]), a[1] + b[1])


def cscale(a, s: int):
    return ({k: v * s for k, v in a[0].items()}, a[1]) if s else ZERO


def creduce(c):
    """Cancel common factors of z^2 - 1 between numerator and denominator."""
    p, b = c
    while b > 0 and p:
        mn = min(k[0] for k in p)
        byh = defaultdict(dict)
        for (ze, he), v in p.items():
            byh[he][ze - mn] = v
        out = {}
        ok = True
        for he, d in byh.items():
            deg = max(d)
            q = {}
            # N = (z^2 - 1) Q  =>  q_{k-2} = N_k + q_k
            for k in range(deg, 1, -1):
                q[k - 2] = d.get(k, 0) + q.get(k, 0)
            if d.get(1, 0) + q.get(1, 0) != 0 or d.get(0, 0) + q.get(0, 0) != 0:
                ok = False
                break
            for k, v in q.items():
                if v:
                    out[(k + mn, he)] = v
        if not ok:
            break
        p, b = out, b - 1
    if not p:
        return ZERO
    return (p, b)


def const(v: int):
    return ({(0, 0): v}, 0) if v else ZERO


def zp(ze: int, v: int = 1):
    return ({(ze, 0): v}, 0)


# -- jets: {multi-index: coefficient} -----------------------------------------

def jadd(A: dict, B: dict) -> dict:
    R = dict(A)
    for k, v in B.items():
        R[k] = cadd(R[k], v) if k in R else v
    return {k: v for k, v in R.items() if v[0]}


def jmul(A: dict, B: dict, T: int) -> dict:
    R = {}
    for ka, va in A.items():
        da = sum(ka)
        for kb, vb in B.items():
            if da + sum(kb) > T:
                continue
            k = tuple(x + y for x, y in zip(ka, kb))
            c = cmul(va, vb)
            R[k] = cadd(R[k], c) if k in R else c
    return {k: v for k, v in R.items() if v[0]}


def jtrunc(A: dict, T: int) -> dict:
    return {k: v for k, v in A.items() if sum(k) <= T}


def jremap(A: dict, n: int, mp: dict) -> dict:
    """Send offset i to offset mp[i] in an n-variable jet (sums on collision)."""
    R = {}
    for k, v in A.items():
        e = [0] * n
        for i, p in enumerate(k):
            e[mp[i]] += p
        e = tuple(e)
        R[e] = cadd(R[e], v) if e in R else v
    return {k: v for k, v in R.items() if v[0]}


def jdt(A: dict, i: int) -> dict:
    R = {}
    for k, v in A.items():
        if k[i]:
            R[k[:i] + (k[i] - 1,) + k[i + 1:]] = cscale(v, k[i])
    return R


def univ(n: int, i: int, coeffs) -> dict:
    R = {}
    for d, c in enumerate(coeffs):
        if c[0]:
            e = [0] * n
            e[i] = d
            R[tuple(e)] = c
    return R


# -- univariate expansions around z --------------------------------------------

def _inv_u_plus(vcoeffs, T: int):
    """1/(u + v(t)), u = z^2 - 1, v = sum_{d >= 1} vcoeffs[d] t^d."""
    res = [ZERO] * (T + 1)
    vp = [const(1)] + [ZERO] * T
    for k in range(T + 1):
        for d in range(T + 1):
            if vp[d][0]:
                res[d] = cadd(res[d], cscale((vp[d][0], vp[d][1] + k + 1), (-1) ** k))
        nv = [ZERO] * (T + 1)
        for a in range(T + 1):
            if not vp[a][0]:
                continue
            for b in range(1, T + 1 - a):
                if vcoeffs[b][0]:
                    nv[a + b] = cadd(nv[a + b], cmul(vp[a], vcoeffs[b]))
        vp = nv
    return res


def _shift_square(T):
    # (z + t)^2 - 1 = u + 2 z t + t^2
    return [ZERO, zp(1, 2), zp(0, 1)] + [ZERO] * T


def series_inv_y(T: int):
    """1/y(z + t) = (z + t)/((z + t)^2 - 1)."""
    inv = _inv_u_plus(_shift_square(T), T)
    res = [ZERO] * (T + 1)
    for d in range(T + 1):
        res[d] = cadd(res[d], cmul(inv[d], zp(1)))
        if d >= 1:
            res[d] = cadd(res[d], inv[d - 1])
    return [creduce(c) for c in res]


def series_dzdx(T: int):
    """dz/dx at z + t = 1 + 1/((z + t)^2 - 1)."""
    inv = _inv_u_plus(_shift_square(T), T)
    inv[0] = cadd(inv[0], const(1))
    return [creduce(c) for c in inv]


def series_w10(T: int):
    """W_1^0 = 1/z at g = 1, so 1/(z + t) = sum (-t)^k z^(-k-1)."""
    return [zp(-k - 1, (-1) ** k) for k in range(T + 1)]


def inv_dx_jet(n: int, i: int, j: int, T: int) -> dict:
    """(t_i - t_j)/(x(z + t_i) - x(z + t_j)) = 1 + 1/(P - 1), P = (z + t_i)(z + t_j)."""
    def e(a, b):
        return tuple((a if m == i else 0) + (b if m == j else 0) for m in range(n))
    w = {e(1, 0): zp(1), e(0, 1): zp(1), e(1, 1): const(1)}
    res = {e(0, 0): const(1)}
    wp = {e(0, 0): const(1)}
    for k in range(T + 1):
        for kk, c in wp.items():
            cc = cscale((c[0], c[1] + k + 1), (-1) ** k)
            res[kk] = cadd(res[kk], cc) if kk in res else cc
        wp = jmul(wp, w, T)
    return {k: creduce(v) for k, v in res.items()}


# -- the solver ------------------------------------------------------------------

def schedule(lmax: int):
    """Nodes (n, L) needed for W_1^{lmax}, in a valid solve order."""
    order = []
    for d in range(0, lmax + 1):
        for n in range(d // 2 + 1, 0, -1):
            L = d - 2 * (n - 1)
            if L >= 0 and (n, L) != (1, 0):
                order.append((n, L))
    return order


def dependencies(n: int, L: int):
    """Direct dependencies of W_n^L in the loop equation."""
    deps = set()
    for r in range(0, n):
        for l1 in range(0, L + 1):
            a, b = (r + 1, l1), (n - r, L - l1)
            if {a, b} & {(n, L)}:
                continue
            deps.add(a)
            deps.add(b)
    if L >= 2:
        deps.add((n + 1, L - 2))
    if L >= 1:
        deps.add((n, L - 1))
    if n >= 2:
        deps.add((n - 1, L))
    deps.add((1, 0))
    return deps


def solve(lmax: int, stats: list | None = None) -> dict:
    """Jets of every W_n^L with 2(n - 1) + L <= lmax."""
    W = {}
    IY = series_inv_y(lmax)
    DZ = series_dzdx(lmax + 1)
    W[(1, 0)] = univ(1, 0, series_w10(lmax))
    h = ({(0, 1): 1}, 0)
    for (n, L) in schedule(lmax):
        t0 = time.perf_counter()
        T = lmax - (2 * (n - 1) + L)
        K = {}
        I = list(range(1, n))
        # products of lower correlators over subsets J and splittings of L
        for r in range(0, n):
            for J in itertools.combinations(I, r):
                rest = [i for i in I if i not in J]
                for l1 in range(0, L + 1):
                    a, b = (len(J) + 1, l1), (n - len(J), L - l1)
                    if (a == (1, 0) and b == (n, L)) or (b == (1, 0) and a == (n, L)):
                        continue
                    A = jremap(jtrunc(W[a], T), n, {0: 0, **{m + 1: J[m] for m in range(len(J))}})
                    B = jremap(jtrunc(W[b], T), n, {0: 0, **{m + 1: rest[m] for m in range(len(rest))}})
                    K = jadd(K, jmul(A, B, T))
        # W_{n+1}^{L-2}(x, x, I)
        if (n + 1, L - 2) in W:
            merged = jremap(W[(n + 1, L - 2)], n, {0: 0, 1: 0, **{m: m - 1 for m in range(2, n + 1)}})
            K = jadd(K, jtrunc(merged, T))
        # h d/dx W_n^{L-1}
        if (n, L - 1) in W:
            d0 = jdt(jtrunc(W[(n, L - 1)], T + 1), 0)
            d0 = jmul(d0, univ(n, 0, DZ[:T + 1]), T)
            K = jadd(K, jmul(d0, {(0,) * n: h}, T))
        # d/dx_i of the difference quotients
        if (n - 1, L) in W:
            w = jtrunc(W[(n - 1, L)], T + 2)
            for i in I:
                rest = [j for j in I if j != i]
                A = jremap(w, n, {0: 0, **{m + 1: rest[m] for m in range(len(rest))}})
                Dq = {}
                for k, v in A.items():
                    a0 = k[0]
                    for kk in range(a0):
                        e = list(k)
                        e[0] = kk
                        e[i] = a0 - 1 - kk
                        e = tuple(e)
                        Dq[e] = cadd(Dq[e], v) if e in Dq else v
                Dq = jmul(Dq, inv_dx_jet(n, 0, i, T + 1), T + 1)
                Dq = jmul(jdt(Dq, i), univ(n, i, DZ[:T + 1]), T)
                K = jadd(K, Dq)
        Wn = jmul(K, univ(n, 0, IY[:T + 1]), T)
        W[(n, L)] = {k: creduce(v) for k, v in Wn.items() if v[0]}
        dt = time.perf_counter() - t0
        log.debug("jet W_%d^%d: truncation %d, %d coefficients, %.2fs", n, L, T, len(Wn), dt)
        if stats is not None:
            stats.append({"node": [n, L], "truncation": T, "coefficients": len(Wn), "seconds": dt})
    return W


def resolvent_coefficient(W: dict, l: int):
    """The (P, b) value of W_1^l on the diagonal base point."""
    return W[(1, l)].get((0,), ZERO)
