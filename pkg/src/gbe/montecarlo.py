"""Monte Carlo check of the moments through the tridiagonal beta-Hermite model.

The symmetric tridiagonal matrix with diagonal N(0, 2)/sqrt(2) and
off-diagonal chi_{beta(N-1)}, ..., chi_beta divided by sqrt(2) has eigenvalue
density proportional to prod exp(-l^2/2) |Delta|^beta.  Multiplying by
sqrt(2/beta) gives the unscaled weight exp(-kappa l^2/2) |Delta|^(2 kappa),
kappa = beta/2; a further sqrt(g/N) gives the scaled convention, whose
limiting support is (-2 sqrt(g), 2 sqrt(g)).

Tr T^(2p) is the squared Frobenius norm of T^p, accumulated in banded storage
without any eigendecomposition.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidParameter

BLOCK = 10_000          # samples per RNG stream in estimate_and_compare


def generator(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based Philox generator; streams are independent and reproducible."""
    if seed < 0 or stream < 0:
        raise InvalidParameter("seed and stream must be non-negative")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(stream,))))


def scale_factor(N: int, beta: float, convention: str = "scaled", g=Fraction(1, 4)) -> float:
    """Factor applied to the standard tridiagonal model."""
    c = math.sqrt(2.0 / beta)
    if convention == "scaled":
        return c * math.sqrt(float(g) / N)
    if convention == "unscaled":
        return c
    raise InvalidParameter(f"unknown convention {convention!r}")


@dataclass
class TridiagonalSample:
    N: int
    beta: float
    scale: float
    diagonal: np.ndarray        # shape (N,) or (S, N)
    offdiagonal: np.ndarray     # shape (N-1,) or (S, N-1)

    def dense(self) -> np.ndarray:
        if self.diagonal.ndim != 1:
            raise ValueError("dense() is for a single sample")
        return np.diag(self.diagonal) + np.diag(self.offdiagonal, 1) + np.diag(self.offdiagonal, -1)


def _check(N, beta):
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise InvalidParameter("N must be a positive integer")
    if not beta > 0 or not math.isfinite(beta):
        raise InvalidParameter("beta must be positive")


def _draw(rng: np.random.Generator, N: int, beta: float, size: int):
    diag = rng.standard_normal((size, N))            # N(0, 2)/sqrt(2)
    shapes = beta * np.arange(N - 1, 0, -1) / 2.0    # chi_k = sqrt(2 Gamma(k/2)), divided by sqrt(2)
    off = np.sqrt(rng.standard_gamma(shapes, size=(size, N - 1)))
    return diag, off


def sample(N: int, beta: float, seed: int, stream: int = 0, convention: str = "scaled",
           g=Fraction(1, 4), size: int | None = None) -> TridiagonalSample:
    """One matrix (or ``size`` of them), deterministic in (seed, stream)."""
    _check(N, beta)
    c = scale_factor(N, beta, convention, g)
    diag, off = _draw(generator(seed, stream), N, float(beta), 1 if size is None else size)
    if size is None:
        diag, off = diag[0], off[0]
    return TridiagonalSample(N, float(beta), c, c * diag, c * off)


def trace_powers(diag: np.ndarray, off: np.ndarray, p_max: int) -> np.ndarray:
    """Tr T^(2p), p = 0..p_max, for a batch of tridiagonal matrices; shape (S, p_max+1).

    T^k is kept as its 2k+1 diagonals: band[o][:, i] = (T^k)[i, i + o - k].
    """
    diag = np.atleast_2d(diag)
    off = np.atleast_2d(off)
    S, N = diag.shape
    out = np.empty((S, p_max + 1))
    out[:, 0] = N
    b_lo = np.zeros((S, N))          # b_lo[i] = T[i, i-1]
    b_hi = np.zeros((S, N))          # b_hi[i] = T[i, i+1]
    b_lo[:, 1:] = off
    b_hi[:, :-1] = off
    band = np.ones((S, 1, N))        # T^0
    for k in range(1, p_max + 1):
        w = band.shape[1]
        new = np.zeros((S, w + 2, N))
        # (T M)[i, j] = d_i M[i, j] + T[i, i-1] M[i-1, j] + T[i, i+1] M[i+1, j]
        new[:, 1:w + 1, :] += diag[:, None, :] * band
        new[:, 0:w, 1:] += b_lo[:, None, 1:] * band[:, :, :-1]
        new[:, 2:w + 2, :-1] += b_hi[:, None, :-1] * band[:, :, 1:]
        # entries outside the matrix stay zero
        for o in range(2 * k + 1):
            shift = o - k
            if shift > 0:
                new[:, o, N - shift:] = 0.0
            elif shift < 0:
                new[:, o, :-shift] = 0.0
        band = new
        out[:, k] = np.einsum("son,son->s", band, band)
    return out


def trace_moments(s: TridiagonalSample, p_max: int) -> list:
    """[Tr T^0, Tr T^2, ..., Tr T^(2 p_max)] for a single sample."""
    if p_max < 0:
        raise InvalidParameter("p_max must be non-negative")
    return [float(v) for v in trace_powers(s.diagonal, s.offdiagonal, p_max)[0]]


@dataclass
class MomentEstimate:
    p: int
    count: int
    mean: float
    stderr: float
    exact: float
    z: float

    @property
    def flagged(self) -> bool:
        return abs(self.z) > 4


def exact_moments(N: int, beta: float, p_max: int, convention: str = "scaled", g=Fraction(1, 4)) -> list:
    """m_{2p}(N, kappa = beta/2) from the moment polynomials, in the requested convention."""
    from .loops import resolvent_expansion
    from .moments import moment_polynomial
    ws = resolvent_expansion(p_max)
    kappa = Fraction(beta).limit_denominator(10 ** 9) / 2 if not isinstance(beta, Fraction) else beta / 2
    out = []
    for p in range(p_max + 1):
        v = moment_polynomial(p, ws).evaluate(N, kappa)
        if convention == "scaled":
            v = v * (Fraction(g) / N) ** p
        out.append(float(v))
    return out


def _block_sums(N, beta, p_max, seed, stream, count, c):
    diag, off = _draw(generator(seed, stream), N, beta, count)
    t = trace_powers(c * diag, c * off, p_max)
    mean = t.mean(axis=0)
    return count, mean, ((t - mean) ** 2).sum(axis=0)


def _merge(a, b):
    """Pairwise update of (count, mean, sum of squared deviations)."""
    na, ma, qa = a
    nb, mb, qb = b
    n = na + nb
    d = mb - ma
    return n, ma + d * nb / n, qa + qb + d * d * na * nb / n


def estimate_and_compare(N: int, beta: float, p_max: int, samples: int, seed: int,
                         convention: str = "scaled", g=Fraction(1, 4), threads: int = 1) -> list:
    """Estimates of m_{2p}, p = 1..p_max, with z-scores against the exact values.

    Samples are drawn in blocks of BLOCK, block b using stream b, so the result
    does not depend on the number of threads.
    """
    _check(N, beta)
    if samples < 100:
        raise InvalidParameter("at least 100 samples are required")
    if p_max < 1:
        raise InvalidParameter("p_max must be at least 1")
    beta = float(beta)
    c = scale_factor(N, beta, convention, g)
    blocks = [(b, min(BLOCK, samples - b * BLOCK)) for b in range(math.ceil(samples / BLOCK))]
    work = lambda bc: _block_sums(N, beta, p_max, seed, bc[0], bc[1], c)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(work, blocks))
    else:
        parts = [work(bc) for bc in blocks]
    acc = parts[0]
    for part in parts[1:]:                # fixed block order: deterministic reduction
        acc = _merge(acc, part)
    _, means, sq = acc
    exact = exact_moments(N, beta, p_max, convention, g)
    out = []
    for p in range(1, p_max + 1):
        mean = float(means[p])
        var = float(sq[p]) / (samples - 1)
        se = math.sqrt(var / samples)
        z = (mean - exact[p]) / se if se > 0 else (0.0 if mean == exact[p] else math.inf)
        out.append(MomentEstimate(p, samples, mean, se, exact[p], z))
    return out
