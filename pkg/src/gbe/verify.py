"""Verification suites: exact comparisons against the tabulated results and
cross-checks between independent computations.

Each suite returns a VerificationReport whose checks are listed in a fixed
order, so two runs can be diffed line by line.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import reference
from .classical import (Ensemble, closed_form_moment, eta_expr, eta_recursion, expansion_from_polynomial,
                        gse_goe_duality, gue_u_series, harer_zagier_moments, largeN_moment_expansion,
                        methods, ode_residual, recurrence_moments, u_ode_check, u_series_moments)
from .density import (LinearStatistic, density_from_resolvent, linear_statistic_mean, polynomial_mean,
                      reference_density, stieltjes)
from .exact import MultiPoly
from .hadamard import SmoothFunction, hadamard_finite_part
from .loops import canonical_check, resolvent_expansion
from .moments import (check_duality, check_structure, moment_polynomial, parse_moment,
                      subleading_closed_form, subleading_from_resolvent, unit_circle_zeros)
from .spectral import parse_spectral

SCHEMA = "gbe/1"
SUITES = ("golden", "classical", "structure", "density", "mc")


@dataclass
class Check:
    id: str
    anchor: str          # where the compared value comes from
    status: str          # "pass" or "fail"
    detail: str = ""


@dataclass
class VerificationReport:
    suite: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    def add(self, id: str, anchor: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(id, anchor, "pass" if ok else "fail", detail))

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if c.status != "pass"]

    def to_json_obj(self) -> dict:
        return {"schema": SCHEMA, "suite": self.suite, "passed": self.passed,
                "checks": [[c.id, c.anchor, c.status, c.detail] for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=1)

    @classmethod
    def from_json_obj(cls, obj) -> "VerificationReport":
        rep = cls(obj["suite"])
        rep.checks = [Check(*c) for c in obj["checks"]]
        return rep


@lru_cache(maxsize=None)
def resolvent(l_max: int) -> tuple:
    return tuple(resolvent_expansion(l_max))


# ---------------------------------------------------------------------------
# golden tables

def golden_resolvent(rep: VerificationReport) -> None:
    ws = resolvent(6)
    for l in range(7):
        ref = parse_spectral(reference.RESOLVENT[l])
        rep.add(f"resolvent/W1^{l}", f"resolvent table, l={l}", ws[l] == ref)
        rep.add(f"resolvent/W1^{l}/shape", "two-term normal form", canonical_check(ws[l], l).ok)


def golden_moments(rep: VerificationReport) -> None:
    ws = resolvent(10)
    for p in range(11):
        m = moment_polynomial(p, list(ws))
        rep.add(f"moments/m{2 * p}", f"moment table, m_{2 * p}", m == parse_moment(p, reference.MOMENTS[p]))


def golden_densities(rep: VerificationReport) -> None:
    ws = resolvent(6)
    for l in range(7):
        d = density_from_resolvent(ws[l], l)
        fixed = [f"h^{hp} eps^({j}) corrected to {c}" for (ll, hp, j), (_, c) in reference.DENSITY_ERRATA.items()
                 if ll == l]
        rep.add(f"density/rho{l}", f"density table, l={l}", d == reference_density(l), "; ".join(fixed))
    for (l, hp, j), (printed, fixed) in reference.DENSITY_ERRATA.items():
        bad = reference_density(l, corrected=False)
        fails_identity = any(not polynomial_mean(bad, 2 * s).is_zero() for s in range(l))
        fails_transform = stieltjes(bad) != ws[l]
        rep.add(f"density/rho{l}/erratum-h{hp}-eps{j}", f"density table, l={l}, printed {printed}",
                fails_identity and fails_transform,
                f"printed value fails the moment identity and the Stieltjes round trip; corrected {fixed}")


def classical_triple(rep: VerificationReport, p_max: int = 12, n_max: int = 8) -> None:
    ws = list(resolvent(p_max))
    general = [moment_polynomial(p, ws) for p in range(p_max + 1)]
    for e in Ensemble:
        for N in range(1, n_max + 1):
            rec = recurrence_moments(e, p_max, N)
            ok, bad = True, []
            for p in range(p_max + 1):
                vals = {"recurrence": rec[p], "general-beta": general[p].evaluate(N, e.kappa)}
                for meth in methods(e):
                    if e is Ensemble.GOE and meth == "mezzadri-simm" and N % 2:
                        continue
                    vals[meth] = closed_form_moment(e, meth, p, N)
                if len(set(vals.values())) != 1:
                    ok = False
                    bad.append(p)
            rep.add(f"classical/{e.name}/N{N}", f"{e.name} moments, recurrence and closed forms", ok,
                    f"p<= {p_max}" + (f"; disagreement at p={bad}" if bad else ""))


def golden(threads: int = 1) -> VerificationReport:
    t = time.time()
    rep = VerificationReport("golden")
    golden_resolvent(rep)
    golden_densities(rep)
    golden_moments(rep)
    classical_triple(rep)
    rep.seconds = time.time() - t
    return rep


# ---------------------------------------------------------------------------
# classical cross-checks

def classical(threads: int = 1) -> VerificationReport:
    t = time.time()
    rep = VerificationReport("classical")
    classical_triple(rep)
    for N in range(1, 9):
        rec = recurrence_moments(Ensemble.GUE, 20, N)
        rep.add(f"generating/harer-zagier/N{N}", "GUE generating function", harer_zagier_moments(20, N) == rec)
        rep.add(f"generating/1F1/N{N}", "GUE confluent hypergeometric series",
                u_series_moments(gue_u_series(20, N)) == rec)
        for e in Ensemble:
            rep.add(f"u-ode/{e.name}/N{N}", f"{e.name} ODE for u(t)", u_ode_check(e, 14, N))
    ws = list(resolvent(6))
    expected = {Ensemble.GUE: 8, Ensemble.GOE: 7, Ensemble.GSE: 7}
    for e in Ensemble:
        r = ode_residual(e, ws)
        rep.add(f"resolvent-ode/{e.name}", f"{e.name} resolvent ODE",
                r.vanishes_through(expected[e] - 1), f"first nonzero order {r.first_nonzero}")
    ws8 = list(resolvent(6))
    tables = eta_recursion(3)
    for j in range(1, 4):
        rep.add(f"eta/{j}", "GUE eta recursion", eta_expr(tables[j - 1], j) == ws8[2 * j].h_component(0))
    for e in Ensemble:
        for p in range(13):
            m = recurrence_moments(e, p)[p]
            rep.add(f"largeN/{e.name}/p{p}", f"{e.name} large-N moment expansion",
                    largeN_moment_expansion(e, p) == expansion_from_polynomial(e, m, p))
    for p in range(11):
        rep.add(f"duality/GSE-GOE/p{p}", "GSE and GOE duality", gse_goe_duality(p))
    rep.seconds = time.time() - t
    return rep


# ---------------------------------------------------------------------------
# structure of the general moments

def structure(threads: int = 1) -> VerificationReport:
    t = time.time()
    rep = VerificationReport("structure")
    ws = list(resolvent(10))
    for p in range(11):
        m = moment_polynomial(p, ws)
        rep.add(f"duality/m{2 * p}", "kappa to 1/kappa duality", check_duality(m))
        s = check_structure(m)
        rep.add(f"structure/m{2 * p}", "Catalan leading term and palindromic coefficients", s.ok,
                "; ".join(v[0] for v in s.violations))
    for depth in range(1, 7):
        ok = all(subleading_from_resolvent(ws, l, depth) == subleading_closed_form(l, depth)
                 for l in range(depth, 31))
        rep.add(f"subleading/depth{depth}", "subleading coefficient closed forms", ok, "l <= 30")
    worst = 0.0
    for p in range(2, 11):
        worst = max(worst, unit_circle_zeros(moment_polynomial(p, ws)).max_deviation)
    rep.add("zeros/unit-circle", "zeros on the unit circle (empirical)", worst < 1e-8, f"max deviation {worst:.2e}")
    rep.seconds = time.time() - t
    return rep


# ---------------------------------------------------------------------------
# densities and finite parts

def density(threads: int = 1) -> VerificationReport:
    t = time.time()
    rep = VerificationReport("density")
    ws = list(resolvent(6))
    ds = [density_from_resolvent(w, l) for l, w in enumerate(ws)]
    for l, d in enumerate(ds):
        zero = all(polynomial_mean(d, 2 * s).is_zero() for s in range(l))
        rep.add(f"moment-identity/l{l}", "vanishing low moments of rho~_l", zero, f"sigma <= {l - 1}")
        rep.add(f"stieltjes/l{l}", "Stieltjes transform returns W_1^l", stieltjes(d) == ws[l])
    g = MultiPoly.var("g")
    rep.add("mass/l0", "semicircle mass", polynomial_mean(ds[0], 0) == g, "mass g (1 at g = 1)")
    rep.add("mean/l1/x2", "W_1^1 at order x^-3", polynomial_mean(ds[1], 2) == -g * MultiPoly.var("h"))
    one = SmoothFunction.polynomial([1.0])
    rep.add("hadamard/constant", "finite part of (1 - x^2)^(-3/2)", abs(hadamard_finite_part(one, 1)) < 1e-12)
    rep.add("hadamard/arcsine", "convergent Beta integral", abs(hadamard_finite_part(one, 0) - math.pi) < 1e-10)
    yf = SmoothFunction.polynomial([0.0, 1.0])
    rep.add("hadamard/beta-continuation", "B(3/2, -1/2) = -pi", abs(hadamard_finite_part(yf, 1) + math.pi) < 1e-9)
    ex = SmoothFunction(lambda y, j: math.exp(y), 40)
    dev = max(abs(hadamard_finite_part(ex, n, order=n) - hadamard_finite_part(ex, n)) for n in range(6))
    rep.add("hadamard/subtraction-order", "subtraction leaves the value unchanged", dev < 1e-8, f"{dev:.1e}")
    for kappa in (Fraction(1, 2), Fraction(1), Fraction(2)):
        stat = LinearStatistic.chebyshev(6)
        a = linear_statistic_mean(stat, 6, kappa=kappa, densities=ds).coefficients
        b = linear_statistic_mean(stat, 6, kappa=kappa, densities=ds, method="quadrature").coefficients
        dev = max(abs(float(x) - y) for x, y in zip(a, b))
        rep.add(f"statistic/T6/kappa{kappa}", "exact and quadrature paths agree", dev < 1e-8, f"{dev:.1e}")
    rep.seconds = time.time() - t
    return rep


# ---------------------------------------------------------------------------
# Monte Carlo

MC_CASES = ((8, 2), (4, 1), (4, 4), (6, 5))


def mc(threads: int = 1, samples: int = 100_000, seed: int = 42) -> VerificationReport:
    from .montecarlo import estimate_and_compare
    t = time.time()
    rep = VerificationReport("mc")
    for N, beta in MC_CASES:
        for est in estimate_and_compare(N, beta, 3, samples, seed, convention="unscaled", threads=threads):
            rep.add(f"mc/N{N}/beta{beta}/p{est.p}", "exact moment polynomial", abs(est.z) <= 4,
                    f"mean {est.mean:.6g} exact {est.exact:.6g} z {est.z:+.2f}")
    rep.seconds = time.time() - t
    return rep


RUNNERS = {"golden": golden, "classical": classical, "structure": structure, "density": density, "mc": mc}


def run(suite: str, threads: int = 1) -> list:
    names = SUITES if suite == "all" else (suite,)
    for n in names:
        if n not in RUNNERS:
            raise ValueError(f"unknown suite {n!r}")
    return [RUNNERS[n](threads=threads) for n in names]
