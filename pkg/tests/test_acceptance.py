"""Acceptance criteria, one check per criterion at the stated tolerances.

Each check returns (ok, detail).  Run under pytest, the PASS/FAIL lines are
printed in the terminal summary; run as a script, they go to stdout.
"""

import math
import time
from fractions import Fraction

import pytest

from gbe import reference
from gbe.classical import (Ensemble, closed_form_moment, gse_goe_duality, gue_u_series, harer_zagier_moments,
                           methods, ode_residual, recurrence_moments, u_series_moments)
from gbe.exact import MultiPoly
from gbe.density import density_from_resolvent, polynomial_mean, reference_density, stieltjes
from gbe.hadamard import SmoothFunction, hadamard_finite_part
from gbe.loops import resolvent_expansion
from gbe.moments import (check_duality, check_structure, moment_polynomial, parse_moment, subleading_closed_form,
                         subleading_from_resolvent, unit_circle_zeros)
from gbe.montecarlo import estimate_and_compare
from gbe.spectral import parse_spectral
from gbe.verify import resolvent

RESULTS = {}


def criterion_1():
    t = time.time()
    ws = resolvent_expansion(6)
    bad = [l for l in range(7) if ws[l] != parse_spectral(reference.RESOLVENT[l])]
    return not bad, f"W_1^0..W_1^6 exact; mismatches {bad or 'none'}; {time.time() - t:.1f}s"


def criterion_2():
    t = time.time()
    ws = resolvent_expansion(10)
    bad = [2 * p for p in range(11) if moment_polynomial(p, ws) != parse_moment(p, reference.MOMENTS[p])]
    return not bad, f"m_0..m_20 exact (l_max = 10); mismatches {bad or 'none'}; {time.time() - t:.1f}s"


def criterion_3():
    """Literal comparison with the printed densities."""
    ws = resolvent(6)
    bad = []
    for l in range(7):
        d = density_from_resolvent(ws[l], l)
        if d != reference_density(l, corrected=False):
            printed = reference_density(l, corrected=False)
            for j in sorted(set(d.delta) | set(printed.delta)):
                for r in sorted(set(d.delta.get(j, {})) | set(printed.delta.get(j, {}))):
                    a, b = d.delta.get(j, {}).get(r), printed.delta.get(j, {}).get(r)
                    if a != b:
                        bad.append(f"l={l} eps^({j}) g^({r}/2): computed {a}, printed {b}")
            if d.bulk != printed.bulk and not bad:
                bad.append(f"l={l} bulk")
    detail = "rho~_0..rho~_6 against the printed tables; " + ("; ".join(bad) if bad else "all terms equal")
    if bad:
        detail += ("; the printed value violates criterion 4 and the Stieltjes round trip"
                   " (see the corrected check below)")
    return not bad, detail


def criterion_3_corrected():
    ws = resolvent(6)
    bad = [l for l in range(7) if density_from_resolvent(ws[l], l) != reference_density(l)]
    errata = []
    for (l, hp, j), (printed, fixed) in reference.DENSITY_ERRATA.items():
        wrong = reference_density(l, corrected=False)
        fails = (any(not polynomial_mean(wrong, 2 * s).is_zero() for s in range(l))
                 and stieltjes(wrong) != ws[l])
        errata.append(fails)
    ok = not bad and all(errata)
    d6 = density_from_resolvent(ws[6], 6)
    spot = (density_from_resolvent(ws[3], 3).delta_coefficient(1, 3) == {-3: MultiPoly.const(Fraction(-5, 512))}
            and d6.delta_coefficient(7, 6) == {-3: MultiPoly.const(Fraction(11865, 10321920))})
    return ok and spot, (f"corrected tables equal; printed erratum fails both oracles: {all(errata)}; "
                         f"-5/512 g^(-3/2) h^3 eps^(1) at l=3 and 11865/10321920 g^(-3/2) h^6 eps^(7) at l=6: {spot}")


def criterion_4():
    ws = resolvent(6)
    bad = []
    for l in range(1, 7):
        d = density_from_resolvent(ws[l], l)
        bad += [(l, s) for s in range(l) if not polynomial_mean(d, 2 * s).is_zero()]
    return not bad, f"int x^(2 sigma) rho~_l = 0 for 0 <= sigma < l <= 6; nonzero {bad or 'none'}"


def criterion_5():
    ws = list(resolvent(6))
    want = {Ensemble.GUE: 7, Ensemble.GOE: 6, Ensemble.GSE: 6}
    parts, ok = [], True
    for e, through in want.items():
        r = ode_residual(e, ws)
        ok &= r.vanishes_through(through)
        parts.append(f"{e.name} first nonzero N^-{r.first_nonzero}")
    return ok, "; ".join(parts)


def criterion_6():
    ws = list(resolvent(12))
    general = [moment_polynomial(p, ws) for p in range(13)]
    bad = []
    for e in Ensemble:
        for n in range(1, 9):
            rec = recurrence_moments(e, 12, n)
            for p in range(13):
                vals = {rec[p], general[p].evaluate(n, e.kappa)}
                for meth in methods(e):
                    if not (e is Ensemble.GOE and meth == "mezzadri-simm" and n % 2):
                        vals.add(closed_form_moment(e, meth, p, n))
                if len(vals) != 1:
                    bad.append((e.name, n, p))
    gen_bad = [n for n in range(1, 9)
               if not (harer_zagier_moments(20, n) == u_series_moments(gue_u_series(20, n))
                       == recurrence_moments(Ensemble.GUE, 20, n))]
    return not bad and not gen_bad, (f"p <= 12, N = 1..8: disagreements {bad or 'none'}; "
                                     f"Harer-Zagier and 1F1 through p = 20: disagreements {gen_bad or 'none'}")


def criterion_7():
    ws = list(resolvent(10))
    ms = [moment_polynomial(p, ws) for p in range(11)]
    dual = all(check_duality(m) for m in ms)
    struct = all(check_structure(m).ok for m in ms)
    sub = all(subleading_closed_form(l, d) == subleading_from_resolvent(ws, l, d)
              for d in range(1, 7) for l in range(d, 11))
    gse = all(gse_goe_duality(p) for p in range(11))
    dev = max(unit_circle_zeros(m).max_deviation for m in ms[2:])
    return dual and struct and sub and gse, (f"duality {dual}; structure {struct}; subleading depths 1-6 {sub}; "
                                             f"GSE-GOE {gse}; report only: max unit-circle deviation {dev:.1e} "
                                             f"({'<' if dev < 1e-8 else '>='} 1e-8)")


def criterion_8():
    one = SmoothFunction.polynomial([1.0])
    a = abs(hadamard_finite_part(one, 1))
    b = abs(hadamard_finite_part(one, 0) - math.pi)
    ex = SmoothFunction(lambda y, j: math.exp(y), 60)
    c = max(abs(hadamard_finite_part(ex, n, order=n) - hadamard_finite_part(ex, n)) for n in range(6))
    return a < 1e-12 and b < 1e-10 and c < 1e-8, (f"constant {a:.1e} (< 1e-12); arcsine {b:.1e} (< 1e-10); "
                                                  f"subtraction order {c:.1e} (< 1e-8)")


def criterion_9():
    t = time.time()
    zs = []
    for N, beta in ((8, 2), (4, 1), (4, 4), (6, 5)):
        zs += [e.z for e in estimate_and_compare(N, beta, 3, 100_000, seed=42, convention="unscaled")]
    elapsed = time.time() - t
    worst = max(abs(z) for z in zs)
    return worst <= 4 and elapsed < 120, f"max |z| = {worst:.2f} over 12 estimates (<= 4); {elapsed:.1f}s (< 120s)"


CRITERIA = [("1", criterion_1), ("2", criterion_2), ("3", criterion_3), ("3 (corrected)", criterion_3_corrected),
            ("4", criterion_4), ("5", criterion_5), ("6", criterion_6), ("7", criterion_7), ("8", criterion_8),
            ("9", criterion_9)]


def line(name, ok, detail):
    return f"criterion {name}: {'PASS' if ok else 'FAIL'}: {detail}"


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[n.replace(" ", "-").strip("()") for n, _ in CRITERIA])
def test_criterion(name, fn):
    ok, detail = fn()
    RESULTS[name] = line(name, ok, detail)
    print(RESULTS[name])
    assert ok, detail


if __name__ == "__main__":
    for name, fn in CRITERIA:
        print(line(name, *fn()), flush=True)
