"""Command-line front end.

    python3 -m gbe resolvent --lmax 2 --format json
    python3 -m gbe moments --p 3 --format latex
    python3 -m gbe classical --ensemble GOE --p 6 --n 4
    python3 -m gbe density --l 3 --g 1/4
    python3 -m gbe integrate --stat cheb:6 --lmax 6 --kappa 2
    python3 -m gbe mc --n 64 --beta 2.5 --samples 100000 --p 4 --seed 42
    python3 -m gbe verify --suite golden

Exit status: 0 on success, 1 when a verification suite fails, 2 on a usage
error.  Settings come from flags, then GBE_* environment variables, then the
defaults in config.Settings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import replace
from fractions import Fraction

from . import config
from .errors import DomainError, GbeError, InvalidParameter, MethodUnsupported

SCHEMA = "gbe/1"
FORMATS = ("json", "latex", "text", "csv")


class UsageError(Exception):
    """Bad command-line input; the message names the flag."""


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number such as 1/4, got {text!r}") from None


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("expected a positive integer, got 0")
    return v


def parse_statistic(text: str):
    """'poly:D' is x^D, 'cheb:K' is the Chebyshev polynomial T_K(x)."""
    from .density import LinearStatistic
    kind, _, arg = text.partition(":")
    try:
        k = int(arg)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected poly:<degree> or cheb:<k>, got {text!r}") from None
    if k < 0:
        raise argparse.ArgumentTypeError("the degree must be non-negative")
    if kind == "poly":
        return LinearStatistic.monomial(k)
    if kind == "cheb":
        return LinearStatistic.chebyshev(k)
    raise argparse.ArgumentTypeError(f"unknown statistic kind {kind!r}; use poly or cheb")


# ---------------------------------------------------------------------------
# parser

def _globals(p: argparse.ArgumentParser, default) -> None:
    p.add_argument("--out", default=default, help="write the output to this path instead of stdout")
    p.add_argument("--threads", type=_positive, default=default, help="worker threads (results do not depend on it)")
    p.add_argument("--convention", choices=("scaled", "unscaled"), default=default,
                   help="scaled: support (-2 sqrt(g), 2 sqrt(g)); unscaled: weight exp(-kappa x^2/2)")
    p.add_argument("--g", type=_fraction, default=default, help="coupling g (default 1/4)")
    p.add_argument("--format", choices=FORMATS, default=default, help="output format")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="gbe", description="Exact 1/N expansions for Gaussian beta ensembles.")
    _globals(top, None)
    common = argparse.ArgumentParser(add_help=False)
    _globals(common, argparse.SUPPRESS)   # also accepted after the subcommand
    sub = top.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("resolvent", parents=[common], help="resolvent coefficients W_1^0..W_1^lmax")
    p.add_argument("--lmax", type=_nonneg, required=True)
    p.add_argument("--method", choices=("jet", "correlator"), default="jet")
    p.add_argument("--dag", action="store_true", help="emit the dependency DAG instead")

    p = sub.add_parser("moments", parents=[common], help="moment polynomials m_0..m_2p")
    p.add_argument("--p", type=_nonneg, required=True)
    p.add_argument("--all", action="store_true", help="emit every m_2q with q <= p, not only m_2p")

    p = sub.add_parser("classical", parents=[common], help="moments of GOE, GUE or GSE")
    p.add_argument("--ensemble", required=True, type=str.upper, choices=("GOE", "GUE", "GSE"))
    p.add_argument("--p", type=_nonneg, required=True)
    p.add_argument("--n", type=_positive, default=None, help="matrix size (symbolic in N when omitted)")
    p.add_argument("--method", default="recurrence",
                   help="recurrence (default), mehta, goulden-jackson or mezzadri-simm")

    p = sub.add_parser("density", parents=[common], help="smoothed density rho~_l")
    p.add_argument("--l", type=_nonneg, required=True)

    p = sub.add_parser("integrate", parents=[common], help="1/N expansion of a linear statistic mean")
    p.add_argument("--stat", type=parse_statistic, required=True, help="poly:<degree> or cheb:<k>")
    p.add_argument("--lmax", type=_nonneg, required=True)
    p.add_argument("--kappa", type=_fraction, default=None, help="kappa = beta/2 (symbolic when omitted)")
    p.add_argument("--method", choices=("auto", "exact", "quadrature"), default="auto")
    p.add_argument("--n", type=_positive, default=None, help="also sum the truncated series at this N")

    p = sub.add_parser("mc", parents=[common], help="Monte Carlo moments from the tridiagonal model")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--samples", type=_positive, default=100_000)
    p.add_argument("--p", type=_positive, default=3)
    p.add_argument("--seed", type=_nonneg, default=None)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=("golden", "classical", "structure", "density", "mc", "all"),
                   default="golden")
    return top


# ---------------------------------------------------------------------------
# commands; each returns (text, exit code)

def _dump(obj) -> str:
    return json.dumps(obj, indent=1)


def cmd_resolvent(a, s: config.Settings):
    from .loops import HierarchyStore, jet_dag, resolvent_expansion
    if a.dag:
        if a.method == "jet":
            return _dump(jet_dag(a.lmax)), 0
        store = HierarchyStore()
        resolvent_expansion(a.lmax, method="correlator", store=store)
        return _dump(store.export_dag()), 0
    ws = resolvent_expansion(a.lmax, method=a.method)
    if s.format == "json":
        return _dump({"schema": SCHEMA, "quantity": "resolvent", "l_max": a.lmax,
                      "W": [w.to_json_obj()["terms"] for w in ws]}), 0
    if s.format == "latex":
        return "\n".join(f"W_1^{{{l}}} = {w.to_latex()}" for l, w in enumerate(ws)), 0
    if s.format == "text":
        return "\n".join(f"W1^{l} = {w}" for l, w in enumerate(ws)), 0
    raise UsageError("--format: resolvent supports json, latex and text")


def cmd_moments(a, s):
    from .loops import resolvent_expansion
    from . import reference
    from .moments import display_contents, moment_polynomial
    ws = resolvent_expansion(a.p)
    ps = range(a.p + 1) if a.all else [a.p]
    ms = [moment_polynomial(p, ws) for p in ps]
    if s.format == "json":
        return _dump({"schema": SCHEMA, "quantity": "moments", "moments": [m.to_json_obj() for m in ms]}), 0
    if s.format == "latex":
        # follow the bracket factoring of the tabulated expressions where they exist
        return "\n".join(m.to_latex(display_contents(reference.MOMENTS[m.p]) if m.p in reference.MOMENTS else None)
                         for m in ms), 0
    if s.format == "text":
        return "\n".join(f"m{2 * m.p} = {m}" for m in ms), 0
    raise UsageError("--format: moments supports json, latex and text")


def cmd_classical(a, s):
    from .classical import Ensemble, closed_form_moment, methods, recurrence_moments
    from .exact import rational_str
    e = Ensemble.parse(a.ensemble)
    if a.method != "recurrence" and a.method not in methods(e):
        raise UsageError(f"--method: {a.method!r} is not available for {e.name}; "
                         f"choose from recurrence, {', '.join(methods(e))}")
    if a.n is None:
        if a.method != "recurrence":
            raise UsageError("--n: closed forms need a numeric matrix size")
        vals = [str(m) for m in recurrence_moments(e, a.p)]
    elif a.method == "recurrence":
        vals = [str(m) for m in recurrence_moments(e, a.p, a.n)]
    else:
        vals = [str(closed_form_moment(e, a.method, p, a.n)) for p in range(a.p + 1)]
    if s.format in ("csv", "text"):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "moment"])
        w.writerows([2 * p, v] for p, v in enumerate(vals))
        return buf.getvalue().rstrip("\n"), 0
    if s.format == "json":
        return _dump({"schema": SCHEMA, "quantity": "classical", "ensemble": e.name, "method": a.method,
                      "N": a.n, "moments": vals}), 0
    raise UsageError("--format: classical supports json, csv and text")


def cmd_density(a, s):
    from .density import density_from_resolvent
    from .loops import resolvent_expansion
    w = resolvent_expansion(a.l)[a.l]
    d = density_from_resolvent(w, a.l)
    if s.format == "json":
        return _dump(d.to_json_obj(g=s.g)), 0
    if s.format == "latex":
        return f"\\tilde\\rho_{{{a.l}}}(x) = {d.to_latex()}", 0
    raise UsageError("--format: density supports json and latex")


def _num_str(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, Fraction):
        from .exact import rational_str
        return rational_str(v)
    return str(v)


def cmd_integrate(a, s):
    from .density import linear_statistic_mean
    g = s.g
    if a.method == "quadrature" and a.kappa is None:
        raise UsageError("--kappa: the quadrature path needs a numeric kappa")
    res = linear_statistic_mean(a.stat, a.lmax, N=a.n, kappa=a.kappa, g=g, method=a.method)
    coeffs = [_num_str(c) for c in res.coefficients]
    if s.format == "json":
        out = {"schema": SCHEMA, "quantity": "linear-statistic", "statistic": a.stat.label,
               "l_max": a.lmax, "g": _num_str(g), "kappa": None if a.kappa is None else _num_str(a.kappa),
               "coefficients": coeffs}
        if res.total is not None:
            out["N"] = a.n
            out["total"] = _num_str(res.total)
        return _dump(out), 0
    if s.format in ("csv", "text"):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["l", "coefficient"])
        w.writerows(enumerate(coeffs))
        return buf.getvalue().rstrip("\n"), 0
    raise UsageError("--format: integrate supports json, csv and text")


def cmd_mc(a, s):
    from .montecarlo import estimate_and_compare
    if not a.beta > 0:
        raise UsageError("--beta: must be positive")
    if a.samples < 100:
        raise UsageError("--samples: at least 100 are required")
    seed = s.seed if a.seed is None else a.seed
    est = estimate_and_compare(a.n, a.beta, a.p, a.samples, seed, convention=s.convention, g=s.g,
                               threads=s.threads)
    if s.format == "json":
        return _dump({"schema": SCHEMA, "quantity": "monte-carlo", "N": a.n, "beta": a.beta, "seed": seed,
                      "samples": a.samples, "convention": s.convention,
                      "rows": [[e.p, e.mean, e.stderr, e.exact, e.z] for e in est]}), 0
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "estimate", "stderr", "exact", "z"])
    for e in est:
        w.writerow([e.p, repr(e.mean), repr(e.stderr), repr(e.exact), f"{e.z:.4f}"])
    return buf.getvalue().rstrip("\n"), 0


def cmd_verify(a, s):
    from .verify import run
    reports = run(a.suite, threads=s.threads)
    ok = all(r.passed for r in reports)
    if s.format == "json":
        if len(reports) == 1:
            text = reports[0].to_json()
        else:
            text = _dump({"schema": SCHEMA, "suite": a.suite, "passed": ok,
                          "reports": [r.to_json_obj() for r in reports]})
    else:
        lines = []
        for r in reports:
            for c in r.checks:
                lines.append(f"{r.suite}\t{c.status.upper()}\t{c.id}\t{c.anchor}\t{c.detail}")
            lines.append(f"{r.suite}: {'PASS' if r.passed else 'FAIL'} "
                         f"({len(r.checks) - len(r.failures)}/{len(r.checks)})")
        text = "\n".join(lines)
    return text, 0 if ok else 1


COMMANDS = {"resolvent": cmd_resolvent, "moments": cmd_moments, "classical": cmd_classical,
            "density": cmd_density, "integrate": cmd_integrate, "mc": cmd_mc, "verify": cmd_verify}

# formats that make sense when no --format is given
DEFAULT_FORMAT = {"mc": "csv"}


def main(argv=None, environ=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)           # exits with status 2 on usage errors
    flags = {k: getattr(args, k, None) for k in ("g", "convention", "threads", "format")}
    try:
        env = os.environ if environ is None else environ
        settings = config.resolve(flags, env)
        if flags["format"] is None and "GBE_FORMAT" not in env and args.command in DEFAULT_FORMAT:
            settings = replace(settings, format=DEFAULT_FORMAT[args.command])
        text, code = COMMANDS[args.command](args, settings)
    except UsageError as exc:
        parser.error(str(exc))
    except (InvalidParameter, DomainError, MethodUnsupported, ValueError) as exc:
        print(f"gbe {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except GbeError as exc:
        print(f"gbe {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
