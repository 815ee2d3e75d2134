import csv
import io
import json
from fractions import Fraction

import pytest

from gbe.cli import main
from gbe.density import SmoothedDensity
from gbe.moments import MomentPoly
from gbe.spectral import SpectralExpr, parse_poly
from gbe.verify import VerificationReport

M6_LINE = ("m_{6} = 5 N^{4}+22 N^{3}\\left(-1+\\kappa^{-1}\\right)+N^{2}\\left(32-54\\kappa^{-1}+32\\kappa^{-2}\\right)"
           "+N\\left(-15+32\\kappa^{-1}-32\\kappa^{-2}+15\\kappa^{-3}\\right)")


def run(capsys, *argv, environ=None):
    code = main(list(argv), environ={} if environ is None else environ)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_resolvent_json_round_trip(capsys, ws6):
    code, out, _ = run(capsys, "resolvent", "--lmax", "2", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["schema"] == "gbe/1"
    ws = [SpectralExpr.from_json_obj({"terms": t}) for t in obj["W"]]
    assert ws == ws6[:3]


def test_resolvent_latex_and_dag(capsys):
    code, out, _ = run(capsys, "resolvent", "--lmax", "1", "--format", "latex")
    assert code == 0 and out.startswith("W_1^{0} =")
    code, out, _ = run(capsys, "resolvent", "--lmax", "3", "--dag")
    assert json.loads(out)["schema"] == "gbe/1"


def test_moments_latex_line(capsys):
    code, out, _ = run(capsys, "moments", "--p", "3", "--format", "latex")
    assert code == 0
    assert out.strip() == M6_LINE


def test_moments_json_round_trip(capsys, ws6):
    from gbe.moments import moment_polynomial
    code, out, _ = run(capsys, "moments", "--p", "4", "--all")
    ms = [MomentPoly.from_json_obj(m) for m in json.loads(out)["moments"]]
    assert ms == [moment_polynomial(p, ws6) for p in range(5)]


def test_classical(capsys):
    code, out, _ = run(capsys, "classical", "--ensemble", "goe", "--p", "2", "--n", "4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [Fraction(r["moment"]) for r in rows] == [4, 20, 228]
    code, out, _ = run(capsys, "classical", "--ensemble", "GUE", "--p", "2")
    assert parse_poly(json.loads(out)["moments"][2]) == parse_poly("2*N^3 + N")


def test_density_round_trip(capsys, densities):
    code, out, _ = run(capsys, "density", "--l", "3", "--g", "1/4", "--format", "json")
    obj = json.loads(out)
    assert obj["g"] == "1/4"
    assert SmoothedDensity.from_json_obj(obj) == densities[3]


def test_integrate(capsys):
    code, out, _ = run(capsys, "integrate", "--stat", "poly:4", "--lmax", "2", "--kappa", "1/2")
    obj = json.loads(out)
    assert [Fraction(c) for c in obj["coefficients"]] == [Fraction(1, 8), Fraction(5, 16), Fraction(5, 16)]
    code, out, _ = run(capsys, "integrate", "--stat", "cheb:6", "--lmax", "4", "--kappa", "2",
                       "--method", "quadrature", "--format", "csv")
    vals = [float(r["coefficient"]) for r in csv.DictReader(io.StringIO(out))]
    assert len(vals) == 5


def test_mc_csv(capsys):
    code, out, _ = run(capsys, "mc", "--n", "8", "--beta", "2", "--samples", "20000", "--p", "2",
                       "--seed", "42", "--convention", "unscaled")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["p"] for r in rows] == ["1", "2"]
    assert float(rows[0]["exact"]) == 64.0
    assert all(abs(float(r["z"])) <= 4 for r in rows)


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "structure")
    rep = VerificationReport.from_json_obj(json.loads(out))
    assert code == 0 and rep.passed and rep.suite == "structure"


def test_verify_is_thread_independent(capsys):
    _, a, _ = run(capsys, "verify", "--suite", "mc", "--threads", "1")
    _, b, _ = run(capsys, "verify", "--suite", "mc", "--threads", "4")
    assert a == b


def test_out_flag(capsys, tmp_path):
    path = tmp_path / "m.json"
    code, out, _ = run(capsys, "moments", "--p", "1", "--out", str(path))
    assert code == 0 and out == ""
    assert MomentPoly.from_json_obj(json.loads(path.read_text())["moments"][0]).p == 1


@pytest.mark.parametrize("argv,flag", [
    (["resolvent", "--lmax", "-2"], "--lmax"),
    (["density", "--l", "1", "--g", "abc"], "--g"),
    (["integrate", "--stat", "spline:3", "--lmax", "2"], "--stat"),
    (["classical", "--ensemble", "GSE", "--p", "2", "--n", "2", "--method", "mehta"], "--method"),
    (["integrate", "--stat", "poly:2", "--lmax", "2", "--method", "quadrature"], "--kappa"),
    (["mc", "--n", "4", "--beta", "-1"], "--beta"),
    (["moments", "--p", "2", "--format", "csv"], "--format"),
])
def test_usage_errors_name_the_flag(capsys, argv, flag):
    with pytest.raises(SystemExit) as exc:
        main(argv, environ={})
    assert exc.value.code == 2
    assert flag in capsys.readouterr().err


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["plot"], environ={})
    assert exc.value.code == 2


def test_environment_and_flag_precedence(capsys):
    code, out, _ = run(capsys, "density", "--l", "1", environ={"GBE_G": "1"})
    assert json.loads(out)["g"] == "1/1"
    code, out, _ = run(capsys, "density", "--l", "1", "--g", "1/9", environ={"GBE_G": "1"})
    assert json.loads(out)["g"] == "1/9"
    code, out, _ = run(capsys, "--g", "4", "density", "--l", "1")
    assert json.loads(out)["g"] == "4/1"


def test_bad_environment_value(capsys):
    code, _, err = run(capsys, "density", "--l", "1", environ={"GBE_THREADS": "many"})
    assert code == 2 and "GBE_THREADS" in err
