import pytest

from gbe.verify import RUNNERS, SUITES, VerificationReport, run


@pytest.mark.parametrize("suite", ["golden", "classical", "density"])
def test_suite_passes(suite):
    rep = RUNNERS[suite]()
    assert rep.passed, [c for c in rep.failures]


def test_reports_are_stable():
    a = RUNNERS["structure"]().to_json_obj()
    b = RUNNERS["structure"]().to_json_obj()
    assert a["checks"] == b["checks"]
    assert VerificationReport.from_json_obj(a).to_json_obj() == a


def test_golden_records_the_correction():
    rep = RUNNERS["golden"]()
    ids = {c.id: c for c in rep.checks}
    assert "corrected" in ids["density/rho3"].detail
    assert any(i.startswith("density/rho3/erratum") for i in ids)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run("everything")
    assert set(SUITES) == set(RUNNERS)
