import pytest

from megalie.sbve import TruncationError
from megalie.sbve.verify import Check, Report, Section, verify

SECTIONS0 = [
    "structure",
    "series",
    "megaideals",
    "push-forward matrices and constraints",
    "rotation constraints",
    "residuals",
    "negative controls",
    "factor group",
]


def test_default_run_passes(report0):
    assert report0.ok and report0.first_failure() is None
    assert [s.title for s in report0.sections] == SECTIONS0
    text = report0.render()
    assert text.endswith("verdict: PASS\n")
    assert "input digest: sha256:" in text


def test_rotating_run_adds_conjugation(report1):
    assert report1.ok
    assert [s.title for s in report1.sections] == SECTIONS0 + ["conjugation to Ω = 0"]


def test_every_check_is_tagged(report0, report1):
    for rep in (report0, report1):
        for s in rep.sections:
            for c in s.checks:
                assert c.tag in ("exact", "symbolic", "numeric")


def test_factor_group_section_prints_table(report0):
    sec = next(s for s in report0.sections if s.title == "factor group")
    assert any("σ1σ2" in line for line in sec.lines)


def test_digest_depends_on_parameters(report0, report1):
    assert report0.digest() != report1.digest()
    assert report0.digest() == Report(dict(report0.params), []).digest()


def test_failure_is_reported():
    sec = Section("demo")
    sec.check("fine", True, "exact")
    sec.check("broken", False, "numeric", "max|R|=1")
    rep = Report({"x": 1}, [sec])
    assert not rep.ok
    assert rep.first_failure() == ("demo", Check("broken", False, "numeric", "max|R|=1"))
    assert rep.render().splitlines()[-1] == "verdict: FAIL (first failure in 'demo': broken)"


def test_minimum_truncation():
    with pytest.raises(TruncationError):
        verify(0, 1)
