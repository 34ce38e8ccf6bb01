import json

from nilgelfand.suite import (
    SCHEMA_VERSION,
    Job,
    SuiteConfig,
    SuiteFilter,
    encode,
    exit_status,
    plan,
    render_markdown,
    run_job,
    run_suite,
    suite_document,
)

INLINE = SuiteConfig(workers=1)


def test_empty_filter():
    reports = run_suite(SuiteFilter(), INLINE)
    assert reports == [] and exit_status(reports) == 0


def test_everything_plans_all_tables():
    jobs = plan(SuiteFilter.everything())
    assert {j.table for j in jobs} >= {"kac", "jaw", "indVin", "indIpms", "heisenberg", "stabilizers"}
    assert [j.job_id for j in jobs] == sorted(j.job_id for j in jobs)


def test_kac_rows_multiplicity_free():
    reports = run_suite(SuiteFilter(("kac",), ("1", "2", "3", "4"), ("mf",)), SuiteConfig(dmax=4, workers=1))
    assert len(reports) == 4
    assert all(r.passed for r in reports)
    assert exit_status(reports) == 0


def test_heisenberg_pfaffians():
    reports = run_suite(SuiteFilter(("heisenberg",), None, ("pfaffian",)), INLINE)
    assert [r.row for r in reports] == ["1", "2", "3", "4"]
    assert all(r.passed for r in reports)


def test_failures_carry_witness():
    reports = run_suite(SuiteFilter(("jaw",), ("5a",), ("chain",)), INLINE)
    (r,) = reports
    assert not r.passed and r.witness is not None
    assert exit_status(reports) == 1


def test_errors_are_captured_per_job():
    bad = run_job(Job("mf", "kac", "no-such-row"), INLINE)
    assert not bad.passed and bad.error and bad.witness
    good = run_job(Job("pfaffian", "heisenberg", "2"), INLINE)
    assert good.passed and good.error is None


def _document(workers):
    filt = SuiteFilter(("kac", "heisenberg", "stabilizers"), ("1", "2", "centralizers"), ("mf", "pfaffian", "stabilizer"))
    config = SuiteConfig(workers=workers)
    return json.dumps(suite_document(run_suite(filt, config), SuiteConfig()), sort_keys=True)


def test_reports_are_deterministic():
    first = _document(1)
    assert first == _document(1)
    assert first == _document(2)
    doc = json.loads(first)
    assert doc["schema"] == SCHEMA_VERSION and doc["passed"] is True


def test_encode_is_stable():
    from fractions import Fraction

    assert encode({"b": 0.1, "a": Fraction(1, 3), 2: complex(1, -1)}) == {
        "2": ["1.000000e+00", "-1.000000e+00"], "a": "1/3", "b": "1.000000e-01"}


def test_markdown_summary():
    reports = run_suite(SuiteFilter(("heisenberg",), ("1",), ("pfaffian",)), INLINE)
    text = render_markdown(reports)
    assert "pfaffian:heisenberg:1" in text and "1/1 jobs passed" in text
