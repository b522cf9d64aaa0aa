import pytest

from skewcat.suite import SUITES, RunConfig, render_report, run_suite


def small(**kw):
    return RunConfig(seed=11, fixtures=3, **kw)


def test_reports_are_byte_identical():
    assert render_report(run_suite(small())) == render_report(run_suite(small()))


def test_seed_changes_the_fixtures():
    a = run_suite(RunConfig(seed=1, fixtures=3, suites=("skew.join-formula",)))
    b = run_suite(RunConfig(seed=2, fixtures=3, suites=("skew.join-formula",)))
    assert a["suites"][0]["checks"] != b["suites"][0]["checks"]


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("SKEWCAT_SEED", "99")
    assert RunConfig().seed == 99


def test_zero_fixtures_gives_an_empty_report():
    report = run_suite(RunConfig(fixtures=0))
    assert report["suites"] == [] and report["all_passed"]


def test_report_is_sorted_and_complete():
    report = run_suite(small())
    ids = [s["id"] for s in report["suites"]]
    assert ids == sorted(SUITES)
    assert report["all_passed"]


def test_report_file_written(tmp_path):
    run_suite(RunConfig(seed=3, fixtures=1, suites=("zappa.exchange",), out_dir=str(tmp_path)))
    assert (tmp_path / "report.json").read_text().startswith("{")


def test_unknown_mutant_rejected():
    with pytest.raises(ValueError):
        run_suite(RunConfig(fixtures=1, mutants=("nope",)))


def test_failures_are_reported_as_data():
    report = run_suite(RunConfig(seed=5, fixtures=3, suites=("skew.join-formula",), mutants=("skew-flip",)))
    suite = report["suites"][0]
    assert not report["all_passed"] and suite["failures"] > 0
    assert suite["counterexamples"][0]["detail"]["error"]
