"""Acceptance criteria 1-9, one printed PASS/FAIL line each.

All criteria are exact: no numerical tolerance applies anywhere.  Suite
runs use the default seed and the fixture counts below.
"""

import pytest

from skewcat.suite import RunConfig, run_suite

COUNTS = {
    "skew.join-formula": 200,
    "covering.skew-projection": 200,
    "covering.transformation": 200,
    "covering.deck": 200,
    "actions.gross-tucker": 100,
    "actions.ideal-intersection": 100,
    "groupoid.connectivity-corollary": 200,
    "groupoid.seven-criteria": 100,
    "groupoid.universal-group": 100,
    "zappa.products": 50,
    "zappa.exchange": 1,
}

LINES = []


def record(number, ok, text):
    line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {text}"
    LINES.append(line)
    return line


@pytest.fixture(scope="module")
def report():
    cfg = RunConfig(counts=dict(COUNTS), suites=tuple(COUNTS))
    return {s["id"]: s for s in run_suite(cfg)["suites"]}


def check(capsys, number, ok, text):
    line = record(number, ok, text)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def summary(s):
    return f"{s['id']}: {s['fixtures']} fixtures, {s['checks']} checks, {s['failures']} failures"


def test_criterion_1_skew_soundness(report, capsys):
    s = report["skew.join-formula"]
    check(capsys, 1, s["passed"] and s["fixtures"] == 200, summary(s))


def test_criterion_2_gross_tucker_round_trip(report, capsys):
    s = report["actions.gross-tucker"]
    check(capsys, 2, s["passed"] and s["fixtures"] == 100, summary(s))


def test_criterion_3_quotient_ideal_intersections(report, capsys):
    s = report["actions.ideal-intersection"]
    check(capsys, 3, s["passed"] and s["fixtures"] == 100, summary(s))


def test_criterion_4_connectivity_corollary(report, capsys):
    s = report["groupoid.connectivity-corollary"]
    check(capsys, 4, s["passed"] and s["fixtures"] == 200, summary(s))


def test_criterion_5_seven_criteria(report, capsys):
    s = report["groupoid.seven-criteria"]
    # 100 random groupoids plus the dihedral surrogate
    check(capsys, 5, s["passed"] and s["fixtures"] == 101, summary(s))


def test_criterion_6_universal_group(report, capsys):
    s = report["groupoid.universal-group"]
    # 100 connected fixtures plus the three named cases
    check(capsys, 6, s["passed"] and s["fixtures"] == 103, summary(s))


def test_criterion_7_covering_layer(report, capsys):
    parts = [report[k] for k in ("covering.skew-projection", "covering.transformation", "covering.deck")]
    ok = all(p["passed"] for p in parts) and parts[0]["fixtures"] == 200 and parts[1]["fixtures"] == 200
    ok = ok and parts[2]["fixtures"] > 0
    check(capsys, 7, ok, "; ".join(summary(p) for p in parts))


def test_criterion_8_zappa_szep(report, capsys):
    parts = [report["zappa.products"], report["zappa.exchange"]]
    check(capsys, 8, all(p["passed"] and p["fixtures"] > 0 for p in parts), "; ".join(summary(p) for p in parts))


MUTANT_CATCHERS = {
    "skew-flip": "skew.join-formula",
    "no-freeness": "actions.freeness-detection",
    "tree-outside-kernel": "groupoid.seven-criteria",
}


def test_criterion_9_mutation_sensitivity(capsys):
    caught = {}
    for mutant, expected in MUTANT_CATCHERS.items():
        rep = run_suite(RunConfig(fixtures=10, mutants=(mutant,)))
        failing = sorted(s["id"] for s in rep["suites"] if not s["passed"])
        caught[mutant] = failing
    ok = all(MUTANT_CATCHERS[m] in caught[m] for m in MUTANT_CATCHERS)
    text = "; ".join(f"{m} caught by {', '.join(f) or 'nothing'}" for m, f in caught.items())
    check(capsys, 9, ok, text)
