import json
from pathlib import Path

import pytest

from skewcat import fixtures as fx, io
from skewcat.category import validate_cocycle
from skewcat.cli import main
from skewcat.errors import ParseError, ValidationError
from skewcat.groups import cyclic
from skewcat.skew import skew_product

DATA = Path(__file__).resolve().parent.parent / "data"


def test_pair_groupoid_file_parses():
    cat = io.parse_category(DATA / "pair_groupoid.json")
    assert cat.to_spec() == fx.pair_groupoid().to_spec()


def test_non_functorial_cocycle_file():
    cat = io.parse_category(DATA / "pair_groupoid.json")
    with pytest.raises(ValidationError) as info:
        io.parse_cocycle(DATA / "pair_cocycle_bad.json", cat)
    assert set(info.value.witness) == {"a", "ā"}


def test_non_associative_group_file():
    with pytest.raises(ValidationError) as info:
        io.parse_group(DATA / "bad_group.json")
    assert len(info.value.witness) == 3


def test_malformed_json_reports_position(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [\n  "x",\n}', encoding="utf-8")
    with pytest.raises(ParseError) as info:
        io.read_json(bad)
    assert info.value.witness["line"] == 3


def test_group_round_trip():
    g = io.named_group("D4")
    again = io.parse_group(io.group_to_json(g))
    assert again.table == g.table


def _dot_counts(text):
    lines = text.splitlines()
    nodes = [ln for ln in lines if "[label=" in ln and "->" not in ln]
    edges = [ln for ln in lines if "->" in ln]
    return len(nodes), len(edges)


def test_dot_exports():
    assert _dot_counts(io.export_dot(fx.arrow())) == (2, 1)
    assert _dot_counts(io.export_dot(fx.pair_groupoid())) == (2, 2)
    pg = fx.pair_groupoid()
    eta, _ = validate_cocycle(pg, cyclic(2), {"x": 0, "y": 0, "a": 1, "ā": 1})
    sp = skew_product(pg, eta, cyclic(2))
    assert _dot_counts(io.export_dot(sp.category)) == (4, 4)
    covering = io.export_dot(sp.projection)
    assert "cluster_total" in covering and "cluster_base" in covering
    assert io.export_dot(sp.category) == io.export_dot(sp.category)


def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_skew_and_connectivity(capsys, tmp_path):
    out = tmp_path / "skew.json"
    code, _, _ = run_cli(capsys, "skew", "--category", DATA / "pair_groupoid.json", "--cocycle", DATA / "pair_cocycle.json", "--out", out)
    assert code == 0
    assert len(json.loads(out.read_text())["morphisms"]) == 8
    code, text, _ = run_cli(capsys, "connectivity", "--category", DATA / "pair_groupoid.json", "--cocycle", DATA / "pair_cocycle.json")
    assert code == 0 and json.loads(text)["direct"] is False


def test_cli_seven_on_dihedral(capsys):
    code, text, _ = run_cli(capsys, "seven", "--category", DATA / "dihedral_groupoid.json", "--cocycle", DATA / "dihedral_cocycle.json")
    verdict = json.loads(text)
    assert code == 0 and verdict["agree"] and not verdict["1_skew_connected"]


def test_cli_gross_tucker_and_quotient(capsys):
    code, text, _ = run_cli(capsys, "quotient", "--category", DATA / "pair_groupoid.json", "--action", DATA / "swap_action.json")
    assert code == 0 and json.loads(text)["quotient"]["vertices"] == ["[x]"]
    code, text, _ = run_cli(capsys, "gross-tucker", "--category", DATA / "pair_groupoid.json", "--action", DATA / "swap_action.json")
    assert code == 0 and json.loads(text)["verified"]


def test_cli_ep_window(capsys):
    code, text, _ = run_cli(capsys, "ep", "--system", DATA / "two_loop_ep.json", "--budget", 2)
    assert code == 0 and json.loads(text)["window_morphisms"] == 14


def test_cli_presentations(capsys):
    code, text, _ = run_cli(capsys, "universal-group", "--category", DATA / "pair_groupoid.json", "--mode", "connected", "--invariants")
    data = json.loads(text)
    assert code == 0 and data["invariants"]["abelianization"] == [0]
    code, text, _ = run_cli(capsys, "pi1", "--category", DATA / "parallel_arrows.json")
    assert code == 0 and len(json.loads(text)["presentation"]["generators"]) == 1


def test_cli_covering_subcommands(capsys):
    args = ["--category", DATA / "pair_groupoid.json", "--cocycle", DATA / "pair_cocycle.json"]
    code, text, _ = run_cli(capsys, "covering", "check", *args)
    assert code == 0 and json.loads(text)["covering"]
    code, text, _ = run_cli(capsys, "covering", "deck", *args)
    assert code == 0 and json.loads(text)["order"] >= 2
    code, text, _ = run_cli(capsys, "covering", "orbits", *args)
    assert code == 0 and len(json.loads(text)["orbits"]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["validate", "--category", "missing.json"],
        ["validate", "--category", DATA / "pair_groupoid.json", "--cocycle", DATA / "pair_cocycle_bad.json"],
        ["validate", "--category", DATA / "pair_groupoid.json", "--cocycle", DATA / "pair_cocycle.json", "--group", DATA / "bad_group.json"],
        ["katsura", "--A", "[[2]]", "--B", "[[1]]", "--modulus", "2"],
        ["katsura", "--A", "[[1, 0]]", "--B", "[[1]]", "--modulus", "2"],
        ["seven", "--category", DATA / "pair_groupoid.json", "--cocycle", DATA / "pair_cocycle_trivial.json"],
        ["quotient", "--category", DATA / "arrow.json", "--action", DATA / "swap_action.json"],
        ["export-dot"],
    ],
)
def test_cli_errors_exit_nonzero_with_json(capsys, argv):
    code, _, err = run_cli(capsys, *argv)
    assert code != 0
    payload = json.loads(err[err.index("{"):])
    assert "error" in payload and "message" in payload


def test_cli_suite_empty_report(capsys):
    code, text, _ = run_cli(capsys, "suite", "--fixtures", 0)
    report = json.loads(text)
    assert code == 0 and report["suites"] == [] and report["all_passed"]
