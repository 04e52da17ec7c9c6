import csv
import io
import json
import subprocess
import sys

import pytest

from hgci.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_ci_tail_example():
    assert run("ci", "--method", "tail_baseline", "--N", "10", "--n", "5", "--x", "5") == (0, "7 10\n", "")


@pytest.mark.parametrize("method", ["lco_style", "symmetric_opt", "tail_baseline"])
def test_ci_census(method):
    code, out, _ = run("ci", "--method", method, "--N", "6", "--n", "6", "--x", "3")
    assert (code, out) == (0, "3 3\n")


def test_ci_symmetric_mirror():
    _, lo_hi_0, _ = run("ci", "--N", "10", "--n", "5", "--x", "0")
    _, lo_hi_5, _ = run("ci", "--N", "10", "--n", "5", "--x", "5")
    lo0, hi0 = map(int, lo_hi_0.split())
    lo5, hi5 = map(int, lo_hi_5.split())
    assert lo0 == 10 - hi5 and hi0 == 10 - lo5


def test_ci_members_and_json():
    code, out, _ = run("ci", "--N", "10", "--n", "5", "--x", "1", "--members")
    lines = out.splitlines()
    lo, hi = map(int, lines[0].split())
    assert list(map(int, lines[1].split())) == list(range(lo, hi + 1))
    code, out, _ = run("ci", "--N", "10", "--n", "5", "--x", "1", "--format", "json-lines", "--members")
    rec = json.loads(out)
    assert rec["members"] == list(range(rec["lo"], rec["hi"] + 1)) and rec["method"] == "symmetric_opt"


def test_table_census_csv():
    code, out, _ = run("table", "--N", "6", "--n", "6")
    assert code == 0
    assert out.splitlines() == ["x,lo,hi,gap_flag"] + [f"{x},{x},{x},false" for x in range(7)]


def test_table_symmetric_closed_under_reflection():
    _, out, _ = run("table", "--N", "10", "--n", "5")
    rows = {int(r["x"]): (int(r["lo"]), int(r["hi"])) for r in csv.DictReader(io.StringIO(out))}
    for x, (lo, hi) in rows.items():
        assert rows[5 - x] == (10 - hi, 10 - lo)


@pytest.mark.parametrize("method", ["lco_style", "symmetric_opt", "tail_baseline"])
def test_table_never_flags_gaps_and_is_stable(method):
    first = run("table", "--method", method, "--N", "57", "--n", "11")[1]
    assert first == run("table", "--method", method, "--N", "57", "--n", "11")[1]
    assert all(r["gap_flag"] == "false" for r in csv.DictReader(io.StringIO(first)))
    lines = run("table", "--method", method, "--N", "57", "--n", "11", "--format", "json-lines")[1].splitlines()
    assert len(lines) == 12 and not any(json.loads(l)["gap"] for l in lines)


def test_audit_text():
    code, out, _ = run("audit", "--N", "30", "--n", "15")
    assert code == 0
    assert "asymmetry: 0.0%" in out
    fields = dict(line.split(": ", 1) for line in out.splitlines())
    assert float(fields["min_coverage"]) >= 0.95
    assert len(fields["min_coverage"].replace("0.", "", 1)) >= 12


@pytest.mark.parametrize("method", ["lco_style", "symmetric_opt", "tail_baseline"])
def test_audit_json_matches_library(method):
    from hgci.dist import Design
    from hgci.procedures import audit, build_table

    _, out, _ = run("audit", "--method", method, "--N", "40", "--n", "13", "--alpha", "0.1", "--format", "json-lines")
    rec = json.loads(out)
    expected = audit(build_table(method, Design(40, 13, 0.1)))
    assert rec["min_coverage"] == expected.min_coverage
    assert rec["total_size"] == expected.total_size
    assert rec["asymmetry_proportion"] == expected.asymmetry_proportion
    assert rec["min_coverage"] >= 0.9 - 1e-12


def test_audit_oracle():
    code, out, _ = run("audit", "--N", "10", "--n", "5", "--oracle", "--format", "json-lines")
    assert code == 0 and json.loads(out)["oracle_total_size"] == 30
    code, _, err = run("audit", "--N", "13", "--n", "5", "--oracle")
    assert code == 4 and "N <= 12" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("ci", "--N", "10", "--n", "11", "--x", "1"),
        ("ci", "--N", "10", "--n", "5", "--x", "6"),
        ("ci", "--N", "10", "--n", "5"),
        ("table", "--N", "10", "--n", "5", "--alpha", "1.5"),
        ("table", "--n", "5"),
        ("audit", "--method", "wald", "--N", "10", "--n", "5"),
        ("bench", "--N", "10", "--n", "1", "2"),
        ("bench", "--method", "wald"),
        ("bench", "--repeats", "0"),
    ],
)
def test_invalid_arguments_exit_2(argv, capsys):
    code, out, err = run(*argv)
    assert code == 2
    assert out == ""


def test_construction_failure_exit_3(monkeypatch):
    import hgci.cli as cli
    from hgci.errors import ConstructionError

    def boom(method, d):
        raise ConstructionError("gaps remain at x=3")

    monkeypatch.setattr(cli, "build_table", boom)
    code, out, err = run("table", "--N", "10", "--n", "5")
    assert code == 3 and "gaps remain at x=3" in err


def test_seedless_flag_is_accepted():
    assert run("ci", "--seedless", "--N", "6", "--n", "6", "--x", "2")[:2] == (0, "2 2\n")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hgci", "ci", "--method", "tail_baseline", "--N", "10", "--n", "5", "--x", "5"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "7 10\n"
