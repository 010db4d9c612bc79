import csv
import json
import subprocess
import sys

import jsonschema
import pytest

from projmono import cli, curve as curve_mod
from projmono.errors import NewtonDivergence, VerificationFailure


@pytest.fixture(autouse=True)
def _restore_tolerances(monkeypatch):
    # --tolerance writes module globals; monkeypatch puts them back afterwards
    for module, attr in cli.TOLERANCES.values():
        monkeypatch.setattr(module, attr, getattr(module, attr))


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def cubic_files(tmp_path, capsys):
    prefix = tmp_path / "tc"
    assert _run(capsys, "construct", "twisted-cubic", "--out", str(prefix))[0] == 0
    return f"{prefix}.curve.json", f"{prefix}.center.json"


def test_analyze_report_matches_schema(cubic_files, capsys):
    code, out, _ = _run(capsys, "analyze", *cubic_files, "--seed", "3")
    assert code == 0
    rep = json.loads(out)
    jsonschema.validate(rep, cli.REPORT_SCHEMA)
    assert rep["group"]["order"] == "3"
    assert rep["group"]["classification"] == "alternating"
    assert rep["checks"]["product_relation"] is True


def test_analyze_is_deterministic(cubic_files, capsys):
    runs = []
    for _ in range(2):
        rep = json.loads(_run(capsys, "analyze", *cubic_files, "--seed", "5")[1])
        rep.pop("wall_clock_ms")
        runs.append(rep)
    assert runs[0] == runs[1]


def test_exact_and_float_modes_agree(cubic_files, capsys):
    reps = [json.loads(_run(capsys, "analyze", *cubic_files, flag)[1]) for flag in ("--exact", "--float")]
    assert reps[0]["mode"] == "exact" and reps[1]["mode"] == "float"
    assert reps[0]["group"]["order"] == reps[1]["group"]["order"]


def test_scan_rows_and_schema(tmp_path, cubic_files, capsys):
    out_prefix = tmp_path / "scan"
    code, out, _ = _run(capsys, "scan", cubic_files[0], "--samples", "6", "--seed", "2", "--out", str(out_prefix))
    assert code == 0
    summary = json.loads(out)
    jsonschema.validate(summary, cli.SCAN_SCHEMA)
    assert summary["tally"] == {"symmetric": 6}
    with open(f"{out_prefix}.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 6
    assert list(rows[0]) == cli.CSV_COLUMNS


def test_scan_through_point(tmp_path, capsys):
    prefix = tmp_path / "nb"
    _run(capsys, "construct", "nonbirational-quartic", "--out", str(prefix))
    code, out, _ = _run(
        capsys, "scan", f"{prefix}.curve.json", "--samples", "4", "--through", f"{prefix}.through.json"
    )
    assert code == 0
    assert json.loads(out)["tally"] == {"imprimitive": 4}


def test_construct_round_trip(tmp_path, capsys):
    prefix = tmp_path / "q"
    code, out, _ = _run(capsys, "construct", "quartic-special", "--param", "p1=2", "--param", "p2=-1", "--out", str(prefix))
    expected = json.loads(out)["expected"]
    rep = json.loads(_run(capsys, "analyze", f"{prefix}.curve.json", f"{prefix}.center.json")[1])
    assert rep["d_L"] == expected["d_L"]
    assert rep["group"]["classification"] == expected["classification"]
    assert expected["block_sizes"] in rep["group"]["block_sizes"]


@pytest.mark.parametrize(
    "cycles, tag, order",
    [
        (["(1 2)", "(1 2 3 4)"], "symmetric", "24"),
        (["(1 2 3)", "(2 3 4)"], "alternating", "12"),
        (["(1 2 3 4 5)"], "cyclic", "5"),
        (["(1 2)(3 4)", "(1 3)"], "imprimitive", "8"),
    ],
)
def test_group_command(capsys, cycles, tag, order):
    code, out, _ = _run(capsys, "group", *cycles)
    g = json.loads(out)
    assert code == 0 and g["classification"] == tag and g["order"] == order


def test_bad_cycle_text_exits_1(capsys):
    code, _, err = _run(capsys, "group", "(1 x)")
    assert code == 1 and "position" in err


def test_missing_file_exits_1(capsys, tmp_path):
    code, _, _ = _run(capsys, "analyze", str(tmp_path / "nope.json"), str(tmp_path / "nope.json"))
    assert code == 1


def test_unknown_option_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["analyze", "--frobnicate"])
    assert exc.value.code == 1


def test_unknown_tolerance_exits_1(cubic_files, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["analyze", *cubic_files, "--tolerance", "nonsense=1"])
    assert exc.value.code == 1


def test_numeric_failure_exits_3(cubic_files, capsys):
    code, _, err = _run(capsys, "analyze", *cubic_files, "--tolerance", "cluster_cap=1e-12")
    assert code == 3 and "numeric failure" in err


def test_tolerance_override_is_applied(cubic_files, capsys):
    _run(capsys, "analyze", *cubic_files, "--tolerance", "match_ratio=0.25")
    assert cli.mono_mod.MATCH_RATIO == 0.25
    assert curve_mod.CLUSTER_CAP == 0.05


def test_verification_failure_exits_2(cubic_files, capsys, monkeypatch):
    def broken(*_, **__):
        raise VerificationFailure("forced", "product_relation")

    monkeypatch.setattr(cli, "monodromy", broken)
    code, _, err = _run(capsys, "analyze", *cubic_files)
    assert code == 2 and "product_relation" in err


def test_scan_records_failures(cubic_files, capsys, monkeypatch):
    def flaky(*_, **__):
        raise NewtonDivergence("forced")

    monkeypatch.setattr(cli, "monodromy", flaky)
    summary, rows = cli.scan(curve_mod.RationalCurveMap((curve_mod.RatPoly([1]), curve_mod.RatPoly([0, 1]), curve_mod.RatPoly([0, 0, 1])), 2), 3)
    assert summary["tally"] == {"failed": 3}
    assert all(r["status"] == "NewtonDivergence" for r in rows)


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "projmono", "group", "(1 2 3)"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["order"] == "3"
