import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from golden_series.cli import run
from golden_series.oracle import derived_ref
from golden_series.series import evaluate

from published import TABLE1, TABLE2


def test_compute_terms_plain():
    code, out = run(["compute", "--n", "2", "--series", "alpha", "--terms", "2", "--format", "plain"])
    assert code == 0
    value, note = out.splitlines()
    assert value == "1.6875"
    exp = int(note.rsplit("1e", 1)[1])
    actual = abs(Fraction(value) - derived_ref("alpha", 2, 80).value.to_fraction())
    assert actual <= Fraction(10) ** exp


def test_compute_digits_table_value():
    code, out = run(["compute", "--n", "3", "--series", "alpha", "--digits", "20"])
    assert code == 0
    assert out.splitlines()[0].startswith("1.83928675521416113255")


def test_compute_domain_error():
    code, _ = run(["compute", "--n", "1", "--series", "beta", "--terms", "5"])
    assert code == 3


@pytest.mark.parametrize("argv", [
    ["compute", "--n", "2", "--series", "alpha"],
    ["compute", "--n", "2", "--series", "alpha", "--terms", "3", "--digits", "4"],
    ["compute", "--n", "2", "--series", "delta", "--terms", "3"],
    ["compute", "--n", "2", "--series", "alpha", "--terms", "0"],
    ["oracle", "--n", "2", "--digits", "0"],
    ["verify", "--n-max", "1"],
    ["table", "--which", "3"],
    ["table", "--which", "2", "--rows", "2-100"],
    [],
])
def test_usage_errors(argv):
    assert run(argv)[0] == 2


def test_oracle_examples():
    code, out = run(["oracle", "--n", "5", "--digits", "20", "--target", "alpha"])
    assert code == 0 and out.splitlines()[0] == "1.96594823664548533719"
    code, out = run(["oracle", "--n", "2", "--digits", "10", "--target", "gap"])
    assert code == 0 and out.splitlines()[0] == "2.6180339887"


def test_json_schema_and_round_trip():
    code, out = run(["compute", "--n", "2", "--series", "beta", "--terms", "40", "--format", "json"])
    assert code == 0
    rec = json.loads(out)
    assert set(rec) == {"n", "series", "terms", "digits_requested", "value",
                        "error_bound_exponent", "elapsed_ms"}
    assert rec["series"] == "beta" and rec["terms"] == 40 and rec["digits_requested"] is None
    internal = evaluate(2, "beta", 40).to_fraction()
    assert abs(Fraction(rec["value"]) - internal) < Fraction(10) ** rec["error_bound_exponent"]


def test_plain_and_json_agree():
    for argv in (["compute", "--n", "4", "--series", "gap", "--digits", "25"],
                 ["compute", "--n", "4", "--series", "alpha", "--terms", "17"],
                 ["oracle", "--n", "7", "--digits", "30", "--target", "beta"]):
        _, plain = run(argv)
        _, js = run(argv + ["--format", "json"])
        assert plain.splitlines()[0] == json.loads(js)["value"]


def test_digits_mode_prints_requested_places():
    _, js = run(["compute", "--n", "6", "--series", "beta", "--digits", "40", "--format", "json"])
    rec = json.loads(js)
    assert len(rec["value"].split(".")[1]) >= -rec["error_bound_exponent"]
    assert rec["error_bound_exponent"] == -40
    ref = derived_ref("beta", 6, 200).value.to_fraction()
    assert abs(Fraction(rec["value"]) - ref) <= Fraction(1, 2 * 10**40)


def test_oracle_json_series_field():
    _, js = run(["oracle", "--n", "3", "--digits", "5", "--format", "json"])
    rec = json.loads(js)
    assert rec["series"] == "oracle" and rec["terms"] is None and rec["value"] == "1.83929"


def test_table1():
    code, out = run(["table", "--which", "1"])
    assert code == 0
    rows = dict(line.split() for line in out.splitlines()[1:])
    assert rows["4"] == "1.92756197548292530426"
    assert {int(k): v for k, v in rows.items()} == TABLE1


def test_table2_single_row_csv():
    code, out = run(["table", "--which", "2", "--rows", "2:100", "--format", "csv"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "k", "predicted", "actual_alpha", "actual_beta", "actual_gap"]
    assert rows[1] == ["2", "100", "7", "10", "10", "9"]


def test_table2_json():
    code, out = run(["table", "--which", "2", "--rows", "10:10,100:10", "--format", "json"])
    assert code == 0
    rows = json.loads(out)
    assert [(r["n"], r["k"], r["predicted"]) for r in rows] == [(10, 10, 18), (100, 10, 279)]
    assert rows[1]["actual_gap"] == TABLE2[(100, 10)][3]


def test_verify_passes():
    code, out = run(["verify", "--n-max", "10", "--k-max", "50", "--bits", "256"])
    assert code == 0
    assert "FAIL" not in out
    assert len(out.splitlines()) == 5


def test_verify_reports_failure(monkeypatch):
    import golden_series.checks as checks
    monkeypatch.setattr(checks, "residual_slack", lambda n: -1000)
    code, out = run(["verify", "--n-max", "3", "--k-max", "5", "--bits", "64"])
    assert code == 1
    assert "first counterexample" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "golden_series", "oracle", "--n", "2", "--digits", "5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "1.61803"
