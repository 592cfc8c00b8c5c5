import io
import json

import pytest

from manypoints.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_count_curve():
    code, out, _ = call("count", "--field", "2^3", "--curve", "y^2 - y = x^5", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["genus"] == 2 and data["counts"] == [9]
    assert data["command"] == "count" and data["seed"] == 0


def test_count_fibre_product():
    code, out, _ = call("count", "--field", "2^3", "--function", "x^3", "--function", "t*x^5", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 9 - data["trace_frobenius"]


def test_zeta_and_genus():
    code, out, _ = call("zeta", "--field", "4", "--curve", "y^2 + y = x^3", "--extensions", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["zeta_numerator"] == [1, 4, 4] and data["zeta_check"]
    code, out, _ = call("genus", "--field", "3^2", "--curve", "y^3 - y = x^4")
    assert code == 0 and "genus: 3" in out


def test_construct_and_replay(tmp_path):
    rec = tmp_path / "rec.json"
    code, out, _ = call("construct", "--method", "I", "--field", "2^5", "--r", "3", "--record", str(rec))
    assert code == 0 and "257" in out and "VERIFIED" in out
    code, out, _ = call("verify", "--record", str(rec), "--format", "json")
    assert code == 0 and json.loads(out)["results"][0]["verified"]["count"] == 257
    data = json.loads(rec.read_text())
    data["claimed"]["count"] = 258
    rec.write_text(json.dumps(data))
    code, out, _ = call("verify", "--record", str(rec))
    assert code == 1 and "FAILED" in out


def test_deterministic_output():
    argv = ["ghw", "--field", "2^4", "--code", "melas", "--r", "2", "--strategy", "randomized",
            "--samples", "300", "--seed", "4", "--format", "json"]
    assert call(*argv)[1] == call(*argv)[1]


def test_bounds_command():
    code, out, _ = call("bounds", "--q", "16", "--g", "4", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["combined"] == 48 and data["shaved"]
    code, out, _ = call("bounds", "--q", "2", "--g", "39", "--search", "10", "--format", "json")
    assert json.loads(out)["explicit_search"]["bound"] == 33
    code, out, _ = call("bounds", "--q", "4", "--g", "2", "--explicit", "1/2")
    assert code == 0 and "13" in out


@pytest.mark.parametrize("fmt", ["csv", "markdown", "json"])
def test_table_command(fmt):
    code, out, _ = call("table", "--provenance", "TableP3", "--q", "27", "--format", fmt)
    assert code == 0 and "64" in out


def test_ghw_exhaustive():
    code, out, _ = call("ghw", "--field", "2^3", "--h", "1", "--punctured", "--format", "json")
    assert code == 0 and [w["weight"] for w in json.loads(out)["weights"]] == [2, 3, 4, 5, 6, 7]


def test_verify_suite():
    code, out, _ = call("verify", "--suite", "paper", "--format", "json")
    assert code == 0 and json.loads(out)["ok"]


@pytest.mark.parametrize("argv", [
    [],
    ["count", "--field", "2^3"],
    ["count", "--field", "6", "--curve", "y^2 - y = x^3"],
    ["count", "--field", "2^3", "--curve", "y^3 - y = x"],
    ["bounds", "--q", "6", "--g", "1"],
    ["bounds", "--q", "4", "--g", "1", "--explicit", "-1"],
    ["construct", "--method", "I", "--field", "2^4", "--r", "5"],
    ["table", "--format", "xml"],
    ["verify"],
])
def test_usage_errors_exit_2(argv):
    code, _, err = call(*argv)
    assert code == 2 and err
