import csv
import io
import json
import subprocess
import sys

import pytest

from qseries import __version__
from qseries.cli import CSV_HEADER, canonical_body, run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_thm13_json(capsys):
    code, out, _ = call(capsys, "verify", "thm13", "--order", "100", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "pass"
    assert doc["version"] == __version__
    assert doc["command"] == "verify thm13 --order 100 --format json"
    [rec] = doc["reports"]
    assert rec == {"id": "thm13", "params": {}, "order": 100, "status": "pass"}
    assert "timing" not in doc


def test_parameterized_verify(capsys):
    code, out, _ = call(capsys, "verify", "alladi", "--a", "-1", "--b", "1", "--n", "3",
                        "--order", "20", "--format", "json")
    assert code == 0
    assert json.loads(out)["reports"][0]["params"] == {"a": "-1", "b": "1", "n": "3"}
    code, out, _ = call(capsys, "verify", "qbinomial", "--a", "i*q2", "--z", "q^2/2", "--order", "15")
    assert code == 0 and out.startswith("PASS  qbinomial(a=i*q2,z=1/2*q^2)")


def test_timing_kept_out_of_body(capsys):
    _, plain, _ = call(capsys, "verify", "aftall", "--n", "2", "--format", "json")
    _, timed, _ = call(capsys, "verify", "aftall", "--n", "2", "--format", "json", "--timing")
    timed_doc = json.loads(timed)
    assert "aftall(n=2)" in timed_doc["timing"]
    body = canonical_body(timed_doc)
    plain_doc = json.loads(plain)
    assert body["reports"] == plain_doc["reports"] and body["status"] == plain_doc["status"]


def test_json_and_csv_agree(capsys):
    args = ["verify-all", "--order", "8"]
    _, js, _ = call(capsys, *args, "--format", "json")
    _, cs, _ = call(capsys, *args, "--format", "csv")
    records = json.loads(js)["reports"]
    rows = list(csv.DictReader(io.StringIO(cs)))
    assert list(rows[0]) == CSV_HEADER
    assert len(rows) == len(records)
    for rec, row in zip(records, rows):
        assert row["id"] == rec["id"]
        assert row["params"] == ";".join(f"{k}={v}" for k, v in rec["params"].items())
        assert int(row["order"]) == rec["order"]
        assert row["status"] == rec["status"]
        mm = rec.get("mismatch", {})
        assert row["mismatch_exp"] == str(mm.get("exp", ""))
        assert (row["lhs"], row["rhs"]) == (mm.get("lhs", ""), mm.get("rhs", ""))


def test_verify_all_is_deterministic(capsys):
    args = ["verify-all", "--order", "20", "--format", "json"]
    _, first, _ = call(capsys, *args)
    _, second, _ = call(capsys, *args)
    assert first == second
    assert json.loads(first)["status"] == "pass"


def test_mismatch_reported(capsys, monkeypatch):
    from qseries import identities

    lhs, rhs = identities.BUILDERS["aftall"]
    monkeypatch.setitem(identities.BUILDERS, "aftall",
                        (lhs, lambda order_q, n: rhs(order_q, n).shift(2)))
    code, out, _ = call(capsys, "verify", "aftall", "--n", "1", "--format", "json")
    assert code == 1
    doc = json.loads(out)
    assert doc["status"] == "fail"
    assert doc["reports"][0]["mismatch"] == {"exp": 0, "lhs": "1", "rhs": "0"}


def test_congruence(capsys):
    code, out, _ = call(capsys, "congruence", "--order", "40")
    assert code == 0
    assert out.splitlines()[0] == "PASS thm12 order=40"
    assert "= 4*q^2 - 8*q^3" in out
    code, out, _ = call(capsys, "congruence", "--order", "10", "--format", "json")
    assert json.loads(out)["reports"][0]["id"] == "thm12"


def test_table(capsys):
    code, out, _ = call(capsys, "table", "pbar-omega", "--max-n", "3")
    assert code == 0
    rows = [tuple(map(int, line.split())) for line in out.splitlines()]
    assert rows == [(1, 1), (2, 2), (3, 4)]
    code, out, _ = call(capsys, "table", "pbar-omega", "--max-n", "10", "--crosscheck",
                        "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "pass"
    assert [r["count"] for r in doc["rows"]] == [1, 2, 4, 5, 10, 12, 20, 26, 41, 46]
    assert all(r["match"] for r in doc["rows"])


def test_expand(capsys):
    code, out, _ = call(capsys, "expand", "1/(1+q)", "--order", "2")
    assert (code, out) == (0, "1 - q + q^2\n")


@pytest.mark.parametrize("argv, code", [
    (["expand", "1/0"], 3),
    (["expand", "qpoch(q; q^2"], 2),
    (["verify", "nosuch"], 2),
    (["verify", "alladi", "--a", "1"], 2),
    (["verify", "aftall", "--n", "-1"], 2),
    (["verify", "qbinomial", "--a", "0", "--z", "1"], 2),
    (["verify", "thm13", "--order", "-1"], 2),
    (["table", "other"], 2),
    (["bogus"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, out, err = call(capsys, *argv)
    assert got == code
    assert err.strip()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qseries", "expand", "q2^2", "--order", "1"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "q\n"
