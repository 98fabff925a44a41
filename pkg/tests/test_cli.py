import csv
import io
import json
import subprocess
import sys

import pytest

from toruskt.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_kgroups_counterexample_json():
    code, text = run("kgroups", "--anzai", "6", "--format", "json")
    doc = json.loads(text)
    assert code == 0
    assert doc["tool"] == "toruskt" and doc["command"] == "kgroups"
    assert doc["results"]["K1"] == {"rank": 13, "torsion": [2]}
    assert doc["results"]["blocks"][3]["coker"] == {"rank": 3, "torsion": [2]}
    assert "timings" not in doc


def test_kgroups_identity_shorthand():
    code, text = run("kgroups", "--general", "identity3", "--format", "json")
    res = json.loads(text)["results"]
    assert code == 0
    assert res["K0"] == res["K1"] == {"rank": 8, "torsion": []}


def test_kgroups_furstenberg_file(tmp_path):
    b = {"1,2": 2, "2,3": -1, "1,3": 4, "3,4": 1, "4,5": 3, "5,6": 1, "6,7": 2, "1,7": 5}
    path = write(tmp_path, "f.json", {"kind": "furstenberg", "b": b})
    code, text = run("kgroups", "--furstenberg", path, "--format", "json")
    assert code == 0
    assert json.loads(text)["results"]["K0"]["rank"] == 20


def test_kgroups_general_file(tmp_path):
    path = write(tmp_path, "m.json", {"rows": 2, "cols": 2, "data": [[2, 1], [1, 1]]})
    code, text = run("kgroups", "--general", path, "--format", "json")
    assert code == 0
    assert json.loads(text)["results"]["K0"] == {"rank": 2, "torsion": []}


def test_kgroups_ascending():
    code, text = run("kgroups", "--ascending", "1,1,1", "--format", "json")
    assert code == 0
    assert json.loads(text)["results"]["K0"]["rank"] == 6


def test_timings_are_opt_in():
    code, text = run("kgroups", "--anzai", "3", "--format", "json", "--timings")
    assert code == 0
    assert len(json.loads(text)["timings"]) == 4


def test_input_errors_exit_1(tmp_path):
    assert run("kgroups", "--ascending", "2,3")[0] == 1
    assert run("kgroups", "--general", str(tmp_path / "missing.json"))[0] == 1
    bad = write(tmp_path, "bad.json", {"rows": 2, "cols": 2, "data": [[2, 0], [0, 1]]})
    code, text = run("kgroups", "--general", bad, "--format", "json")
    assert code == 1
    assert json.loads(text)["error"]["kind"] == "input"
    assert run("table", "--max-n", "0")[0] == 1
    assert run("rank", "--n", "0")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["kgroups"], out=io.StringIO())
    assert exc.value.code == 1


def test_budget_exit_2():
    code, text = run("kgroups", "--anzai", "9", "--budget", "10", "--format", "json")
    assert code == 2
    assert json.loads(text)["results"]["error"] == "budget exceeded"


def test_table_budget_keeps_rows():
    code, text = run("table", "--max-n", "7", "--budget", "30", "--format", "json")
    rows = json.loads(text)["results"]
    assert code == 2
    assert [r["n"] for r in rows] == list(range(1, 8))
    assert "error" in rows[-1] and "error" not in rows[0]


def test_table_single_row():
    code, text = run("table", "--max-n", "1", "--format", "json")
    rows = json.loads(text)["results"]
    assert code == 0
    assert rows == [{"n": 1, "K0": {"rank": 2, "torsion": []}, "K1": {"rank": 2, "torsion": []},
                     "rank": 2, "matches_golden": True}]


def test_table_csv_columns():
    code, text = run("table", "--max-n", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert code == 0
    assert rows[0] == ["n", "K0", "K1", "rank", "golden"]
    assert [r[0] for r in rows[1:]] == ["1", "2", "3"]


def test_table_markdown():
    code, text = run("table", "--max-n", "2")
    assert code == 0
    assert "| 2 | Z^3 | Z^3 | 3 | yes |" in text


def test_rank_all_agree():
    code, text = run("rank", "--n", "9", "--format", "json")
    res = json.loads(text)["results"]
    assert code == 0
    assert res["values"] == {"snf": 52, "partition": 52, "genfun": 52} and res["agree"]


def test_rank_genfun_40():
    code, text = run("rank", "--n", "40", "--method", "genfun", "--format", "json")
    res = json.loads(text)["results"]
    assert res["values"]["genfun"] == 11880066632
    assert res["asymptotic_ratio"].startswith("2.733436")


def test_rank_one():
    code, text = run("rank", "--n", "1", "--format", "csv")
    assert code == 0
    assert "snf,2" in text


def test_classify(tmp_path):
    half = {"rat": "1/2"}
    th = {"rat": "0", "irr": "1"}
    s = write(tmp_path, "s.json", {"n": 5, "i": 2, "lambda": half, "mu": [{"rat": "1/3"}, th]})
    t = write(tmp_path, "t.json", {"n": 5, "i": 2, "lambda": half, "mu": [{"rat": "2/3"}, {"irr": "-1"}]})
    u = write(tmp_path, "u.json", {"n": 6, "i": 2, "lambda": half, "mu": [{"rat": "1/3"}, th]})
    code, text = run("classify", s, s, "--format", "json")
    assert code == 0 and json.loads(text)["results"]["isomorphic"]
    code, text = run("classify", s, t, "--format", "json")
    assert json.loads(text)["results"]["isomorphic"]
    code, text = run("classify", s, u, "--format", "json")
    res = json.loads(text)["results"]
    assert not res["isomorphic"]
    assert res["first"]["rank"] != res["second"]["rank"]
    assert res["first"]["C"] == 12


def test_classify_invalid(tmp_path):
    bad = write(tmp_path, "bad.json", {"n": 3, "i": 1, "lambda": {"rat": "1/2"}, "mu": [{"rat": "1/3"}]})
    assert run("classify", bad, bad)[0] == 1


@pytest.mark.parametrize("suite", ["identities", "duality", "oracle"])
def test_verify_suites(suite):
    code, text = run("verify", "--suite", suite, "--format", "json")
    checks = json.loads(text)["results"]
    assert code == 0
    assert checks and all(c["passed"] for c in checks)


def test_verify_failure_exit_3(monkeypatch):
    from toruskt import cli
    from toruskt.verify import Check

    monkeypatch.setattr(cli, "run_suite", lambda name, seed: [Check("broken", False, 1, ["x"], seed)])
    assert run("verify", "--suite", "oracle")[0] == 3


def test_output_is_byte_stable():
    for fmt in ("json", "csv"):
        a = run("kgroups", "--anzai", "8", "--format", fmt)[1]
        b = run("kgroups", "--anzai", "8", "--format", fmt)[1]
        assert a == b
    a = run("verify", "--suite", "duality", "--seed", "7", "--format", "json")[1]
    b = run("verify", "--suite", "duality", "--seed", "7", "--format", "json")[1]
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "toruskt", "rank", "--n", "5", "--format", "csv"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "partition,8" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "toruskt", "nonsense"], capture_output=True, text=True)
    assert proc.returncode == 1
