import json
from pathlib import Path

import pytest

from bjortho import suite
from bjortho.cli import main, parse_vector, UsageError

SPECS = Path(__file__).resolve().parent.parent / "demos" / "specs"


def run(capsys, *argv):
    code = main([*argv, "--quiet"] if argv and argv[0] != "--help" else list(argv))
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line.strip()]


def test_bj_commands(capsys):
    code, recs = run(capsys, "bj", "--spec", str(SPECS / "linf2.json"), "--x", "1,0.5", "--y", "0,1")
    assert code == 0 and recs[0]["orthogonal"] and recs[0]["witness"] == ["1", "0"]
    assert recs[0]["seed"] == 0 and recs[0]["tolerances"]["ortho"] == 1e-8
    code, recs = run(capsys, "bj", "--spec", str(SPECS / "l2_3.json"), "--x", "1,2,3", "--y", "3,0,-1")
    assert code == 0 and recs[0]["orthogonal"]
    code, _ = run(capsys, "bj", "--spec", str(SPECS / "linf2.json"), "--x", "1,1/2", "--y", "1,1")
    assert code == 1


def test_bj_errors(capsys):
    assert run(capsys, "bj", "--spec", str(SPECS / "l2_3.json"), "--x", "0,0,0", "--y", "1,0,0")[0] == 2
    assert run(capsys, "bj", "--spec", str(SPECS / "l2_3.json"), "--x", "1/2,0,0", "--y", "1,0,0")[0] == 2
    assert run(capsys, "bj", "--spec", str(SPECS / "l2_3.json"), "--x", "1,0", "--y", "1,0,0")[0] == 2
    assert run(capsys, "bj", "--spec", str(SPECS / "l2_3.json"), "--x", "a,b,c", "--y", "1,0,0")[0] == 2
    assert run(capsys, "bj", "--spec", "missing.json", "--x", "1", "--y", "1")[0] == 2
    assert run(capsys, "bj", "--spec", str(SPECS / "l2_3.json"), "--x", "1,0,0", "--y", "1,0,0",
               "--tol", "nope=1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_parse_vector():
    assert parse_vector("1, 1/2, 0.25", exact=True) == (1, 0.5, 0.25)
    with pytest.raises(UsageError):
        parse_vector("1/3", exact=False)


def test_tolerance_override_echoed(capsys):
    code, recs = run(capsys, "bj", "--spec", str(SPECS / "l2_3.json"), "--x", "1,0,0", "--y", "1e-9,1,0",
                     "--tol", "ortho=1e-6")
    assert code == 0 and recs[0]["tolerances"]["ortho"] == 1e-6
    code, _ = run(capsys, "bj", "--spec", str(SPECS / "l2_3.json"), "--x", "1,0,0", "--y", "1e-6,1,0")
    assert code == 1


def test_graph_queries(capsys, tmp_path):
    code, recs = run(capsys, "recognize", "--spec", str(SPECS / "linf3.json"))
    assert code == 0
    assert {k: recs[0][k] for k in ("is_sup_norm", "count", "dim")} == {"is_sup_norm": True, "count": 3, "dim": 3}
    code, recs = run(capsys, "dim", "--spec", str(SPECS / "l1_4.json"))
    assert code == 0 and recs[0]["dim"] == 4 and recs[0]["conventions_agree"]
    code, recs = run(capsys, "faces", "--spec", str(SPECS / "hexagonal.json"))
    assert recs[0]["count"] == 3
    code, recs = run(capsys, "smooth", "--spec", str(SPECS / "hexagonal.json"))
    assert recs[0]["smooth"] == 3
    dot = tmp_path / "g.dot"
    code, recs = run(capsys, "graph", "--spec", str(SPECS / "linf2.json"), "--gamma0", "--dot", str(dot))
    assert code == 0 and recs[0]["loops"] == [4]
    assert "zero -> zero;" in dot.read_text()
    assert run(capsys, "faces", "--spec", str(SPECS / "l2_3.json"))[0] == 2


def test_radon_and_day(capsys, tmp_path):
    code, recs = run(capsys, "radon", "--spec", str(SPECS / "absolute_radon.json"), "--samples", "200")
    assert code == 0 and recs[0]["symmetric"] and recs[1]["verdict"]
    code, recs = run(capsys, "radon", "--spec", str(SPECS / "l4_2.json"), "--samples", "200")
    assert not recs[0]["symmetric"] and len(recs) == 1
    csv_path = tmp_path / "day.csv"
    code, recs = run(capsys, "day", "--spec", str(SPECS / "linf2.json"), "--csv", str(csv_path))
    assert code == 0 and recs[0]["convex"] and csv_path.read_text().startswith("theta,x,y")


def test_reports_are_deterministic(tmp_path):
    paths = [tmp_path / "a.jsonl", tmp_path / "b.jsonl"]
    for p in paths:
        assert main(["graph", "--spec", str(SPECS / "l2_3.json"), "--samples", "60", "--seed", "4",
                     "--out", str(p), "--quiet"]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_suite_aggregation(capsys, monkeypatch):
    monkeypatch.setitem(suite.CRITERIA, 98, lambda seed=0: suite._record(98, "always", True))
    monkeypatch.setitem(suite.CRITERIA, 99, lambda seed=0: suite._record(99, "never", False))
    code, recs = run(capsys, "suite", "--criterion", "98")
    assert code == 0 and recs[-1]["passed"]
    code, recs = run(capsys, "suite", "--criterion", "98", "--criterion", "99")
    assert code == 1 and recs[-1]["failures"] == [99]
    assert "seconds" not in recs[0]


def test_parallel_suite_matches_serial(capsys):
    _, serial = run(capsys, "suite", "--criterion", "5", "--criterion", "7", "--seed", "3")
    _, parallel = run(capsys, "suite", "--criterion", "5", "--criterion", "7", "--seed", "3", "--jobs", "2")
    assert serial == parallel


def test_item_seeds_depend_on_name_only():
    assert suite.item_seed(0, "a") == suite.item_seed(0, "a")
    assert suite.item_seed(0, "a") != suite.item_seed(0, "b")
    assert suite.item_seed(0, "a") != suite.item_seed(1, "a")
