import io
import json
import subprocess
import sys

import pytest

from leq.cli import RECORD_KEYS, run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines() if line]


def test_classify_concave_extangential():
    code, text = call("classify", "0", "0", "12", "5", "10", "5", "6", "8")
    assert code == 0
    (rec,) = records(text)
    assert list(rec) == list(RECORD_KEYS)
    assert rec["Sigma"] == 18 and rec["T"] == 50
    assert rec["class"] == "concave-extangential"
    assert rec["excenter"] == ["45/4", "35/4"]
    assert rec["lambda"] == "25/16"
    assert rec["sigma"] is None


def test_classify_normalizes_on_ingest():
    from leq.geometry import POINT_GROUP, LatticeQuad

    base = LatticeQuad((0, 0), (12, 5), (10, 5), (6, 8))
    _, plain = call("classify", *map(str, (0, 0, 12, 5, 10, 5, 6, 8)))
    for g in POINT_GROUP:
        for k in range(4):
            moved = base.transformed(g).rotated_labels(k).translated(-7, 3)
            _, text = call("classify", *(str(v) for p in moved.vertices for v in p))
            assert text == plain


def test_round_trip_is_stable():
    _, text = call("enumerate", "--perimeter-max", "60", "--class", "any")
    for rec in records(text):
        flat = [str(v) for p in rec["vertices"] for v in p]
        _, again = call("classify", *flat, "--provenance", rec["provenance"])
        assert records(again)[0] == rec


def test_output_is_deterministic():
    a = call("enumerate", "--perimeter-max", "50")[1]
    b = call("enumerate", "--perimeter-max", "50", "--workers", "2")[1]
    assert a == b


def test_enumerate_filters():
    _, text = call("enumerate", "--perimeter-max", "30", "--class", "extangential", "--concave", "--no-kites")
    (rec,) = records(text)
    assert rec["sides"] == [13, 2, 5, 10]
    assert rec["vertices"] == [[0, 0], [12, 5], [10, 5], [6, 8]]


def test_rationals_are_reduced_strings():
    _, text = call("enumerate", "--perimeter-max", "84", "--class", "tangential")
    for rec in records(text):
        for key in ("sigma", "tau", "lambda"):
            v = rec[key]
            if v is not None:
                p, q = v.split("/")
                assert int(q) > 0
        for x in rec["incenter"]:
            p, q = map(int, x.split("/"))
            assert q > 0


def test_construct():
    code, text = call("construct", "--case", "I", "--x", "5", "--u", "-50", "--v", "75", "--c", "10")
    assert code == 0
    (rec,) = records(text)
    assert sorted(rec["sides"]) == sorted([125, 5, 10, 130])
    assert {rec["sigma"], rec["tau"]} == {"5/4", "5/1"}


def test_construct_condition_failure():
    code, _ = call("construct", "--case", "I", "--x", "3", "--u", "-2", "--v", "11", "--c", "2")
    assert code == 1


def test_construct_invalid_solution():
    code, _ = call("construct", "--case", "I", "--x", "3", "--u", "2", "--v", "8", "--c", "4")
    assert code == 2


def test_family():
    code, text = call("family", "Extan4550", "--count", "2")
    assert code == 0
    recs = records(text)
    assert [r["Sigma"] for r in recs] == [45, 45]
    assert recs[0]["provenance"] == "Family:Extan4550#1"


def test_realize():
    code, text = call("realize", "5", "3", "4", "6")
    assert code == 0
    assert any(r["sides"] == [5, 3, 4, 6] for r in records(text))


def test_verify_corollaries():
    code, text = call("verify-corollaries")
    assert code == 0
    assert text.count("PASS") == 4
    assert "6 convex tangential" in text
    assert "13, 2, 5, 10" in text


def test_open_problem():
    code, text = call("open-problem", "--upto", "4", "--trial-bound", "100000000")
    assert code == 0
    recs = [json.loads(x) for x in text.splitlines()]
    assert recs[1]["screen"] == {"verdict": "BadFactor", "prime": "23"}
    assert recs[4]["wei"] == "NoSolutionByQuarticProduct"
    assert recs[0]["mollin"] == "NoSolutionByOddPeriod"
    assert all(r["excluded"] for r in recs)


def test_open_problem_env_bound(monkeypatch):
    monkeypatch.setenv("LEQ_TRIAL_BOUND", "1000")
    _, text = call("open-problem", "--upto", "4")
    assert json.loads(text.splitlines()[4])["screen"]["verdict"] == "Unknown"


def test_verify_giant():
    code, text = call("verify-giant")
    assert code == 0
    rep = json.loads(text)
    assert rep["ok"] and rep["Sigma"] == 68445 and rep["T"] == 68450


def test_pell():
    code, text = call("pell", "--d", "74", "--n", "-1", "--count", "2")
    assert code == 0
    assert text == "43 5\n318157 36985\n"


def test_pell_unsolvable():
    code, _ = call("pell", "--d", "3", "--n", "-1", "--count", "2")
    assert code == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["classify", "1", "2"],
        ["classify", "0", "0", "4", "0", "0", "4", "4", "4"],
        ["enumerate", "--perimeter-max", "500"],
        ["family", "K9"],
        ["realize", "0", "1", "1", "1"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv, io.StringIO()) == 2


def test_svg(tmp_path):
    path = tmp_path / "fig.svg"
    code, _ = call("enumerate", "--perimeter-max", "30", "--svg", str(path))
    assert code == 0
    body = path.read_text()
    assert body.startswith("<svg") and body.count("<polygon") >= 4


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "leq", "pell", "--d", "3", "--n", "1", "--count", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "2 1\n7 4\n"
