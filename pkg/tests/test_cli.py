import json

import pytest

from tricat.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dim_example(capsys):
    code, out, _ = run(capsys, "dim", "--model", "derived_A2", "--kind", "resdim",
                       "--class", "ucosusp(add(gen[S2, P1]))", "--obj", "S1")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["value"] == 1
    assert len(doc["result"]["certificate"]["triangles"]) == 1
    assert doc["model"]["name"] == "derived-A2"


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "eval", "--model", "semisimple", "--class", "star(gen[s]")
    assert code == 2
    assert "grammar" in err


def test_usage_error(capsys):
    code, _, err = run(capsys, "dim", "--model", "semisimple", "--kind", "nonsense")
    assert code == 2
    assert "usage" in err


def test_missing_model_file(capsys, tmp_path):
    code, _, _ = run(capsys, "validate", "--model", str(tmp_path / "none.json"))
    assert code == 2


def test_member_text(capsys):
    code, out, _ = run(capsys, "member", "--model", "semisimple", "--class", "add(gen[s])",
                       "--obj", "s+s", "--format", "text")
    assert code == 0
    assert "member: true" in out


def test_gen_round_trips_bundled(capsys, tmp_path, semisimple):
    path = tmp_path / "s.json"
    assert main(["gen", "--family", "semisimple", "--n", "1", "--out", str(path)]) == 0
    assert path.read_text() == semisimple.dumps()
    code, out, _ = run(capsys, "validate", "--model", str(path))
    assert code == 0 and json.loads(out)["result"]["ok"]


def test_category_dim(capsys):
    code, out, _ = run(capsys, "dim", "--model", "semisimple", "--kind", "category")
    assert code == 0
    assert json.loads(out)["result"]["value"] == 0


def test_verify_and_report(capsys, tmp_path):
    path = tmp_path / "rep.json"
    argv = ["verify", "--model", "semisimple", "--suite", "T01,T03", "--samples", "5"]
    assert main(argv + ["--out", str(path)]) == 0
    first = path.read_bytes()
    assert main(argv + ["--out", str(path)]) == 0
    assert path.read_bytes() == first
    code, out, _ = run(capsys, "report", "--in", str(path), "--format", "text")
    assert code == 0
    assert out.splitlines()[1].startswith("T01")


def test_verify_unknown_entry(capsys):
    code, _, err = run(capsys, "verify", "--model", "semisimple", "--suite", "T77")
    assert code == 2
    assert "T77" in err


def test_pairs(capsys):
    code, out, _ = run(capsys, "pairs", "--model", "semisimple")
    assert code == 0
    assert any(p["X"] == "all" and p["omega"] == "all" for p in json.loads(out)["result"])


def test_projective_resolution_of_simple(capsys):
    # 0 -> P2 -> P1 -> S1 -> 0 with P2 = S2
    code, out, _ = run(capsys, "dim", "--model", "derived_A2", "--kind", "resdim",
                       "--class", "add(gen[P1, S2])", "--obj", "S1")
    res = json.loads(out)["result"]
    assert code == 0 and res["value"] == 1
    assert res["certificate"]["triangles"] == [["S1@-1", "S2@0", "P1@0"]]
