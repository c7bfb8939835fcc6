import json
import subprocess
import sys

import pytest

from mvpolytopes.cli import EXIT_MATH, EXIT_OK, EXIT_USAGE, EXIT_VIOLATIONS, main


def run(capsys, *argv):
    rc = main(list(argv))
    return rc, capsys.readouterr().out


def write(tmp_path, obj, name="in.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


A2_DATUM = {"cartan": {"kind": "A", "rank": 2}, "word": [1, 2, 1], "n": [1, 2, 1]}


def test_convert_changes_word(capsys, tmp_path):
    rc, out = run(capsys, "convert", write(tmp_path, A2_DATUM), "--target", "2,1,2")
    assert rc == EXIT_OK
    assert json.loads(out) == {"word": [2, 1, 2], "n": [2, 1, 2]}


def test_convert_round_trip_through_bz(capsys, tmp_path):
    rc, out = run(capsys, "convert", write(tmp_path, A2_DATUM), "--target", "bz")
    assert rc == EXIT_OK
    bz = json.loads(out)
    rc, out = run(capsys, "convert", write(tmp_path, bz, "bz.json"), "--target", "1,2,1")
    assert rc == EXIT_OK
    assert json.loads(out)["n"] == [1, 2, 1]


def test_convert_a2_transition(capsys, tmp_path):
    datum = {"cartan": {"kind": "A", "rank": 2}, "word": [1, 2, 1], "n": [2, 1, 3]}  # min-formula: (n2 + n3 - m, m, n1 + n2 - m), m = min(n1, n3)
    rc, out = run(capsys, "convert", write(tmp_path, datum), "--target", "2,1,2")
    assert json.loads(out)["n"] == [2, 2, 1]


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "convert", write(tmp_path, "{not json"), "--target", "bz")[0] == EXIT_USAGE
    g2 = {"cartan": {"kind": "G", "rank": 2}, "word": [1, 2], "n": [0, 0]}
    assert run(capsys, "convert", write(tmp_path, g2), "--target", "bz")[0] == EXIT_USAGE
    neg = dict(A2_DATUM, n=[1, -1, 0])
    assert run(capsys, "convert", write(tmp_path, neg), "--target", "bz")[0] == EXIT_MATH
    bad_word = dict(A2_DATUM, word=[1, 1, 2])
    assert run(capsys, "convert", write(tmp_path, bad_word), "--target", "bz")[0] == EXIT_MATH
    assert run(capsys, "verify", "zeros", "--kind", "A2", "--w", "1,5")[0] == EXIT_USAGE
    assert run(capsys, "verify", "nonsense", "--kind", "A2")[0] == EXIT_USAGE
    assert run(capsys, "verify", "zeros")[0] == EXIT_USAGE
    assert EXIT_VIOLATIONS == 1


def test_polygon_hexagon(capsys, tmp_path):
    rc, out = run(capsys, "polygon", write(tmp_path, A2_DATUM))
    assert rc == EXIT_OK
    rows = json.loads(out)["rows"]
    assert [r["coroot"] for r in rows] == [[0, 0], [1, 0], [3, 2], [3, 3], [1, 3], [0, 2]]
    assert [r["labels"] for r in rows] == [["e"], ["1"], ["1,2"], ["1,2,1"], ["2,1"], ["2"]]
    assert (rows[3]["x"], rows[3]["y"]) == ("3/2", "3/2*sqrt(3)")


def test_polygon_point(capsys, tmp_path):
    datum = {"cartan": {"kind": "B", "rank": 2}, "word": [1, 2, 1, 2], "n": [0, 0, 0, 0]}
    rc, out = run(capsys, "polygon", write(tmp_path, datum))
    rows = json.loads(out)["rows"]
    assert len(rows) == 1 and len(rows[0]["labels"]) == 8


def test_polygon_merges_coincident_vertices(capsys, tmp_path):
    # n supported on the last two letters of 2,1,2,1 lies in P_{212}, so mu_{12} = mu_{121}
    datum = {"cartan": {"kind": "B", "rank": 2}, "word": [2, 1, 2, 1], "n": [1, 0, 0, 0]}
    rc, out = run(capsys, "polygon", write(tmp_path, datum))
    rows = json.loads(out)["rows"]
    merged = [r["labels"] for r in rows if len(r["labels"]) > 1]
    assert any("1,2" in ls and "1,2,1" in ls for ls in merged)


def test_polygon_rejects_rank_three(capsys, tmp_path):
    datum = {"cartan": {"kind": "A", "rank": 3}, "word": [1, 2, 1, 3, 2, 1], "n": [0] * 6}
    assert run(capsys, "polygon", write(tmp_path, datum))[0] == EXIT_USAGE


@pytest.mark.parametrize("check", ["theorem-a", "zeros", "diagonals", "crystal-axioms", "saito", "fan", "theorem-b"])
def test_verify_checks_pass(capsys, check):
    rc, out = run(capsys, "verify", check, "--kind", "A2", "--bound", "1")
    report = json.loads(out)
    assert rc == EXIT_OK and report["passed"] and report["violations"] == []
    assert report["instances"] > 0


def test_verify_zeros_lists_forced_positions(capsys):
    rc, out = run(capsys, "verify", "zeros", "--kind", "A3", "--w", "1,2,3", "--bound", "0", "--format", "tsv")
    assert rc == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0].split("\t")[:1] == ["lusztig"]
    zeros = {tuple(r.split("\t")[3:5]) for r in lines[1:]}
    assert ("1,2,3,1,2,1", "4,5,6") in zeros
    assert ("2,1,3,2,1,3", "2,4,5") in zeros


def test_scan_is_labelled_empirical(capsys):
    rc, out = run(capsys, "scan", "conjecture", "--kind", "A2", "--bound", "1")
    report = json.loads(out)
    assert rc == EXIT_OK and "empirical" in report["evidence"] and report["counterexamples"] == []


def test_sampling_is_deterministic(capsys, tmp_path):
    argv = ["verify", "diagonals", "--kind", "B2", "--samples", "5", "--seed", "7"]
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b
    out = tmp_path / "o.json"
    assert main(argv + ["--out", str(out)]) == EXIT_OK
    assert out.read_text() == a


def test_module_entry_point(tmp_path):
    p = write(tmp_path, A2_DATUM)
    res = subprocess.run([sys.executable, "-m", "mvpolytopes", "convert", p, "--target", "vertices"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert len(json.loads(res.stdout)["vertices"]) == 6
