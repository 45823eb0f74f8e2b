import json
import os
import subprocess
import sys

import pytest

from srbkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_roots_text(capsys):
    code, out, _ = run(capsys, "roots", "--family", "A", "--rank", "2")
    assert code == 0
    assert "|Phi+| = 3" in out


def test_roots_unsupported(capsys):
    code, _, err = run(capsys, "roots", "--family", "E", "--rank", "6")
    assert code == 2 and "unsupported" in err


def test_roots_json_schema(capsys):
    code, out, _ = run(capsys, "roots", "--family", "G", "--rank", "2", "--json")
    data = json.loads(out)
    assert code == 0
    assert set(data) == {"family", "rank", "positiveRoots", "gramDual", "cartan", "coxeterNumber",
                         "exponents", "simpleReflections"}
    assert data["coxeterNumber"] == 6 and len(data["positiveRoots"]) == 6


def test_srb_a2(capsys):
    code, out, _ = run(capsys, "srb", "--family", "A", "--rank", "2", "-k", "1", "--json")
    data = json.loads(out)
    assert code == 0
    assert [d["degree"] for d in data["plus"]] == [3, 3]
    assert [d["degree"] for d in data["minus"]] == [3, 3]


def test_srb_a1_text(capsys):
    code, out, _ = run(capsys, "srb", "--family", "A", "--rank", "1", "-k", "1")
    assert code == 0
    phi_plus = out.split("phi-_1")[0]
    assert "x1*(x1 - z)" in phi_plus


def test_srb_b2_k2(capsys):
    code, out, _ = run(capsys, "srb", "--family", "B", "--rank", "2", "-k", "2", "--json")
    assert code == 0
    assert {d["degree"] for d in json.loads(out)["plus"]} == {8}


def test_large_k_needs_flag(capsys):
    code, _, err = run(capsys, "srb", "--family", "A", "--rank", "1", "-k", "3")
    assert code == 2
    code, _, err = run(capsys, "srb", "--family", "A", "--rank", "1", "-k", "0")
    assert code == 2


def test_verify_all(capsys):
    code, out, err = run(capsys, "verify", "--family", "A", "--rank", "2", "-k", "1", "--suite", "all")
    assert code == 0
    assert "FAIL" not in out
    assert err  # progress lines


def test_verify_simplefree_g2(capsys):
    code, out, _ = run(capsys, "verify", "--family", "G", "--rank", "2", "-k", "1",
                       "--suite", "simplefree", "--json")
    assert code == 0
    (rep,) = json.loads(out)
    statuses = [r["witness"]["verdict"]["status"] for r in rep["records"]]
    # two simple roots, four non-simple, each in the added and deleted variant
    assert statuses.count("Free") == 4 and statuses.count("NotFree") == 8


def test_verify_bogus_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--family", "A", "--rank", "2", "--suite", "bogus"])
    assert exc.value.code == 2


def test_verify_corrupted_input(tmp_path, capsys):
    code, out, _ = run(capsys, "srb", "--family", "A", "--rank", "2", "--json")
    data = json.loads(out)
    data["plus"][0], data["plus"][1] = data["plus"][1], data["plus"][0]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "verify", "--family", "A", "--rank", "2", "--suite", "characterization",
                       "--input", str(path))
    assert code == 3
    assert "first failing check" in err


def test_verify_roundtrip(tmp_path, capsys):
    path = tmp_path / "a2.json"
    assert main(["srb", "--family", "A", "--rank", "2", "--json", "--out", str(path)]) == 0
    capsys.readouterr()
    _, direct, _ = run(capsys, "verify", "--family", "A", "--rank", "2", "--suite", "all", "--json")
    _, loaded, _ = run(capsys, "verify", "--family", "A", "--rank", "2", "--suite", "all", "--json",
                       "--input", str(path))
    assert direct == loaded


@pytest.mark.parametrize("edit,status,exp0", [
    (["--add-root", "1,1"], "NotFree", None),
    (["--delete-root", "1,0"], "Free", [2, 3]),
    ([], "Free", [3, 3]),
    (["--gamma", "1,2", "--sign", "+"], "Free", [4, 4]),
])
def test_freeness(capsys, edit, status, exp0):
    code, out, _ = run(capsys, "freeness", "--family", "A", "--rank", "2", "-k", "1", *edit)
    data = json.loads(out)
    assert code == 0 and data["status"] == status
    if exp0:
        assert data["exp0"] == exp0


def test_freeness_validation(capsys):
    assert run(capsys, "freeness", "--family", "A", "--rank", "2", "--add-root", "2,1")[0] == 2
    assert run(capsys, "freeness", "--family", "A", "--rank", "2", "--add-root", "1")[0] == 2
    assert run(capsys, "freeness", "--family", "A", "--rank", "2", "--exponents", "1,3,4")[0] == 2


def test_arr(capsys):
    code, out, _ = run(capsys, "arr", "--family", "A", "--rank", "2", "--kind", "bplus", "--gamma", "1,2", "--json")
    assert code == 0 and len(json.loads(out)["forms"]) == 9
    code, out, _ = run(capsys, "arr", "--family", "A", "--rank", "1", "--kind", "catalan", "--json")
    assert [h["level"] for h in json.loads(out)["hyperplanes"]] == [-1, 0, 1]
    code, out, _ = run(capsys, "arr", "--family", "A", "--rank", "2", "--kind", "ziegler", "--json")
    assert json.loads(out)["multiplicity"] == [2, 2, 2]


def test_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "srbkit", "srb", "--family", "B", "--rank", "2", "--json"]
    outs = set()
    for seed in ("0", "1", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        outs.add(subprocess.run(cmd, capture_output=True, env=env, check=True).stdout)
    assert len(outs) == 1
