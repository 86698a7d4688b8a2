import json

import pytest

from k3fm.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_discform_table(capsys):
    assert run(capsys, "discform", "--lattice", "<6>")[:2] == (0, "Z/6, q(g)=1/6\n")
    assert run(capsys, "discform", "--lattice", "U")[1] == "trivial\n"
    assert run(capsys, "discform", "--lattice", "U+E8")[1] == "trivial\n"
    out = run(capsys, "discform", "--lattice", "U(2)")[1]
    assert out == "Z/2 x Z/2, q(g1)=0, q(g2)=0, b(g1,g2)=1/2\n"


def test_discform_json_and_gram(capsys, tmp_path):
    f = tmp_path / "a2.json"
    f.write_text(json.dumps({"gram": [[2, -1], [-1, 2]]}))
    code, out, _ = run(capsys, "discform", "--gram", str(f), "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["invariant_factors"] == [3] and obj["q"] == ["2/3"]


def test_isotropic(capsys):
    code, out, _ = run(capsys, "isotropic", "--lattice", "<8>", "--d", "2", "--format", "json")
    obj = json.loads(out)
    assert [e["x"] for e in obj["elements"]] == [[4]]
    assert obj["elements"][0]["norm"] == "2"
    assert json.loads(run(capsys, "isotropic", "--lattice", "<8>", "--d", "3",
                          "--format", "json")[1])["elements"] == []
    out = run(capsys, "isotropic", "--lattice", "<8>", "--d", "1")[1]
    assert out.startswith("x=(0,)")


@pytest.mark.parametrize("lat,d,total", [("<12>", 1, 2), ("U+<-8>", 2, 1), ("U(2)", 3, 0),
                                         ("U(2)", 2, 2)])
def test_count_fm(capsys, lat, d, total):
    code, out, _ = run(capsys, "count-fm", "--lattice", lat, "--d", str(d), "--format", "json")
    assert code == 0 and json.loads(out)["total"] == total


def test_count_fm_hodge_file(capsys, tmp_path):
    f = tmp_path / "h.json"
    f.write_text(json.dumps({"generators": [[[17]]]}))
    code, out, err = run(capsys, "count-fm", "--lattice", "U+<-18>", "--d", "3",
                         "--hodge", str(f), "--format", "json")
    assert code == 0 and json.loads(out)["total"] == 1 and err == ""
    code, out, err = run(capsys, "count-fm", "--lattice", "<12>", "--d", "1", "--hodge", "trivial")
    assert code == 0 and "warning" in err and "warning" not in out


def test_picard1(capsys):
    code, out, _ = run(capsys, "picard1", "--n", "6", "--d", "1", "--list-partners",
                       "--format", "json")
    obj = json.loads(out)
    assert obj["count"] == 2 and len(obj["partners"]) == 2
    obj = json.loads(run(capsys, "picard1", "--n", "9", "--d", "3", "--format", "json")[1])
    assert obj["count"] == 1
    obj = json.loads(run(capsys, "picard1", "--n", "5", "--d", "2", "--format", "json")[1])
    assert obj == {"n": 5, "d": 2, "count": 0, "reason": "d^2 does not divide n"}


def test_picard1_batch(capsys):
    out = run(capsys, "picard1", "--n", "1..12", "--format", "json")[1]
    recs = [json.loads(line) for line in out.splitlines()]
    assert [(r["n"], r["d"]) for r in recs][:5] == [(1, 1), (2, 1), (3, 1), (4, 1), (4, 2)]
    assert len(recs) == 12 + 4  # extra (4,2), (8,2), (9,3), (12,2)


def test_exit_codes(capsys):
    code, _, err = run(capsys, "discform", "--lattice", "U+")
    assert code == 2 and "position 2" in err
    code, _, err = run(capsys, "count-fm", "--lattice", "<-4>", "--d", "1", "--format", "json")
    assert code == 1 and json.loads(err)["error"] == "BadSignature"
    code, _, err = run(capsys, "discform", "--lattice", "U", "--gram", "x.json")
    assert code == 2


def test_deterministic(capsys):
    a = run(capsys, "count-fm", "--lattice", "<72>", "--d", "3", "--format", "json")
    b = run(capsys, "count-fm", "--lattice", "<72>", "--d", "3", "--format", "json")
    assert a == b


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "1..12")
    assert code == 0
    assert out.count("PASS") == 5 and "FAIL" not in out
