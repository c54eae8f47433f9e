from __future__ import annotations

import json

import pytest

from asymcol.cli import run


@pytest.fixture
def files(tmp_path):
    (tmp_path / "g6.txt").write_text("degree 6\n1 2 3 4 5 0\n")
    (tmp_path / "triv.txt").write_text("degree 3\n")
    (tmp_path / "s4.txt").write_text("degree 4\n1 0 2 3\n1 2 3 0\n")
    (tmp_path / "c4.txt").write_text("4 4\n0 1\n1 2\n2 3\n3 0\n")
    (tmp_path / "bad.txt").write_text("2 1\n0 0\n")
    return tmp_path


def test_motion(files, capsys):
    assert run(["motion", "--group", str(files / "g6.txt")]) == 0
    assert capsys.readouterr().out.strip() == "6"
    assert run(["motion", "--group", str(files / "triv.txt"), "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"motion": None, "order": 1}


def test_distinguish(files, capsys):
    assert run(["distinguish", "--graph", str(files / "c4.txt")]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert run(["distinguish", "--group", str(files / "s4.txt"), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["distinguishing_number"] == 4


def test_aut(files, capsys):
    assert run(["aut", "--graph", str(files / "c4.txt"), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["order"] == 8 and out["orbits"] == [[0, 1, 2, 3]]


def test_colour_group(files, capsys):
    assert run(["colour-group", "--group", str(files / "s4.txt"), "--k", "3"]) == 1
    assert "NoneExists" in capsys.readouterr().err
    assert run(["colour-group", "--group", str(files / "g6.txt"), "--random", "--seed", "2", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["seed"] == 2 and set(out["provenance"]) == {"random"}


def test_exit_codes(files, capsys):
    assert run(["distinguish", "--graph", str(files / "bad.txt")]) == 3
    assert run(["motion", "--group", str(files / "missing.txt")]) == 3
    assert run(["motion", "--group", str(files / "s4.txt"), "--cap", "5"]) == 2
    assert run(["motion", "--group", str(files / "s4.txt"), "--cap", "0"]) == 3
    assert run(["infinite", "colour", "--family", "path", "--radius", "-1"]) == 3
    assert run(["infinite", "colour", "--family", "cube", "--radius", "4"]) == 3
    assert run(["infinite", "colour", "--family", "path", "--radius", "3"]) == 2
    assert run(["nonsense"]) == 3
    capsys.readouterr()


def test_infinite_colour_and_verify(files, capsys):
    out = files / "c.json"
    assert run(["infinite", "colour", "--family", "path", "--radius", "20", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert {"family", "radius", "margin", "vertex_names", "colours", "provenance", "plan"} <= set(doc)
    assert run(["infinite", "verify", "--family", "path", "--radius", "20", "--colouring", str(out)]) == 0
    assert capsys.readouterr().out.strip().endswith("asymmetric")


def test_infinite_verify_rejects_tampering(files, capsys):
    out = files / "c.json"
    assert run(["infinite", "colour", "--family", "grid:2", "--radius", "7", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    doc["colours"] = [0] * len(doc["colours"])
    out.write_text(json.dumps(doc))
    assert run(["infinite", "verify", "--colouring", str(out)]) == 1
    assert run(["infinite", "verify", "--colouring", str(out), "--radius", "8"]) == 1
    doc["colours"] = doc["colours"][:-1]
    out.write_text(json.dumps(doc))
    assert run(["infinite", "verify", "--colouring", str(out)]) == 3
    capsys.readouterr()


def test_custom_base_set(capsys):
    code = run(["infinite", "colour", "--family", "path", "--radius", "20", "--x0", "0", "1", "--json"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["x0"] == [0, 1]
