import json
from importlib import resources

import jsonschema
import pytest

from pinlab import tables
from pinlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def schema(name):
    return json.loads(resources.files("pinlab").joinpath("schemas", f"{name}.schema.json").read_text("utf-8"))


def test_cover_named(capsys):
    code, out, _ = run(capsys, "cover", "--sig", "1,3", "--named")
    assert code == 0
    assert "Lambda_P1 = +-g0 g1 g2   square -1" in out
    assert "Lambda_P3 = +-g0   square 1" in out
    assert "Lambda_T = +-g1 g2 g3   square 1" in out


def test_cover_named_hat(capsys):
    code, out, _ = run(capsys, "cover", "--sig", "3,1")
    assert code == 0 and "Lambda_P3 = +-gh4   square -1" in out


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--m", "3", "--n", "1")
    assert code == 0 and out.strip() == "R(4)"


def test_klein_pin31(capsys):
    code, out, _ = run(capsys, "klein", "--pin", "31", "--a", "1", "--b", "1", "--x3", "0.3")
    assert code == 0
    rows = [l.split(",") for l in out.strip().splitlines()[1:]]
    assert [r[0] for r in rows if r[3] == "nonzero"] == ["G5"]


def test_klein_json_validates(capsys):
    code, out, _ = run(capsys, "--json", "klein", "--pin", "13")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, schema("current_table"))
    assert data["pattern"] == ["G0G1"]


def test_klein_out_file(capsys, tmp_path):
    target = tmp_path / "k.csv"
    code, out, _ = run(capsys, "klein", "--pin", "13", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("bilinear,re,im,verdict")


def test_construct_json_validates(capsys):
    for argv in (["construct", "--sig", "1,3"], ["construct", "--rep", "Majorana31"],
                 ["construct", "--sig", "2,2"], ["construct", "--sig", "1,1", "--extend", "AddSpace"]):
        code, out, _ = run(capsys, "--json", *argv)
        assert code == 0
        jsonschema.validate(json.loads(out), schema("gamma_rep"))


def test_cover_class_json_validates(capsys):
    for sig in ("1,3", "3,1"):
        for parity in ("P1", "P3"):
            code, out, _ = run(capsys, "--json", "cover", "--sig", sig, "--parity", parity)
            assert code == 0
            jsonschema.validate(json.loads(out), schema("cover_class"))
    code, out, _ = run(capsys, "--json", "cover", "--table")
    for row in json.loads(out)["double_covers"]:
        jsonschema.validate(row, schema("cover_class"))


def test_cover_solve(capsys):
    code, out, _ = run(capsys, "cover", "--solve", "1", "-1", "-1", "-1")
    assert code == 0 and out.strip() == "+g0, -g0"


def test_conj(capsys):
    code, out, _ = run(capsys, "conj", "--sig", "1,3", "--what", "C")
    assert code == 0 and "+-g2" in out and "CC* = 1" in out
    code, out, _ = run(capsys, "conj", "--sig", "3,1", "--what", "majorana")
    assert "Compatible" in out


def test_conj_odd(capsys):
    code, out, _ = run(capsys, "--json", "conj", "--sig", "1,2")
    data = json.loads(out)
    assert code == 0 and data["H+"]["exists"] and not data["H-"]["exists"]


def test_trace(capsys):
    code, out, _ = run(capsys, "trace", "--sig", "3,1", "4", "4")
    assert code == 0 and out.strip() == "tr(gh4 gh4) = -4"
    code, out, _ = run(capsys, "--json", "trace", "--sig", "1,3", "1", "1")
    assert json.loads(out)["trace"] == "-4/1+0/1*i"


def test_spinsum(capsys):
    code, out, _ = run(capsys, "--json", "spinsum", "--sig", "3,1", "--p", "3/4", "0", "0", "--which", "V")
    data = json.loads(out)
    assert code == 0 and data["matches_expected"] and data["normalized"]


def test_sigma(capsys):
    code, out, _ = run(capsys, "--json", "sigma", "--points", "2", "--hypothesis", "Minus")
    assert code == 0
    assert [p["ratio"] for p in json.loads(out)["points"]] == ["1/1+0/1*i"] * 2


def test_phases(capsys, tmp_path):
    code, out, _ = run(capsys, "phases", "pion", "--eta-n=-i")
    assert code == 0 and "eta_pi = -1" in out
    code, out, _ = run(capsys, "phases", "positronium", "--l", "0", "--s", "0")
    assert "2 photons" in out
    doc = tmp_path / "ledger.json"
    doc.write_text(json.dumps({"ledger": {"eta_a": "1", "eta_b": "1", "lam": "i"}, "flags": ["majorana"]}))
    code, out, _ = run(capsys, "phases", "ledger", "--file", str(doc))
    assert code == 0 and out.startswith("inconsistent")


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "P3^2", "--sig", "3,1")
    assert code == 0 and out.splitlines()[0] == "-1"


def test_tables(capsys, tmp_path):
    code, out, _ = run(capsys, "tables", "--out", str(tmp_path))
    assert code == 0
    for name in tables.TABLES:
        assert (tmp_path / f"{name}.txt").read_text("utf-8") == tables.render(name)


@pytest.mark.parametrize("argv", [
    ["classify", "--m", "x", "--n", "1"],
    ["frobnicate"],
    ["eval", "g0 +"],
    ["eval", "g7"],
    ["cover", "--sig", "13"],
    ["tables", "nope"],
    ["phases", "ledger"],
    ["spinsum", "--p", "1", "0", "0"],
    ["--config", "/nonexistent.ini", "classify", "--m", "1", "--n", "1"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_computation_error_exits_1(capsys):
    code, _, err = run(capsys, "eval", "(1 + g0)^-1")
    assert code == 1 and "computation failed" in err


def test_config_and_environment(capsys, tmp_path, monkeypatch):
    ini = tmp_path / "pinlab.ini"
    ini.write_text("[pinlab]\nsignature = 3,1\nklein_pin = 31\n")
    code, out, _ = run(capsys, "--config", str(ini), "eval", "P3^2")
    assert out.splitlines()[0] == "-1"
    monkeypatch.setenv("PINLAB_SIGNATURE", "1,3")
    code, out, _ = run(capsys, "--config", str(ini), "eval", "P3^2")
    assert out.splitlines()[0] == "+1"
    code, out, _ = run(capsys, "--config", str(ini), "--json", "klein")
    assert json.loads(out)["pattern"] == ["G5"]
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("PINLAB_SIGNATURE")
    code, out, _ = run(capsys, "eval", "P3^2")
    assert out.splitlines()[0] == "-1"
