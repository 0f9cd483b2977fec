import json
from pathlib import Path

import pytest

from mukai.cli import main, parse_pattern, run
from mukai.serialize import InputError, class_from_json, dumps, encode, parse_h2, surface_from_json, surface_to_json
from mukai.cohomology import EvenClass, elliptic_product_model

DATA = Path(__file__).resolve().parents[1] / "data"


def report(argv):
    code, out = run(argv)
    return code, json.loads(out), out


def test_classify_example_file():
    code, rep, _ = report(["classify", "--v", str(DATA / "ex1.json")])
    assert code == 0
    assert rep["dim"] == "12" and rep["indecomposable"] is True
    assert rep["perp"]["gram"] == [["-2", "-1"], ["-1", "2"]]


def test_kummer_vector_report():
    code, rep, _ = report(["kummer-vector", "--r", "2", "--d", "1", "--n", "4", "--a", "1"])
    assert code == 0
    assert rep["case"] == "I-odd-a" and rep["xi_square"] == "-4" and rep["b"] == "-1" and rep["w_square"] == "0"
    assert all(rep["checks"].values())


def test_kummer_vector_hypothesis_violation():
    code, rep, _ = report(["kummer-vector", "--r", "2", "--d", "1", "--n", "4", "--a", "2"])
    assert code == 2 and "not 4" in rep["error"]


def test_oracle_integrals():
    code, rep, _ = report(["oracle-integrals", "--n", "3", "--pattern", "l^4", "--l", "f1+f2"])
    assert code == 0 and rep["oracle"] == rep["closed_form"] == "36" and rep["match"] is True
    code, rep, _ = report(["oracle-integrals", "--n", "3", "--pattern", "l^2 e^2", "--l", "f1+f2"])
    assert rep["oracle"] == "-36"
    code, rep, _ = report(["oracle-integrals", "--n", "3", "--pattern", "l^3", "--l", "f1+f2"])
    assert code == 2


def test_fm_and_fujiki():
    code, rep, _ = report(["fm", "--dir", "forward", "--x", '{"r":0,"c1":[0,0,0,0,0,0],"a":1}'])
    assert code == 0 and rep["image"] == {"r": "1", "c1": ["0"] * 6, "a": "0"}
    code, rep, _ = report(["fujiki-check", "--n", "4", "--l", "f1+f2", "--x", "f1-2d13"])
    assert code == 0 and rep["equal"] is True


def test_theta():
    doc = {"theta": {"t": {"r": 2, "r1": 1, "d": 1, "d1": 0, "n": 3}, "x": {"r": "1", "c1": ["0", "1", "0", "0", "0", "0"], "a": "0"}}}
    code, rep, _ = report(["theta", "--input", json.dumps(doc)])
    assert code == 0 and rep["y"] == ["-1", "-3", "1", "0"] and rep["q"] == "0" and rep["isometry"] is True


def test_input_errors_exit_two():
    code, rep, _ = report(["pair", "--x", '{"r":1,"c1":[0],"a":1}', "--y", '{"r":1,"c1":[0,0,0,0,0,0],"a":1}'])
    assert code == 2 and rep["location"] == "--x.c1"
    code, rep, _ = report(["pair", "--x", '{"r":1,', "--y", "{}"])
    assert code == 2 and "malformed JSON" in rep["error"]
    code, rep, _ = report(["perp", "--v", '{"r":1,"c1":{"zz":1},"a":0}'])
    assert code == 2 and "unknown label" in rep["error"]
    code, _, _ = report(["nope"])
    assert code == 2


def test_surface_option():
    code, rep, _ = report(["pair", "--surface", "ns:1", "--x", '{"r":2,"c1":[1],"a":-2}', "--y", '{"r":2,"c1":[1],"a":-2}'])
    assert code == 0 and rep["pair"] == "10"


def test_json_roundtrip_is_byte_identical():
    for argv in (["classify", "--v", str(DATA / "ex1.json")], ["selftest", "--samples", "10"]):
        code, rep, out = report(argv)
        assert code == 0
        assert json.dumps(rep, sort_keys=True, indent=2) == out


def test_selftest_deterministic():
    a = run(["selftest", "--seed", "5", "--samples", "20"])
    b = run(["selftest", "--seed", "5", "--samples", "20"])
    assert a == b and a[0] == 0


def test_text_format(capsys):
    assert main(["kummer-vector", "--r", "3", "--d", "2", "--n", "2", "--a", "2", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "case: II" in out and "w_square: 0" in out


def test_serialization_helpers():
    s = elliptic_product_model()
    assert surface_from_json(json.loads(json.dumps(surface_to_json(s)))) == s
    x = EvenClass(12345678901234567890, s.vector(f1=-3), 7)
    assert class_from_json(json.loads(dumps(x)), s=s) == x
    assert class_from_json({"r": 1, "c1": {"f2": 2}, "a": "0"}, s=s) == EvenClass(1, s.vector(f2=2), 0)
    with pytest.raises(InputError):
        class_from_json({"r": True, "c1": [], "a": 0})
    assert parse_h2("2f1 - 3d13 + f2", s) == s.vector(f1=2, d13=-3, f2=1)
    with pytest.raises(InputError):
        parse_h2("f1+", s)
    from fractions import Fraction

    assert encode(Fraction(-3, 4)) == "-3/4"
    assert parse_pattern("l^2 x e") == (2, 1, 1)
