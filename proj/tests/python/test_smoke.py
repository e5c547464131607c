import json
from fractions import Fraction
from pathlib import Path

import pytest

import ellsurf

DATA = Path(__file__).resolve().parents[2] / "data"


def load(name):
    return json.loads((DATA / name).read_text())


@pytest.fixture(scope="module")
def classic():
    return load("classic_curve.json")


def test_analyze_classic(classic):
    report = ellsurf.analyze(classic)
    assert report["minimal"]
    assert report["chi"] == 2
    assert report["fibers"]["euler_number"] == 24
    assert [f["type"] for f in report["fibers"]["fibers"]] == ["I4", "I4", "I2", "I4"]


def test_heights(classic):
    q1, q2 = load("classic_Q1.json"), load("classic_Q2.json")
    assert ellsurf.height(classic, q1) == 2
    assert ellsurf.height(classic, q2) == 4
    assert ellsurf.pairing(classic, q1, q2) == 0
    g = ellsurf.gram(classic, [load("classic_P1.json"), load("classic_P2.json")])
    assert g["det"] == "1/2"


def test_json_text_is_accepted(classic):
    assert ellsurf.height(json.dumps(classic), (DATA / "classic_Q1.json").read_text()) == Fraction(2)


def test_torsion(classic):
    assert ellsurf.torsion(classic)["structure"] == [2, 4]
    assert ellsurf.torsion(load("congruent5_curve.json"), over_q=True)["structure"] == [2, 2]


def test_family_certificates():
    q = ellsurf.family({"h1": [1], "h2": [0, 1]}, certify="qbar")
    assert q["status"] == "PASS" and q["rank"] == 2 and q["torsion"] == [2, 4]
    s = ellsurf.family(load("classic_triple.json"), certify="qt")
    assert s["status"] == "PASS" and s["rank"] == 1


def test_descent():
    d = ellsurf.descent(load("classic_triple.json"), [load("classic_P1.json"), load("classic_P2.json")])
    assert d["independent"]


def test_quadric_workflow():
    p = ellsurf.quadric(1, 1, 2, (1, 1, 1))
    assert p["h"] == ["1", "0", "1"]
    s = ellsurf.specialize(load("rank3_family.json"), 2)
    assert s["triple"] == ["36", "-32", "28"]
    r = ellsurf.rank3(Fraction(1))
    assert r["triple"] == ["2848/81", "-256/9", "2336/81"]
    assert r["certificate"]["claim"] == "rank >= 3 (finite exceptions)"


def test_errors_carry_kind():
    with pytest.raises(ellsurf.EllsurfError) as e:
        ellsurf.rank3(0)
    assert e.value.kind == "degenerate-member"
    with pytest.raises(ellsurf.EllsurfError) as e:
        ellsurf.analyze({"a": [0, 0, 0]})
    assert e.value.kind == "malformed-input"
    with pytest.raises(ValueError):
        ellsurf.quadric(0, 1, 2, (1, 1, 1))


def test_verify_single_criteria():
    results = ellsurf.verify([1, 3, 9])
    assert [r["status"] for r in results] == ["PASS", "PASS", "PASS"]
