"""Smoke tests for the ellsurf command-line tool.

Usage: python3 cli_smoke.py <path-to-ellsurf> <data-dir>
"""

import json
import subprocess
import sys
from pathlib import Path

EXE = sys.argv[1]
DATA = Path(sys.argv[2])
failures = []


def run(*args):
    p = subprocess.run([EXE, *map(str, args)], capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def check(name, cond, info=""):
    if not cond:
        failures.append(f"{name}: {info}")


def ok_json(*args):
    code, out, err = run(*args)
    check(" ".join(map(str, args)), code == 0, err)
    return json.loads(out) if code == 0 else {}


def error_of(expected_code, *args):
    code, out, err = run(*args)
    check(" ".join(map(str, args)), code == expected_code, f"exit {code}, stderr {err!r}")
    try:
        return json.loads(err)["error"]
    except (ValueError, KeyError):
        failures.append(f"{args}: stderr is not error JSON: {err!r}")
        return None


curve = DATA / "classic_curve.json"

a = ok_json("analyze", curve)
check("analyze minimal", a.get("minimal") is True)
check("analyze chi", a.get("chi") == 2)
types = [(f["type"], f["count"], f["place"]["type"]) for f in a.get("fibers", {}).get("fibers", [])]
check("analyze fibers", types == [("I4", 1, "finite"), ("I4", 2, "finite"), ("I2", 4, "finite"), ("I4", 1, "infinity")], types)

check("height Q1", ok_json("height", curve, DATA / "classic_Q1.json") == {"height": "2"})
check("height Q2", ok_json("height", curve, DATA / "classic_Q2.json") == {"height": "4"})
check("pair", ok_json("pair", curve, DATA / "classic_Q1.json", DATA / "classic_Q2.json") == {"pairing": "0"})
g = ok_json("gram", curve, DATA / "classic_P1.json", DATA / "classic_P2.json")
check("gram", g.get("matrix") == [["1/2", "0"], ["0", "1"]] and g.get("det") == "1/2", g)

check("torsion", ok_json("torsion", curve).get("structure") == [2, 4])
check("torsion over Q", ok_json("torsion", DATA / "congruent5_curve.json", "--over-q").get("structure") == [2, 2])

q = ok_json("family", "--h1", "[1]", "--h2", "[0,1]", "--certify-qbar")
check("certify-qbar", q.get("status") == "PASS" and q.get("rank") == 2 and q.get("torsion") == [2, 4], q.get("status"))
s = ok_json("family", "--f", "[-1,0,1]", "--g", "[0,2]", "--hh", "[1,0,1]", "--certify-qt")
check("certify-qt", s.get("status") == "PASS" and s.get("rank") == 1 and s.get("torsion") == [2, 2])

d = ok_json("descent", DATA / "classic_triple.json", DATA / "classic_P1.json", DATA / "classic_P2.json")
check("descent", d.get("independent") is True and len(d.get("images", [])) == 2)

p = ok_json("quadric", "--alpha", "1", "--beta", "1", "--gamma", "2", "--point", "1,1,1")
check("quadric", p.get("f") == ["1", "-2", "-1"] and p.get("h") == ["1", "0", "1"], p)
sp = ok_json("specialize", DATA / "rank3_family.json", "--t0", "2")
check("specialize", sp.get("triple") == ["36", "-32", "28"])
r = ok_json("rank3", "--t0", "1")
check("rank3", r.get("witness") == "11264/81" and r["certificate"]["claim"] == "rank >= 3 (finite exceptions)")

# identical inputs give identical bytes
check("deterministic", run("analyze", curve)[1] == run("analyze", curve)[1])
code, out, _ = run("--format", "table", "gram", curve, DATA / "classic_P1.json", DATA / "classic_P2.json")
check("table format", code == 0 and "det" in out and "1/2" in out, out)

check("point not on curve", error_of(1, "height", DATA / "congruent5_curve.json", DATA / "classic_P2.json") == "off-curve")
check("point file is not a point", error_of(2, "height", curve, curve) == "malformed-input")
check("singular member", error_of(1, "rank3", "--t0", "0") == "degenerate-member")
check("degenerate conic", error_of(1, "quadric", "--alpha", "0", "--beta", "1", "--gamma", "2", "--point", "1,1,1") == "degenerate-conic")
check("not on quadric", error_of(1, "quadric", "--alpha", "1", "--beta", "1", "--gamma", "2", "--point", "1,2,1") == "point-not-on-quadric")
code, out, err = run("family", "--h1", "[0,0,1]", "--h2", "[1]", "--certify-qbar")
check("failed certificate", code == 1 and json.loads(out)["status"] == "FAIL" and json.loads(err)["error"] == "certificate-failed", err)
check("bad rational", error_of(2, "rank3", "--t0", "x") == "malformed-input")
check("unknown flag", error_of(2, "analyze", curve, "--colour") == "malformed-input")
check("missing file", error_of(2, "analyze", DATA / "missing.json") == "malformed-input")
check("bad poly", error_of(2, "family", "--h1", "[1,", "--h2", "[1]") == "malformed-input")
check("mixed family flags", error_of(2, "family", "--h1", "[1]", "--f", "[1]") == "malformed-input")

if failures:
    print("\n".join(failures))
    sys.exit(1)
print("cli smoke tests passed")
