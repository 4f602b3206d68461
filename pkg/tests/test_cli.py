"""End-to-end command line checks through subprocess."""

import json
import subprocess
import sys


def run_cli(*argv):
    return subprocess.run(
        [sys.executable, "-m", "qcycle.cli"] + list(argv),
        capture_output=True, text=True,
    )


def test_tower_and_link_check_pipeline(tmp_path):
    tower_path = tmp_path / "tower.json"
    r = run_cli("tower", "--name", "identity", "--nmax", "6", "--out", str(tower_path))
    assert r.returncode == 0, r.stderr
    obj = json.loads(tower_path.read_text())
    assert obj["weight"] == 0
    comps = {item["n"]: item["elem"] for item in obj["components"]}

    low = tmp_path / "low.json"
    high = tmp_path / "high.json"
    low.write_text(json.dumps(comps[2]))
    high.write_text(json.dumps(comps[4]))
    r = run_cli("link-check", "--low", str(low), "--high", str(high))
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["linked"] is True

    # mismatched pair must fail with exit code 1
    r = run_cli("link-check", "--low", str(high).replace("high", "high"),
                "--high", str(high))
    assert r.returncode == 3  # shape mismatch


def test_act_and_minimal_check(tmp_path):
    tower_path = tmp_path / "tower.json"
    run_cli("tower", "--name", "identity", "--nmax", "4", "--out", str(tower_path))
    obj = json.loads(tower_path.read_text())
    comp2 = [item for item in obj["components"] if item["n"] == 2][0]["elem"]
    elem = tmp_path / "elem.json"
    elem.write_text(json.dumps(comp2))

    r = run_cli("act", "--family", "xminus", "--k", "1", "--in", str(elem))
    assert r.returncode == 0, r.stderr
    out = json.loads(r.stdout)
    assert out["n"] == 2 and out["l"] == 2

    r = run_cli("minimal-check", "--in", str(elem))
    assert r.returncode == 0
    report = json.loads(r.stdout)
    assert report["weakly_minimal"] is True
    assert report["minimal"] is False
    r = run_cli("minimal-check", "--in", str(elem), "--require", "minimal")
    assert r.returncode == 1


def test_tower_act_word(tmp_path):
    tower_path = tmp_path / "tower.json"
    run_cli("tower", "--name", "identity", "--nmax", "6", "--out", str(tower_path))
    r = run_cli("tower-act", "--word", "x+1", "--in", str(tower_path))
    assert r.returncode == 0, r.stderr
    out = json.loads(r.stdout)
    assert out["weight"] == 2


def test_orbit_and_measured_char(tmp_path):
    dims_path = tmp_path / "dims.json"
    r = run_cli("orbit", "--N", "1", "--deg", "3", "--out", str(dims_path))
    assert r.returncode == 0, r.stderr
    dims = json.loads(dims_path.read_text())
    assert {"deg0": 0, "weight": 1, "dim": 1} in dims["dims"]

    r = run_cli("char", "--measured", str(dims_path), "--N", "1")
    assert r.returncode == 0
    table = json.loads(r.stdout)["table"]
    assert ["1/4", 1, "1"] in [list(row) for row in table]


def test_char_identities():
    r = run_cli("char", "--verify", "sum-identity", "--L2", "2")
    assert r.returncode == 0, r.stderr
    r = run_cli("char", "--verify", "product", "--L2", "1", "--i", "1")
    assert r.returncode == 0, r.stderr
    r = run_cli("char", "--formula", "chi0", "--qmax", "3")
    assert r.returncode == 0


def test_act_series_output(tmp_path):
    elem = tmp_path / "elem.json"
    elem.write_text(json.dumps({
        "n": 1, "l": 1,
        "terms": [{"subset": [0], "coeff": {
            "vars": [], "laurent": [], "terms": [{"exps": [], "coeff": "1"}]}}],
    }))
    r = run_cli("act", "--family", "xplus", "--series", "--order", "2",
                "--in", str(elem))
    assert r.returncode == 0, r.stderr
    out = json.loads(r.stdout)
    assert out["family"] == "xplus"
    powers = [row["t_power"] for row in out["coefficients"]]
    assert powers == sorted(powers) and 0 in powers and 2 in powers


def test_accept_rejects_unknown_suite():
    r = run_cli("accept", "--suite", "bogus")
    assert r.returncode == 2


def test_oracle_verb():
    r = run_cli("oracle", "--family", "xminus", "--n", "2", "--l", "0",
                "--samples", "2", "--order", "2", "--seed", "5")
    assert r.returncode == 0, r.stderr
    rep = json.loads(r.stdout)
    assert rep["passed"] and rep["scalar"] == "1"


def test_null_and_mod_null(tmp_path):
    r = run_cli("null", "--n", "2", "--l", "1")
    assert r.returncode == 0
    gens = json.loads(r.stdout)["generators"]
    assert len(gens) == 1

    gen = tmp_path / "g.json"
    gen.write_text(json.dumps(gens[0]))
    zero = tmp_path / "zero.json"
    zero.write_text(json.dumps({"n": 2, "l": 1, "terms": []}))
    r = run_cli("mod-null", "--in", str(gen), "--target", str(zero))
    assert r.returncode == 0
    assert json.loads(r.stdout)["equal_mod_null"] is True


def test_malformed_input_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    r = run_cli("act", "--family", "xminus", "--k", "1", "--in", str(bad))
    assert r.returncode == 2


def test_determinism_of_tower_output(tmp_path):
    a = run_cli("tower", "--name", "jminus", "--nmax", "6")
    b = run_cli("tower", "--name", "jminus", "--nmax", "6")
    assert a.stdout == b.stdout and a.returncode == 0
