import json
import random
import subprocess
import sys

import pytest

from conftest import random_exact_cubic
from hessecubics.cli import main
from hessecubics.normal_forms import NORMAL_FORMS
from hessecubics.parsing import parse_cubic
from hessecubics.poly import format_cubic
from hessecubics.scalar import W


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_classify_triangle(capsys):
    code, out, _ = run(capsys, "classify", "x0*x1*x2")
    assert code == 0 and out.splitlines()[0] == "triangle"


def test_classify_json(capsys):
    code, r = run_json(capsys, "classify", "x1^2*x2 - x0^3")
    assert code == 0
    assert r["type"] == "cuspidal" and r["table_row"] == "h8"
    assert r["singular_locus"]["points"] == ["(0 : 0 : 1)"]
    assert r["orbit_dim"] == 8 and not r["reducible"]


def test_group_order(capsys):
    code, out, _ = run(capsys, "group", "order")
    assert code == 0 and out.strip() == "216"


def test_flexes_of_fermat(capsys):
    code, r = run_json(capsys, "flexes", "x0^3+x1^3+x2^3")
    assert code == 0 and r["count"] == 9
    assert sorted(p["matches"] for p in r["points"]) == sorted(f"t({i},{j})" for i in range(3) for j in range(3))
    assert all(p["residual_f"] < 1e-8 and p["residual_h"] < 1e-8 for p in r["points"])


def test_flexes_of_reducible(capsys):
    code, r = run_json(capsys, "flexes", "x0*x1*x2")
    assert code == 0 and r["dim"] == 1 and r["points"] == []


def test_hessian_anchor(capsys):
    code, r = run_json(capsys, "hessian", "(x0^2 - x1*x2)*x1")
    assert r["hessian"] == "-8*x1^3"
    assert r["anchors"] == ["table2:h7:hessian"]


def test_orbit_dim(capsys):
    code, out, _ = run(capsys, "orbit-dim", "x0^2*x1")
    assert code == 0 and out.strip() == "5"


def test_hesse_verify(capsys):
    code, r = run_json(capsys, "hesse", "verify", "--dump-incidence")
    assert code == 0 and r["passed"]
    assert len(r["incidence"]["table"]) == 12
    assert all(sum(row) == 3 for row in r["incidence"]["table"])


def test_group_queries(capsys):
    code, r = run_json(capsys, "group", "stabilizer", "1", "2")
    assert r["order"] == 24 and r["sl2f3"] and r["theta_matches_affine_stabilizer"]
    code, r = run_json(capsys, "group", "theta")
    assert r["bijective_onto_saff"]
    assert r["generators"][2]["theta"] == "[[1,0],[0,1]] + (0,2)"
    code, r = run_json(capsys, "group", "realize", "[[1,0],[0,2]] + (0,0)")
    assert code == 0 and not r["realizable"]
    code, r = run_json(capsys, "group", "realize", "[[1,0],[1,1]] + (0,0)")
    assert r["realizable"] and r["matrix"] is not None
    code, r = run_json(capsys, "group", "h12", "--count", "5")
    assert code == 0 and r["passed"]


def test_normalize(capsys):
    code, r = run_json(capsys, "normalize", "x0^3 + 2*x1^3 + 3*x2^3 - x0*x1*x2")
    assert code == 0 and r["residual"] < 1e-6


def test_exit_codes(capsys):
    assert run(capsys, "classify", "x0^2")[0] == 2
    assert run(capsys, "classify", "x0^3 +")[0] == 2
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys, "group", "stabilizer", "1")[0] == 1
    assert run(capsys, "classify", "x0^3", "--format", "xml")[0] == 1
    assert run(capsys, "normalize", "x0*x1*x2")[0] == 3
    assert run(capsys, "group", "realize", "nonsense")[0] == 2


def test_every_subcommand_has_json(capsys):
    for argv in (
        ["classify", "x0^3"], ["hessian", "x0^3"], ["orbit-dim", "x0^3"], ["flexes", "x1^2*x2 - x0^3"],
        ["group", "order"], ["normalize", "x0^3+x1^3+x2^3"],
    ):
        code, out, _ = run(capsys, *argv, "--format", "json")
        assert code == 0
        json.loads(out)


def test_print_parse_roundtrip_normal_forms():
    for nf in NORMAL_FORMS.values():
        for mu in (1, 2, W) if nf.has_mu else (1,):
            f = nf.form(mu)
            assert parse_cubic(format_cubic(f)).vector() == f.vector()


def test_print_parse_roundtrip_random():
    rng = random.Random(21)
    for _ in range(100):
        f = random_exact_cubic(rng)
        assert parse_cubic(format_cubic(f)).vector() == f.vector()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hessecubics", "group", "order"], capture_output=True, text=True, timeout=60
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "216"
