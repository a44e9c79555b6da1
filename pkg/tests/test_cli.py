import json
import subprocess
import sys

import pytest

from toricbundle import catalog
from toricbundle.cli import main, parse_target
from toricbundle.serialize import (dumps, fan_to_json, normal_form_from_json,
                                   presentation_from_json, table_from_json)


@pytest.fixture
def p2_file(tmp_path):
    path = tmp_path / "p2.json"
    path.write_text(dumps(fan_to_json(catalog.get("p2"))), encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys, p2_file):
    code, out, _ = run(capsys, "validate", p2_file)
    assert code == 0 and out.strip() == "smooth complete fan, d=3, m=3"


def test_validate_incomplete(capsys, tmp_path):
    data = fan_to_json(catalog.get("p2"))
    data["max_cones"] = data["max_cones"][1:]
    path = tmp_path / "cut.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 1 and "wall {1} on 1 cone" in out
    code, _, err = run(capsys, "order", str(path))
    assert code == 1 and "ordering requires complete fan" in err


def test_malformed_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_bytes('{"dim": 2, "rays": [[1,0], ]}'.encode())
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2 and "byte offset 27" in err


def test_byte_offset_counts_bytes(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_bytes('{"name": "éé", }'.encode())
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2 and "byte offset 17" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent/fan.json")
    assert code == 2


def test_order(capsys, p2_file):
    code, out, _ = run(capsys, "order", p2_file)
    assert code == 0 and "(*) ok, (*') ok" in out
    code, out, _ = run(capsys, "order", p2_file, "--json")
    assert json.loads(out)["star_prime"] is True


def test_order_exhaustive(capsys):
    code, out, _ = run(capsys, "order", "p1xp1", "--exhaustive")
    assert code == 0
    assert "24 orders" in out and "16 satisfy (*)" in out and "agrees" in out


def test_order_from_file_is_used(capsys, tmp_path):
    path = tmp_path / "p2.json"
    path.write_text(json.dumps(fan_to_json(catalog.get("p2"), (2, 1, 0))))
    code, out, _ = run(capsys, "order", str(path))
    assert out.startswith("order: 3 2 1")


def test_reduce(capsys, p2_file):
    code, out, _ = run(capsys, "reduce", p2_file, "--mode", "additive", "--poly", "x1")
    assert code == 0
    nf = normal_form_from_json(json.loads(out))
    assert [str(c) for c in nf.coeffs] == ["r1 - r2", "1", "0"]
    code, out, _ = run(capsys, "reduce", p2_file, "--poly", "x1*x2*x3")
    assert all(not c for c in normal_form_from_json(json.loads(out)).coeffs)
    code, _, err = run(capsys, "reduce", p2_file, "--poly", "x9")
    assert code == 2 and "unknown generator" in err


def test_present(capsys, p2_file):
    code, out, _ = run(capsys, "present", p2_file, "--mode", "multiplicative")
    data = json.loads(out)
    pres = presentation_from_json(data)
    assert code == 0 and pres.mode.value == "multiplicative"
    assert data["relations"][0]["nonface"] == [1, 2, 3]


def test_table(capsys):
    code, out, _ = run(capsys, "table", "p2", "--format", "text", "--specialize", "r=0")
    assert "x{3} * x{3} = x{1,3}" in out and "x{1,3} * x{1,3} = 0" in out
    code, out, _ = run(capsys, "table", "p1", "--mode", "multiplicative", "--specialize", "r=1")
    entries = json.loads(out)["entries"]
    assert entries[1][1] == [[], []]
    code, out, _ = run(capsys, "--jobs", "2", "table", "bl_p2")
    assert table_from_json(json.loads(out)).is_symmetric()


def test_table_bad_specialization(capsys):
    code, _, err = run(capsys, "table", "p1", "--mode", "multiplicative", "--specialize", "r=0")
    assert code == 2 and "invertible" in err
    code, _, err = run(capsys, "table", "p2", "--specialize", "r1=1")
    assert code == 2


def test_parse_target():
    t = parse_target("t1^2: r1=3*t1, r2=1-t1", 2)
    assert t.caps == (2,) and str(t.values[0]) == "3*r1"
    assert parse_target("r=0", 3).values == parse_target("r1=0,r2=0,r3=0", 3).values


def test_betti(capsys):
    assert run(capsys, "betti", "p1xp1")[1].strip() == "1 2 1"
    assert run(capsys, "betti", "p3")[1].strip() == "1 1 1 1"


def test_check(capsys):
    code, out, _ = run(capsys, "check", "hirzebruch_1", "--samples", "20", "--seed", "3")
    assert code == 0 and "FAIL" not in out and "duality" in out


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog")
    assert "oda_84: n=3, d=7, m=10" in out
    code, out, _ = run(capsys, "catalog", "p2")
    assert json.loads(out)["rays"] == [[1, 0], [0, 1], [-1, -1]]


def test_deterministic_output(p2_file):
    cmd = [sys.executable, "-m", "toricbundle", "table", p2_file, "--mode", "multiplicative"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.decode("utf-8").endswith("\n")
