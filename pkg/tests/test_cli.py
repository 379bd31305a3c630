import json
import subprocess
import sys

import pytest

from omegac.cli import main
from omegac.checks import slice_squares
from omegac.catalog import globe_adc
from omegac.omega import atom_cell, compose_cells
from omegac.theta import lambda_gs, parse_gs

SMALL = {"checks": [{"check": "theta_counts", "targets": ["[*,*]"]}, {"check": "gray_basis"}]}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_predicates_json(capsys):
    code, out, _ = run(capsys, "predicates", "--gs", "[*,*]", "--json")
    assert code == 0
    assert json.loads(out) == {k: {"value": True, "witness": None}
                               for k in ("loop_free", "unitary", "strong_steiner")}


def test_validate_file_and_bad_input(capsys, tmp_path):
    p = tmp_path / "d1.json"
    p.write_text(json.dumps(globe_adc(1).to_json()))
    code, out, _ = run(capsys, "validate", str(p))
    assert code == 0 and "[2, 1]" in out
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"basis": [{"id": "x", "deg": 0}, {"id": "f", "deg": 1}],
                               "diff": {"f": {"x": 1}}, "aug": {"x": 1}}))
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and json.loads(err)["error"] == "AugmentationNotAnnihilating"
    code, _, _ = run(capsys, "validate", "not-a-file")
    assert code == 2


def test_constructions_write_valid_json(capsys, tmp_path):
    for cmd in (["cylinder", "--gs", "[*]"], ["cone", "D1"], ["cocone", "*"], ["suspend", "[*,*]"],
                ["wedge", "--gs", "[*]", "--side", "left"], ["dual", "--gs", "[[*]]", "--duality", "full"],
                ["tensor", "D1", "[*]"]):
        out_path = tmp_path / "out.json"
        code, _, _ = run(capsys, *cmd, "--json", "-o", str(out_path))
        assert code == 0
        code, _, _ = run(capsys, "validate", str(out_path))
        assert code == 0, cmd


def test_whisker_and_cells(capsys):
    code, out, _ = run(capsys, "whisker", "--gs", "*", "--side", "left", "--json")
    assert code == 0 and json.loads(out)["map"]["[v0,1]"] == {"[v0,1]": 1, "e1@wedge": 1}
    code, out, _ = run(capsys, "cells", "--gs", "[*,*]", "-n", "1", "--count")
    assert code == 0 and out.strip() == "6"


def test_theta_subcommands(capsys, tmp_path):
    code, out, _ = run(capsys, "theta", "hom", "D1", "D2", "--count")
    assert code == 0 and out.strip() == "4"
    doc = {"src": "[*]", "tgt": "[*,*]", "f": [0, 2], "comps": [[{"f": [0], "comps": []}] * 2]}
    p = tmp_path / "m.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "theta", "classify", "--file", str(p), "--json")
    flags = json.loads(out)
    assert code == 0 and flags["algebraic"] and not flags["globular"]
    code, out, _ = run(capsys, "theta", "factor", "--file", str(p), "--mode", "reedy", "--json")
    assert code == 0


def test_decompose(capsys, tmp_path):
    K = lambda_gs(parse_gs("[[*,*]]"))
    v = compose_cells(atom_cell(K, "v01/v12"), atom_cell(K, "v01/v01"), 1)
    a, c = tmp_path / "k.json", tmp_path / "c.json"
    a.write_text(json.dumps(K.to_json()))
    c.write_text(json.dumps(v.to_json()))
    code, out, _ = run(capsys, "decompose", "--adc", str(a), "--cell", str(c), "--json")
    res = json.loads(out)
    assert code == 0 and res["recomposes"] and res["ordering"] == ["v01/v12", "v01/v01"]


def test_check_square_and_isos(capsys, tmp_path):
    p = tmp_path / "sq.json"
    p.write_text(json.dumps(slice_squares(globe_adc(1))[1].to_json()))
    code, _, _ = run(capsys, "check", "square", "--file", str(p), "--mode", "cart")
    assert code == 0
    code, _, _ = run(capsys, "check", "square", "--file", str(p), "--mode", "co")
    assert code == 1
    code, out, _ = run(capsys, "isos", "D1", "D1", "--json")
    assert code == 0 and len(json.loads(out)) == 1


def test_check_exit_codes(capsys):
    assert run(capsys, "check", "globe-cylinder", "-n", "2")[0] == 0
    assert run(capsys, "check", "globe-cylinder", "-n", "4")[0] == 3
    assert run(capsys, "check", "theta-counts", "--gs", "[[*]]", "-n", "1")[0] == 0
    with pytest.raises(SystemExit) as exc:
        main(["check", "globe-cylinder"])
    assert exc.value.code == 2


def test_verify_suite_codes_and_plot(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(SMALL))
    png = tmp_path / "t.png"
    report = tmp_path / "r.jsonl"
    code, _, err = run(capsys, "verify", "suite", "--config", str(cfg), "--plot", str(png), "-o", str(report))
    assert code == 0 and "0 failed" in err
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    lines = report.read_text().splitlines()
    assert [json.loads(x)["verdict"] for x in lines] == ["pass", "pass"]
    fault = tmp_path / "fault.json"
    fault.write_text(json.dumps({"checks": [{"check": "gray_basis"}], "inject_fault": "cone_sign"}))
    code, out, _ = run(capsys, "verify", "suite", "--config", str(fault))
    assert code == 1 and "DifferentialNotSquareZero" in out
    code, _, _ = run(capsys, "verify", "suite", "--config", "{}")
    assert code == 0
    code, _, _ = run(capsys, "verify", "suite", "--config", '{"bogus": 1}')
    assert code == 2


def test_report_bytes_stable(capsys):
    a = run(capsys, "verify", "suite", "--config", json.dumps(SMALL))[1]
    b = run(capsys, "verify", "suite", "--config", json.dumps(SMALL))[1]
    assert a == b and "wall_time" not in a


def test_console_script_runs():
    r = subprocess.run([sys.executable, "-m", "omegac.cli", "theta", "hom", "D1", "[*,*]", "--count"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "6"
