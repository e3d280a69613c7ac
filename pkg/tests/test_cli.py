import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema

from amono.cli import main

SPECS = Path(__file__).resolve().parent.parent / "specs"


def schema():
    return json.loads(resources.files("amono").joinpath("data/report.schema.json").read_text())


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_g3_text(capsys):
    code, out, _ = run(["analyze", str(SPECS / "g3.toml")], capsys)
    assert code == 0
    assert "rank D = 3" in out and "chambers: 4" in out


def test_json_validates_and_is_reproducible(capsys):
    code, first, _ = run(["analyze", str(SPECS / "g3.toml"), "--json"], capsys)
    assert code == 0
    doc = json.loads(first)
    jsonschema.validate(doc, schema())
    assert doc["system"]["D"] == 3
    assert doc["signature"]["positives"] + doc["signature"]["negatives"] == 3
    _, second, _ = run(["analyze", str(SPECS / "g3.toml"), "--json"], capsys)
    assert first == second


def test_json_without_mb_validates(capsys):
    code, out, _ = run(["example", "appell_f4", "--json"], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema())
    assert doc["mb_basis"]["status"] == "none"
    assert "NoMBBasis" in doc["mb_basis"]["message"]


def test_require_mb_exit_code(capsys):
    code, _, err = run(["example", "appell_f4", "--require-mb"], capsys)
    assert code == 3 and "NoMBBasis" in err


def test_invalid_inputs(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text('A = [[1, 1]]\nalpha = ["1/0"]\n')
    assert run(["analyze", str(bad)], capsys)[0] == 2
    res = tmp_path / "res.toml"
    res.write_text('A = [[-1, 0, 1, 2], [2, 1, 0, -1]]\nalpha = ["1", "2"]\n')
    code, _, err = run(["analyze", str(res)], capsys)
    assert code == 2 and "Resonant" in err
    assert run(["analyze", str(tmp_path / "missing.toml")], capsys)[0] == 1
    assert run(["example", "nope"], capsys)[0] == 2


def test_emit_and_output_file(tmp_path, capsys):
    target = tmp_path / "g3.toml"
    assert run(["example", "g3", "--emit", "-o", str(target)], capsys)[0] == 0
    assert target.read_text() == (SPECS / "g3.toml").read_text()
    report = tmp_path / "out.json"
    assert run(["analyze", str(target), "--json", "--skip-hermitian", "-o", str(report)], capsys)[0] == 0
    doc = json.loads(report.read_text())
    jsonschema.validate(doc, schema())
    assert doc["hermitian"] == {"status": "skipped"}


def test_timing_flag(capsys):
    code, out, _ = run(["example", "gauss_2f1", "--json", "--timing"], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema())
    assert "chambers" in doc["timing"]


def test_list_examples(capsys):
    code, out, _ = run(["list-examples"], capsys)
    assert code == 0 and "g3" in out.split()


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "amono.cli", "list-examples"], capture_output=True, text=True)
    assert r.returncode == 0 and "e36" in r.stdout
