import json
import subprocess
import sys

import pytest

from qemlab.cli import EXIT_CONFIG, EXIT_DEGENERATE, main
from qemlab.report import REPORT_COLUMNS, tables_dict


@pytest.fixture()
def tiny_file(tiny_config, tmp_path):
    path = tmp_path / "tiny.json"
    path.write_text(tiny_config.to_json())
    return path


def test_run_report_evaluate(tiny_file, tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["run", "--config", str(tiny_file), "--pipelines", "P1,P3", "--out", str(out)]) == 0
    assert sorted(p.name for p in out.iterdir()) == ["P1-local.json", "P3-local.json"]
    capsys.readouterr()

    assert main(["report", "--runs", str(out)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == ",".join(REPORT_COLUMNS)
    assert [ln.split(",")[:2] for ln in lines[1:]] == [
        ["P1", "linear"], ["P1", "quadratic"], ["P3", "linear"], ["P3", "quadratic"]
    ]

    assert main(["evaluate", "--run", str(out), "--fit", "quadratic"]) == 0
    evs = json.loads(capsys.readouterr().out)
    assert [e["fit"] for e in evs] == ["quadratic", "quadratic"]

    assert main(["compare", "--a", str(out / "P3-local.json"), "--b", str(out / "P1-local.json")]) == 0
    assert "z" in json.loads(capsys.readouterr().out)


def test_run_refuses_overwrite(tiny_file, tmp_path):
    out = tmp_path / "run"
    assert main(["run", "--config", str(tiny_file), "--pipelines", "P1", "--out", str(out)]) == 0
    assert main(["run", "--config", str(tiny_file), "--pipelines", "P1", "--out", str(out)]) == EXIT_CONFIG


def test_config_errors(tmp_path, tiny_file):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"param_pairs": [], "shots": 10}))
    assert main(["run", "--config", str(bad), "--out", str(tmp_path / "x")]) == EXIT_CONFIG
    assert main(["run", "--config", str(tiny_file), "--pipelines", "P12", "--out", str(tmp_path / "y")]) == EXIT_CONFIG
    assert main(["report", "--runs", str(tmp_path), "--format", "xml"]) == EXIT_CONFIG


def test_degenerate_exit_code(tiny_config, tmp_path):
    path = tmp_path / "floor.json"
    path.write_text(tiny_config.replace(estimation_floor=0.99).to_json())
    out = tmp_path / "run"
    assert main(["run", "--config", str(path), "--pipelines", "P1E", "--out", str(out)]) == 0
    assert main(["report", "--runs", str(out)]) == EXIT_DEGENERATE


def test_tables(capsys):
    assert main(["tables"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["rc_table"]) == 16
    assert len(data["param_pairs"]) == 10
    assert data == tables_dict(__import__("qemlab").builtin_profile("desk"))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qemlab", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "tables" in proc.stdout
