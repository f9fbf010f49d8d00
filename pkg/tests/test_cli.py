from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from mpsynth import dumps, loads, validate
from mpsynth.cli import main

from conftest import seven_input_structure

COSTS = '{"m": 3, "c": [1, 2], "l": [1, 1]}'


@pytest.fixture
def costs_file(tmp_path: Path) -> Path:
    path = tmp_path / "costs.json"
    path.write_text(COSTS)
    return path


def run_cli(*argv: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "mpsynth", *argv],
        capture_output=True,
        text=True,
    )


def test_synthesize_star_summary(tmp_path, costs_file, capsys):
    code = main(
        ["synthesize", "star", "7", "--costs", str(costs_file), "--out", str(tmp_path / "o")]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "complexity  15" in out
    assert "latency     4" in out
    assert "[5, 0]" in out
    dag = loads((tmp_path / "o" / "structure.json").read_bytes())
    assert validate(dag).ok


def test_synthesize_isom_summary(tmp_path, costs_file, capsys):
    code = main(
        ["synthesize", "isom", "7", "--costs", str(costs_file), "--out", str(tmp_path / "o")]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "complexity  21" in out  # 7*c2 + 7*c3
    assert "latency     2" in out


def test_isom_unfactorable_is_infeasible(costs_file, capsys):
    code = main(["synthesize", "isom", "8", "--costs", str(costs_file)])
    err = capsys.readouterr().err
    assert code == 2
    assert "--prune" in err


def test_isom_prune_flag(tmp_path, costs_file, capsys):
    code = main(
        [
            "synthesize",
            "isom",
            "8",
            "--costs",
            str(costs_file),
            "--prune",
            "--out",
            str(tmp_path / "o"),
        ]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "n_prime     10" in out
    assert "[0, 2]" in out
    dag = loads((tmp_path / "o" / "structure.json").read_bytes())
    assert dag.n == 8
    assert validate(dag).ok


def test_validate_roundtrip(tmp_path, costs_file, capsys):
    main(["synthesize", "star", "6", "--costs", str(costs_file), "--out", str(tmp_path / "o")])
    capsys.readouterr()
    code = main(["validate", str(tmp_path / "o" / "structure.json")])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["ok"] is True


def test_validate_flags_broken_file(tmp_path, capsys):
    raw = {
        "n": 2,
        "m": 2,
        "nodes": [{"id": 0, "label": "x1"}, {"id": 1, "label": "y1"}],
        "edges": [[0, 1]],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(raw))
    code = main(["validate", str(path)])
    report = json.loads(capsys.readouterr().out)
    assert code == 3
    assert report["ok"] is False


def test_eval_reference_structure(tmp_path, costs_file, capsys):
    dag = seven_input_structure("ascending")
    path = tmp_path / "ref.json"
    path.write_text(dumps(dag))
    code = main(["eval", str(path), "--costs", str(costs_file)])
    out = capsys.readouterr().out
    assert code == 0
    assert "complexity  23" in out  # 8 three-input units at 2 plus 7 at 1
    assert "latency     2" in out


def test_export_dot(tmp_path, costs_file, capsys):
    main(["synthesize", "star", "5", "--costs", str(costs_file), "--out", str(tmp_path / "o")])
    capsys.readouterr()
    code = main(["export", str(tmp_path / "o" / "structure.json"), "--format", "dot"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("digraph structure {")


def test_verify_all_pass(costs_file, capsys):
    code = main(["verify", "7", "--costs", str(costs_file)])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["ok"] is True
    assert all(check["pass"] for check in report["checks"])


def test_every_emitted_structure_validates(tmp_path, costs_file, capsys):
    cases = [("star", "5", []), ("star", "9", []), ("isom", "7", []), ("isom", "11", ["--prune"])]
    for i, (mode, n, extra) in enumerate(cases):
        out = tmp_path / f"case{i}"
        assert (
            main(["synthesize", mode, n, "--costs", str(costs_file), "--out", str(out), *extra])
            == 0
        )
        capsys.readouterr()
        assert main(["validate", str(out / "structure.json")]) == 0
        capsys.readouterr()


def test_bad_cost_file_is_usage_error(tmp_path, capsys):
    path = tmp_path / "costs.json"
    path.write_text('{"m": 1}')
    code = main(["synthesize", "star", "7", "--costs", str(path)])
    assert code == 1


def test_missing_subcommand_is_usage_error():
    proc = run_cli()
    assert proc.returncode == 1


def test_manifest_written(tmp_path, costs_file):
    main(["synthesize", "star", "7", "--costs", str(costs_file), "--out", str(tmp_path / "o")])
    manifest = json.loads((tmp_path / "o" / "run_manifest.json").read_text())
    assert manifest["command"] == "synthesize"
    assert manifest["parameters"]["n"] == 7
    assert manifest["tool_version"]
    assert len(manifest["cost_model_digest"]) == 64
    assert manifest["outputs"] == ["structure.json", "structure.dot"]


def test_subprocess_entry_point(tmp_path, costs_file):
    proc = run_cli("synthesize", "star", "7", "--costs", str(costs_file))
    assert proc.returncode == 0
    assert "complexity  15" in proc.stdout
