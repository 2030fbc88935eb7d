# ===----------------------------------------------------------------------=== #
#
# This source file is part of the dualtrack open source project
#
# Copyright (c) 2026 dualtrack contributors
# Licensed under the MIT License
#
# See LICENSE for license information
#
# ===----------------------------------------------------------------------=== #
import json
import shutil

import pytest

from dualtrack.cli.commands import run
from dualtrack.core.constants import (
    CHECKPOINT_FILE,
    CURVE_FILE,
    EFFECTIVE_CONFIG_FILE,
    EXIT_DATA,
    EXIT_OK,
    EXIT_USAGE,
    GROUNDTRUTH_FILE,
    LOSS_LOG_FILE,
    REPORT_FILE,
)
from dualtrack.evaluation.reports import read_report

WORKFLOW_CONFIG = {
    "backbone": {"stage_channels": [4, 8, 8, 8], "width": 16},
    "heads": {"channels": 16},
    "training": {"batch_size": 2, "steps": 2, "epochs": 1, "log_every": 1},
    "synth": {"sequences": 2, "length": 5, "frame_size": [96, 72]},
    "bench": {"repeats": 1, "warmup": 1},
}


class TestCliWorkflow:
    @pytest.fixture
    def workspace(self, tmp_path):
        config = tmp_path / "tiny.json"
        config.write_text(json.dumps(WORKFLOW_CONFIG), encoding="utf-8")
        return tmp_path, config

    @pytest.fixture
    def trained(self, workspace):
        root, config = workspace
        assert run(["synth", "--config", str(config), "--out", str(root / "data")]) == EXIT_OK
        argv = ["train", "--config", str(config), "--dataset", str(root / "data"), "--out", str(root / "run")]
        assert run(argv) == EXIT_OK
        return root, config

    def _snapshot(self, directory):
        return {p.relative_to(directory): p.read_bytes() for p in sorted(directory.rglob("*")) if p.is_file()}

    def _run_twice(self, argv, out):
        assert run(argv) == EXIT_OK
        first = self._snapshot(out)
        shutil.rmtree(out)
        assert run(argv) == EXIT_OK
        return first, self._snapshot(out)

    def _track(self, root, config, out, *extra):
        argv = [
            "track",
            "--config", str(config),
            "--checkpoint", str(root / "run" / CHECKPOINT_FILE),
            "--dataset", str(root / "data"),
            "--out", str(root / out),
            *extra,
        ]
        return run(argv)

    def test_synth_train_track_eval(self, trained, capsys):
        root, config = trained
        assert sorted(p.name for p in (root / "data").iterdir()) == ["synthetic_0000", "synthetic_0001"]
        assert (root / "run" / CHECKPOINT_FILE).exists()
        log_lines = (root / "run" / LOSS_LOG_FILE).read_text().splitlines()
        assert json.loads(log_lines[0])["event"] == "config"
        assert len(log_lines) == 3

        assert self._track(root, config, "tracks") == EXIT_OK
        lines = (root / "tracks" / "synthetic_0000.txt").read_text().splitlines()
        assert len(lines) == 5
        assert all(len(line.split(",")) == 4 for line in lines)
        effective = json.loads((root / "tracks" / EFFECTIVE_CONFIG_FILE).read_text())
        assert effective["backbone"]["width"] == 16

        argv = [
            "eval",
            "--config", str(config),
            "--checkpoint", str(root / "run" / CHECKPOINT_FILE),
            "--dataset", str(root / "data"),
            "--out", str(root / "eval"),
            "--extended",
        ]
        assert run(argv) == EXIT_OK
        assert "AUC:" in capsys.readouterr().out
        report = read_report(root / "eval" / REPORT_FILE)
        assert report["sequences"] == 2.0
        assert 0.0 <= report["auc"] <= 1.0
        assert (root / "eval" / CURVE_FILE).exists()
        assert len((root / "eval" / "synthetic_0001.txt").read_text().splitlines()[0].split(",")) == 5

    def test_tracking_is_deterministic(self, trained):
        root, config = trained
        assert self._track(root, config, "first", "--workers", "2") == EXIT_OK
        assert self._track(root, config, "second") == EXIT_OK
        for name in ("synthetic_0000.txt", "synthetic_0001.txt"):
            assert (root / "first" / name).read_bytes() == (root / "second" / name).read_bytes()

    def test_zero_lambda_matches_plain_normalization(self, trained):
        root, config = trained
        assert self._track(root, config, "off", "--dtta", "off") == EXIT_OK
        assert self._track(root, config, "zero", "--dtta", "dtta", "--lambda-bn", "0") == EXIT_OK
        for name in ("synthetic_0000.txt", "synthetic_0001.txt"):
            assert (root / "off" / name).read_bytes() == (root / "zero" / name).read_bytes()

    def test_eval_existing_results(self, workspace, capsys):
        root, config = workspace
        assert run(["synth", "--config", str(config), "--out", str(root / "data")]) == EXIT_OK
        results = root / "perfect"
        results.mkdir()
        for sequence in (root / "data").iterdir():
            shutil.copy(sequence / GROUNDTRUTH_FILE, results / f"{sequence.name}.txt")
        argv = ["eval", "--dataset", str(root / "data"), "--results", str(results), "--out", str(root / "eval")]
        assert run(argv) == EXIT_OK
        assert "AUC: 1.000000" in capsys.readouterr().out
        assert read_report(root / "eval" / REPORT_FILE)["auc"] == pytest.approx(1.0)

    def test_bench_writes_table(self, workspace):
        root, config = workspace
        argv = ["bench", "--config", str(config), "--out", str(root / "bench"), "--channels", "16", "--size", "4"]
        assert run(argv) == EXIT_OK
        table = (root / "bench" / "bench.txt").read_text()
        assert "fmf" in table
        assert "psa" in table

    def test_usage_errors(self, workspace):
        root, config = workspace
        assert run(["track", "--bogus"]) == EXIT_USAGE
        assert run(["synth", "--out", str(root / "s"), "--lambda-bn", "0.5"]) == EXIT_USAGE
        bad = root / "bad.json"
        bad.write_text(json.dumps({"adaptation": {"lambda_bn": 2.0}}), encoding="utf-8")
        assert run(["synth", "--config", str(bad), "--out", str(root / "s")]) == EXIT_USAGE

    def test_config_from_environment(self, workspace, monkeypatch):
        root, config = workspace
        monkeypatch.setenv("DUALTRACK_CONFIG", str(config))
        assert run(["synth", "--out", str(root / "data")]) == EXIT_OK
        assert len(list((root / "data").iterdir())) == 2

    def test_data_errors(self, workspace):
        root, config = workspace
        missing = root / "missing"
        argv = [
            "track",
            "--checkpoint", str(missing / CHECKPOINT_FILE),
            "--dataset", str(missing),
            "--out", str(root / "t"),
        ]
        assert run(argv) == EXIT_DATA
        argv = ["train", "--config", str(config), "--dataset", str(missing), "--out", str(root / "r")]
        assert run(argv) == EXIT_DATA

    def test_artifacts_are_byte_identical(self, workspace):
        root, config = workspace
        data = root / "data"
        first, second = self._run_twice(["synth", "--config", str(config), "--out", str(data)], data)
        assert first == second
        assert len(first) > 2

        run_dir = root / "run"
        argv = ["train", "--config", str(config), "--dataset", str(data), "--out", str(run_dir)]
        first, second = self._run_twice(argv, run_dir)
        assert first == second
        assert {CHECKPOINT_FILE, LOSS_LOG_FILE, EFFECTIVE_CONFIG_FILE} <= {p.name for p in first}

        eval_dir = root / "eval"
        argv = [
            "eval",
            "--config", str(config),
            "--checkpoint", str(run_dir / CHECKPOINT_FILE),
            "--dataset", str(data),
            "--out", str(eval_dir),
        ]
        first, second = self._run_twice(argv, eval_dir)
        assert first == second
        assert {REPORT_FILE, CURVE_FILE} <= {p.name for p in first}

    def test_paths_from_config_file(self, trained):
        root, config = trained
        settings = dict(
            WORKFLOW_CONFIG,
            paths={
                "checkpoint": str(root / "run" / CHECKPOINT_FILE),
                "dataset": str(root / "data"),
                "out": str(root / "from_file"),
            },
        )
        from_file = root / "paths.json"
        from_file.write_text(json.dumps(settings), encoding="utf-8")
        assert run(["track", "--config", str(from_file)]) == EXIT_OK
        assert self._track(root, config, "from_flags") == EXIT_OK
        for name in ("synthetic_0000.txt", "synthetic_0001.txt"):
            assert (root / "from_file" / name).read_bytes() == (root / "from_flags" / name).read_bytes()

    def test_bench_from_config_file(self, workspace):
        root, _ = workspace
        settings = dict(
            WORKFLOW_CONFIG,
            bench={"repeats": 1, "warmup": 1, "blocks": ["fmf"], "channels": 16, "size": 4},
            paths={"out": str(root / "bench")},
        )
        config = root / "bench.json"
        config.write_text(json.dumps(settings), encoding="utf-8")
        assert run(["bench", "--config", str(config)]) == EXIT_OK
        table = (root / "bench" / "bench.txt").read_text()
        assert "fmf" in table
        assert "psa" not in table
        assert "1x16x4x4" in table

    def test_unset_paths_are_usage_errors(self, workspace):
        root, config = workspace
        assert run(["synth", "--config", str(config)]) == EXIT_USAGE
        assert run(["track", "--config", str(config), "--out", str(root / "t")]) == EXIT_USAGE
        assert run(["train", "--config", str(config), "--out", str(root / "r")]) == EXIT_USAGE

    def test_truncated_result_is_skipped(self, workspace, capsys):
        root, config = workspace
        assert run(["synth", "--config", str(config), "--out", str(root / "data")]) == EXIT_OK
        results = root / "partial"
        results.mkdir()
        for sequence in (root / "data").iterdir():
            shutil.copy(sequence / GROUNDTRUTH_FILE, results / f"{sequence.name}.txt")
        truncated = results / "synthetic_0001.txt"
        truncated.write_text("\n".join(truncated.read_text().splitlines()[:3]) + "\n")
        argv = ["eval", "--dataset", str(root / "data"), "--results", str(results), "--out", str(root / "eval")]
        assert run(argv) == EXIT_OK
        assert "AUC: 1.000000" in capsys.readouterr().out
        assert read_report(root / "eval" / REPORT_FILE)["sequences"] == 1.0
