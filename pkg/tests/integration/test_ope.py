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
import logging

import pytest

from dualtrack.config.config_manager import EvaluationConfig, SynthConfig
from dualtrack.core.constants import CURVE_FILE, GROUNDTRUTH_FILE, REPORT_FILE
from dualtrack.data.records import SequenceRecord, load_dataset
from dualtrack.data.synthetic import generate_corpus
from dualtrack.evaluation.ope import ope_run, run_sequences, score_results, score_results_dir, write_outputs
from dualtrack.evaluation.reports import read_report
from dualtrack.tracking.results import SequenceResult, write_results
from dualtrack.tracking.tracker import Tracker


class OracleTracker:
    """Returns the ground truth."""

    def track_sequence(self, record: SequenceRecord) -> SequenceResult:
        return SequenceResult(record.name, list(record.boxes), [1.0] * len(record))


class ShiftedTracker:
    """Returns the ground truth moved right by half a box width on every other sequence."""

    def track_sequence(self, record: SequenceRecord) -> SequenceResult:
        if record.name.endswith("1"):
            boxes = [box.translate(box.width / 2, 0) for box in record.boxes]
        else:
            boxes = list(record.boxes)
        return SequenceResult(record.name, boxes)


@pytest.fixture
def dataset_dir(tmp_path):
    generate_corpus(SynthConfig(sequences=3, length=4, frame_size=(96, 72)), tmp_path / "data", seed=0)
    return tmp_path / "data"


class TestRunSequences:
    async def test_order_and_progress(self, dataset_dir):
        records = load_dataset(dataset_dir)
        seen = []
        results = await run_sequences(OracleTracker(), records, workers=2, progress=lambda p, n: seen.append(p))
        assert [r.name for r in results] == [r.name for r in records]
        assert sorted(seen) == [33, 66, 100]


class TestOPE:
    def test_oracle_auc(self, dataset_dir):
        report = ope_run(OracleTracker(), dataset_dir)
        assert report.aggregate.auc == 1.0
        assert report.aggregate.precision == 1.0
        assert set(report.per_sequence) == {"synthetic_0000", "synthetic_0001", "synthetic_0002"}

    def test_aggregate_is_mean(self, dataset_dir):
        report = ope_run(ShiftedTracker(), dataset_dir)
        aucs = [m.auc for m in report.per_sequence.values()]
        assert report.per_sequence["synthetic_0001"].auc < 1.0
        assert report.aggregate.auc == pytest.approx(sum(aucs) / len(aucs))

    def test_missing_groundtruth_skipped(self, dataset_dir, caplog):
        (dataset_dir / "synthetic_0002" / GROUNDTRUTH_FILE).unlink()
        with caplog.at_level(logging.WARNING):
            report = ope_run(OracleTracker(), dataset_dir)
        assert set(report.per_sequence) == {"synthetic_0000", "synthetic_0001"}
        assert "synthetic_0002" in caplog.text

    def test_rerun_identical(self, dataset_dir, tiny_model, tiny_config, tmp_path):
        tracker = Tracker(tiny_model, tiny_config)
        texts = []
        for run in ("a", "b"):
            report = ope_run(tracker, dataset_dir, EvaluationConfig(workers=2))
            write_outputs(report, tmp_path / run, config_echo={"seed": 0}, extended=True)
            texts.append(
                [(tmp_path / run / name).read_bytes() for name in (REPORT_FILE, CURVE_FILE, "synthetic_0000.txt")]
            )
        assert texts[0] == texts[1]

    def test_workers_do_not_change_results(self, dataset_dir, tiny_model, tiny_config):
        tracker = Tracker(tiny_model, tiny_config)
        one = ope_run(tracker, dataset_dir, EvaluationConfig(workers=1))
        three = ope_run(tracker, dataset_dir, EvaluationConfig(workers=3))
        assert {n: r.boxes for n, r in one.results.items()} == {n: r.boxes for n, r in three.results.items()}


class TestScoreResults:
    def test_results_dir(self, dataset_dir, tmp_path):
        records = load_dataset(dataset_dir)
        for record in records[:2]:
            write_results(OracleTracker().track_sequence(record), tmp_path / "results")
        report = score_results_dir(tmp_path / "results", dataset_dir)
        assert set(report.per_sequence) == {"synthetic_0000", "synthetic_0001"}
        assert report.aggregate.auc == pytest.approx(1.0)

    def test_truncated_result_is_skipped(self, dataset_dir, tmp_path, caplog):
        records = load_dataset(dataset_dir)
        for record in records:
            write_results(OracleTracker().track_sequence(record), tmp_path / "results")
        truncated = SequenceResult(records[1].name, list(records[1].boxes[:2]))
        write_results(truncated, tmp_path / "results")
        with caplog.at_level(logging.WARNING):
            report = score_results_dir(tmp_path / "results", dataset_dir)
        assert set(report.per_sequence) == {"synthetic_0000", "synthetic_0002"}
        assert records[1].name not in report.results
        assert report.aggregate.auc == pytest.approx(1.0)
        assert "synthetic_0001" in caplog.text

    def test_write_outputs(self, dataset_dir, tmp_path):
        records = load_dataset(dataset_dir)
        results = {r.name: OracleTracker().track_sequence(r) for r in records}
        write_outputs(score_results(results, records), tmp_path / "out")
        values = read_report(tmp_path / "out" / REPORT_FILE)
        assert values["sequences"] == 3.0
        assert values["auc"] == 1.0
        assert (tmp_path / "out" / "synthetic_0001.txt").exists()
