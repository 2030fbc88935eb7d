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
"""
One-pass evaluation runner.

Sequences are tracked in worker threads with a concurrency cap; each
sequence gets its own tracker state, so results do not depend on the
number of workers.
"""

import asyncio
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional, Sequence

from dualtrack.config.config_manager import EvaluationConfig
from dualtrack.core.constants import CURVE_FILE, REPORT_FILE
from dualtrack.core.exceptions import DatasetError, SequenceError
from dualtrack.core.interfaces import SequenceTracker
from dualtrack.data.records import SequenceRecord, load_dataset
from dualtrack.evaluation.metrics import TrackingMetrics, aggregate_metrics, compute_metrics
from dualtrack.evaluation.reports import write_curve, write_report
from dualtrack.tracking.results import SequenceResult, read_results, results_path, write_results

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int, str], None]


@dataclass
class OPEReport:
    """Per-sequence metrics, their mean and the raw results."""

    per_sequence: Dict[str, TrackingMetrics]
    aggregate: TrackingMetrics
    results: Dict[str, SequenceResult] = field(default_factory=dict)


async def run_sequences(
    tracker: SequenceTracker,
    records: Sequence[SequenceRecord],
    workers: int = 1,
    progress: Optional[ProgressCallback] = None,
) -> List[SequenceResult]:
    """Track every record with at most ``workers`` running at once.

    Results come back in the order of ``records``.
    """
    semaphore = asyncio.Semaphore(max(1, workers))
    total = len(records)
    done = 0
    lock = asyncio.Lock()

    async def run_one(record: SequenceRecord) -> SequenceResult:
        nonlocal done
        async with semaphore:
            result = await asyncio.to_thread(tracker.track_sequence, record)
        async with lock:
            done += 1
            if progress is not None:
                progress(int(done / total * 100) if total else 100, record.name)
        return result

    return list(await asyncio.gather(*(run_one(r) for r in records)))


def score_results(
    results: Mapping[str, SequenceResult],
    records: Sequence[SequenceRecord],
    config: Optional[EvaluationConfig] = None,
) -> OPEReport:
    """Compute metrics for every record that has a usable result.

    Sequences without a result, or whose result length differs from the
    ground truth, are skipped with a warning and left out of the aggregate.
    """
    config = config or EvaluationConfig()
    per_sequence: Dict[str, TrackingMetrics] = {}
    scored: Dict[str, SequenceResult] = {}
    for record in records:
        result = results.get(record.name)
        if result is None:
            logger.warning("No result for sequence %s; skipped", record.name)
            continue
        try:
            per_sequence[record.name] = compute_metrics(
                result.boxes,
                record.boxes,
                precision_threshold=config.precision_threshold,
                norm_precision_threshold=config.norm_precision_threshold,
                num_thresholds=config.num_thresholds,
            )
        except SequenceError as exc:
            logger.warning("Skipping %s: %s", record.name, exc)
            continue
        scored[record.name] = result
    aggregate = aggregate_metrics([per_sequence[n] for n in sorted(per_sequence)])
    return OPEReport(per_sequence, aggregate, scored)


def write_outputs(
    report: OPEReport,
    out_dir: Path,
    config_echo: Optional[Mapping[str, object]] = None,
    extended: bool = False,
    write_tracks: bool = True,
) -> None:
    """Write result files, the metric report and the success-curve CSV."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if write_tracks:
        for result in report.results.values():
            write_results(result, out_dir, extended=extended)
    write_report(out_dir / REPORT_FILE, report.per_sequence, report.aggregate, config_echo)
    write_curve(out_dir / CURVE_FILE, report.per_sequence, report.aggregate)


def ope_run(
    tracker: SequenceTracker,
    dataset_dir: Path,
    config: Optional[EvaluationConfig] = None,
    progress: Optional[ProgressCallback] = None,
) -> OPEReport:
    """Track and score every readable sequence under ``dataset_dir``.

    Sequences without ground truth are skipped with a warning.
    """
    config = config or EvaluationConfig()
    records = load_dataset(dataset_dir)
    results = asyncio.run(run_sequences(tracker, records, config.workers, progress))
    report = score_results({r.name: r for r in results}, records, config)
    logger.info("OPE over %d sequences: AUC %.4f", len(report.per_sequence), report.aggregate.auc)
    return report


def score_results_dir(
    results_dir: Path, dataset_dir: Path, config: Optional[EvaluationConfig] = None
) -> OPEReport:
    """Score existing result files against the dataset's ground truth."""
    records = load_dataset(dataset_dir)
    results: Dict[str, SequenceResult] = {}
    for record in records:
        try:
            results[record.name] = read_results(results_path(results_dir, record.name))
        except DatasetError as exc:
            logger.warning("Skipping %s: %s", record.name, exc)
    return score_results(results, records, config)
