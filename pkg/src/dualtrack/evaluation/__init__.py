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
"""Tracking metrics, one-pass evaluation and block benchmarks."""

from dualtrack.evaluation.bench import BenchReport, bench_block, count_macs, count_parameters, format_bench_table
from dualtrack.evaluation.metrics import TrackingMetrics, aggregate_metrics, compute_metrics, iou, success_curve
from dualtrack.evaluation.ope import OPEReport, ope_run, run_sequences, score_results, score_results_dir, write_outputs

__all__ = [
    "BenchReport",
    "OPEReport",
    "TrackingMetrics",
    "aggregate_metrics",
    "bench_block",
    "compute_metrics",
    "count_macs",
    "count_parameters",
    "format_bench_table",
    "iou",
    "ope_run",
    "run_sequences",
    "score_results",
    "score_results_dir",
    "success_curve",
    "write_outputs",
]
