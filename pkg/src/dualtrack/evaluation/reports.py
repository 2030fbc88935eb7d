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
"""Plain-text metric reports and success-curve CSV files."""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Mapping, Optional

from dualtrack.evaluation.metrics import TrackingMetrics, success_thresholds

logger = logging.getLogger(__name__)


def format_report(
    per_sequence: Mapping[str, TrackingMetrics],
    aggregate: TrackingMetrics,
    config: Optional[Mapping[str, Any]] = None,
) -> str:
    """Render ``key: value`` lines, aggregate first, then one block per sequence."""
    lines = []
    if config is not None:
        lines.append(f"# config: {json.dumps(config, sort_keys=True)}")
    lines.append(f"sequences: {len(per_sequence)}")
    for key, value in aggregate.summary().items():
        lines.append(f"{key}: {value:.6f}")
    for name in sorted(per_sequence):
        for key, value in per_sequence[name].summary().items():
            lines.append(f"{name}.{key}: {value:.6f}")
    return "\n".join(lines) + "\n"


def write_report(
    path: Path,
    per_sequence: Mapping[str, TrackingMetrics],
    aggregate: TrackingMetrics,
    config: Optional[Mapping[str, Any]] = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_report(per_sequence, aggregate, config), encoding="utf-8")
    logger.info("Report written to %s", path)
    return path


def read_report(path: Path) -> dict:
    """Parse a report back into ``{key: float}`` (comments and headers skipped)."""
    values = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(": ")
        values[key] = float(value)
    return values


def write_curve(path: Path, per_sequence: Mapping[str, TrackingMetrics], aggregate: TrackingMetrics) -> Path:
    """Write one row per threshold with the aggregate and every sequence's success."""
    path = Path(path)
    names = sorted(per_sequence)
    thresholds = success_thresholds(len(aggregate.curve)) if aggregate.curve else []
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["threshold", "mean", *names])
        for row, threshold in enumerate(thresholds):
            writer.writerow(
                [f"{threshold:.2f}", f"{aggregate.curve[row]:.6f}"]
                + [f"{per_sequence[n].curve[row]:.6f}" for n in names]
            )
    return path
