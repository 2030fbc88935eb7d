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
One-pass-evaluation metrics.

Success at threshold t counts frames whose IoU is positive and at least t;
AUC averages success over the 21 thresholds 0, 0.05, ..., 1. Precision
counts frames whose center error is at most 20 px; normalized precision
divides the error by ``sqrt(w * h)`` of the ground-truth box.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np

from dualtrack.core.exceptions import SequenceError
from dualtrack.core.geometry import BBox


def iou(a: BBox, b: BBox) -> float:
    """Intersection over union; 0 when the union is empty.

    Example:
        >>> iou(BBox(0, 0, 2, 2), BBox(1, 1, 3, 3))
        0.14285714285714285
    """
    inter = a.intersection(b)
    union = a.area + b.area - inter
    if union <= 0.0:
        return 0.0
    return inter / union


def success_thresholds(num_thresholds: int = 21) -> np.ndarray:
    return np.arange(num_thresholds, dtype=np.float64) / (num_thresholds - 1)


def success_curve(overlaps: np.ndarray, thresholds: np.ndarray) -> np.ndarray:
    """Fraction of frames with ``0 < IoU`` and ``IoU >= t`` for every threshold."""
    if overlaps.size == 0:
        return np.zeros_like(thresholds)
    positive = overlaps > 0.0
    return np.array([np.mean(positive & (overlaps >= t)) for t in thresholds])


def center_error(a: BBox, b: BBox) -> float:
    (ax, ay), (bx, by) = a.center, b.center
    return math.hypot(ax - bx, ay - by)


@dataclass
class TrackingMetrics:
    """Scores of one sequence or an aggregate.

    Attributes:
        auc: Mean of the success curve.
        op50: Success at IoU 0.5.
        op75: Success at IoU 0.75.
        precision: Fraction of frames within the pixel threshold.
        norm_precision: Fraction within the normalized threshold.
        mean_iou: Mean per-frame IoU.
        curve: Success curve values.
    """

    auc: float
    op50: float
    op75: float
    precision: float
    norm_precision: float
    mean_iou: float
    curve: List[float] = field(default_factory=list)

    def summary(self) -> Dict[str, float]:
        return {
            "auc": self.auc,
            "op50": self.op50,
            "op75": self.op75,
            "precision": self.precision,
            "norm_precision": self.norm_precision,
            "mean_iou": self.mean_iou,
        }


def compute_metrics(
    pred: Sequence[BBox],
    gt: Sequence[BBox],
    precision_threshold: float = 20.0,
    norm_precision_threshold: float = 0.2,
    num_thresholds: int = 21,
) -> TrackingMetrics:
    """Score a predicted box stream against ground truth.

    Raises:
        SequenceError: If the streams differ in length.
    """
    if len(pred) != len(gt):
        raise SequenceError(f"Prediction has {len(pred)} boxes but ground truth has {len(gt)}")
    overlaps = np.array([iou(p, g) for p, g in zip(pred, gt)], dtype=np.float64)
    errors = np.array([center_error(p, g) for p, g in zip(pred, gt)], dtype=np.float64)
    sizes = np.array([math.sqrt(g.area) for g in gt], dtype=np.float64)
    normalized = np.divide(errors, sizes, out=np.full_like(errors, np.inf), where=sizes > 0)

    thresholds = success_thresholds(num_thresholds)
    curve = success_curve(overlaps, thresholds)
    positive = overlaps > 0.0

    def _rate(mask: np.ndarray) -> float:
        return float(np.mean(mask)) if mask.size else 0.0

    return TrackingMetrics(
        auc=float(np.mean(curve)),
        op50=_rate(positive & (overlaps >= 0.5)),
        op75=_rate(positive & (overlaps >= 0.75)),
        precision=_rate(errors <= precision_threshold),
        norm_precision=_rate(normalized <= norm_precision_threshold),
        mean_iou=float(np.mean(overlaps)) if overlaps.size else 0.0,
        curve=curve.tolist(),
    )


def aggregate_metrics(per_sequence: Sequence[TrackingMetrics]) -> TrackingMetrics:
    """Unweighted mean of per-sequence metrics (empty input gives zeros)."""
    if not per_sequence:
        return TrackingMetrics(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, [])
    curves = np.array([m.curve for m in per_sequence], dtype=np.float64)
    return TrackingMetrics(
        auc=float(np.mean([m.auc for m in per_sequence])),
        op50=float(np.mean([m.op50 for m in per_sequence])),
        op75=float(np.mean([m.op75 for m in per_sequence])),
        precision=float(np.mean([m.precision for m in per_sequence])),
        norm_precision=float(np.mean([m.norm_precision for m in per_sequence])),
        mean_iou=float(np.mean([m.mean_iou for m in per_sequence])),
        curve=curves.mean(axis=0).tolist(),
    )
