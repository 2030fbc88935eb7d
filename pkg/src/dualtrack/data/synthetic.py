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
Synthetic tracking sequences.

A textured rectangle or ellipse moves over a smooth textured background,
either staying put or travelling on a straight line whose end point keeps
the box inside the frame. Per-frame corruptions (brightness shift, blur,
noise) model distribution shift with a constant or ramping severity.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple

import cv2
import numpy as np

from dualtrack.config.config_manager import SynthConfig
from dualtrack.core.geometry import BBox
from dualtrack.core.interfaces import Corruption, MotionKind, ObjectKind
from dualtrack.data.records import SequenceRecord, save_sequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters of one generated sequence."""

    length: int = 100
    frame_size: Tuple[int, int] = (320, 240)
    object_kind: ObjectKind = ObjectKind.RECTANGLE
    motion: MotionKind = MotionKind.LINEAR
    corruption: Corruption = Corruption.NONE
    severity: float = 0.0
    schedule: str = "constant"

    @classmethod
    def from_config(cls, config: SynthConfig) -> "SyntheticSpec":
        return cls(
            length=config.length,
            frame_size=tuple(config.frame_size),  # type: ignore[arg-type]
            object_kind=ObjectKind(config.object_kind),
            motion=MotionKind(config.motion),
            corruption=Corruption(config.corruption),
            severity=config.severity,
            schedule=config.schedule,
        )


def severity_at(schedule: str, severity: float, index: int, length: int) -> float:
    """Severity for frame ``index``: constant, or linear from 0 to ``severity``."""
    if schedule == "ramp":
        return severity * index / max(length - 1, 1)
    return severity


def apply_corruption(
    frame: np.ndarray,
    corruption: Corruption,
    severity: float,
    rng: np.random.Generator,
    clip: bool = True,
) -> np.ndarray:
    """Corrupt one H x W x 3 float frame.

    ``brightness`` adds ``severity``; ``blur`` applies a Gaussian of sigma
    ``severity``; ``noise`` adds zero-mean Gaussian noise of std ``severity``.
    """
    if corruption is Corruption.NONE or severity == 0.0:
        out = frame.copy()
    elif corruption is Corruption.BRIGHTNESS:
        out = frame + np.float32(severity)
    elif corruption is Corruption.BLUR:
        out = cv2.GaussianBlur(frame, (0, 0), sigmaX=float(severity))
    else:
        out = frame + rng.normal(0.0, severity, size=frame.shape).astype(np.float32)
    if clip:
        out = np.clip(out, 0.0, 1.0)
    return out.astype(np.float32)


def _background(width: int, height: int, rng: np.random.Generator) -> np.ndarray:
    noise = rng.uniform(0.0, 1.0, size=(height, width, 3)).astype(np.float32)
    smooth = cv2.GaussianBlur(noise, (0, 0), sigmaX=6.0)
    smooth = (smooth - smooth.min()) / max(float(smooth.max() - smooth.min()), 1e-6)
    return (0.15 + 0.35 * smooth).astype(np.float32)


def _draw_object(
    frame: np.ndarray, box: BBox, kind: ObjectKind, color: np.ndarray, period: float
) -> None:
    height, width = frame.shape[:2]
    xs = np.arange(width, dtype=np.float64) + 0.5
    ys = np.arange(height, dtype=np.float64) + 0.5
    gx, gy = np.meshgrid(xs, ys)
    if kind is ObjectKind.ELLIPSE:
        cx, cy = box.center
        mask = ((gx - cx) / (box.width / 2.0)) ** 2 + ((gy - cy) / (box.height / 2.0)) ** 2 <= 1.0
    else:
        mask = (gx >= box.x_min) & (gx <= box.x_max) & (gy >= box.y_min) & (gy <= box.y_max)
    stripes = 0.5 + 0.5 * np.sin(2.0 * np.pi * ((gx - box.x_min) + (gy - box.y_min)) / period)
    texture = color[None, None, :] * (0.7 + 0.3 * stripes[..., None])
    frame[mask] = texture[mask].astype(np.float32)


def _trajectory(spec: SyntheticSpec, rng: np.random.Generator) -> List[BBox]:
    width, height = spec.frame_size
    w = float(rng.uniform(0.15, 0.3) * width)
    h = float(rng.uniform(0.15, 0.3) * height)
    start = (float(rng.uniform(0, width - w)), float(rng.uniform(0, height - h)))
    if spec.motion is MotionKind.STATIC:
        end = start
    else:
        end = (float(rng.uniform(0, width - w)), float(rng.uniform(0, height - h)))
    boxes: List[BBox] = []
    for t in range(spec.length):
        a = t / max(spec.length - 1, 1)
        x = start[0] + (end[0] - start[0]) * a
        y = start[1] + (end[1] - start[1]) * a
        boxes.append(BBox.from_xywh(x, y, w, h))
    return boxes


def synth_generate_sequence(
    spec: SyntheticSpec, rng: np.random.Generator, name: str = "synthetic"
) -> SequenceRecord:
    """Generate one in-memory sequence with exact ground-truth boxes.

    Args:
        spec: Shape, motion and corruption parameters.
        rng: Random generator; equal seeds give identical sequences.
        name: Sequence name.
    """
    width, height = spec.frame_size
    background = _background(width, height, rng)
    color = rng.uniform(0.55, 1.0, size=3)
    period = float(rng.uniform(6.0, 14.0))
    boxes = _trajectory(spec, rng)
    frames: List[np.ndarray] = []
    for index, box in enumerate(boxes):
        frame = background.copy()
        _draw_object(frame, box, spec.object_kind, color, period)
        level = severity_at(spec.schedule, spec.severity, index, spec.length)
        frames.append(apply_corruption(frame, spec.corruption, level, rng))
    return SequenceRecord(name, frames, boxes)


def generate_corpus(config: SynthConfig, out_dir: Path, seed: int = 0) -> List[Path]:
    """Write ``config.sequences`` synthetic sequences under ``out_dir``.

    Returns:
        Sequence directories in creation order.
    """
    spec = SyntheticSpec.from_config(config)
    rng = np.random.default_rng(seed)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: List[Path] = []
    for index in range(config.sequences):
        name = f"synthetic_{index:04d}"
        record = synth_generate_sequence(spec, rng, name=name)
        written.append(save_sequence(record, out_dir / name))
    logger.info("Wrote %d synthetic sequences to %s", len(written), out_dir)
    return written
