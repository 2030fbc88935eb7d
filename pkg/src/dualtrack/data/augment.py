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
"""Geometric and color augmentation of crop requests and patches."""

from dataclasses import dataclass

import numpy as np

from dualtrack.config.config_manager import AugmentParams
from dualtrack.data.crops import CropWindow


@dataclass(frozen=True)
class GeometricDraw:
    """One draw of the scale factor and the two shift factors."""

    scale: float = 1.0
    shift_x: float = 1.0
    shift_y: float = 1.0


def draw_geometric(params: AugmentParams, rng: np.random.Generator) -> GeometricDraw:
    lo, hi = params.scale_range
    s_lo, s_hi = params.shift_range
    return GeometricDraw(
        scale=float(rng.uniform(lo, hi)),
        shift_x=float(rng.uniform(s_lo, s_hi)),
        shift_y=float(rng.uniform(s_lo, s_hi)),
    )


def apply_geometric_augment(window: CropWindow, draw: GeometricDraw) -> CropWindow:
    """Scale the crop side and shift its center.

    The side is multiplied by ``draw.scale``. The center, expressed in the
    original crop's own coordinates (``side / 2`` on each axis), is
    multiplied by ``draw.shift_x`` / ``draw.shift_y``.
    """
    half = window.side / 2.0
    return CropWindow(
        cx=window.cx + (draw.shift_x - 1.0) * half,
        cy=window.cy + (draw.shift_y - 1.0) * half,
        side=window.side * draw.scale,
        out_size=window.out_size,
    )


def color_jitter(patch: np.ndarray, strength: float, rng: np.random.Generator) -> np.ndarray:
    """Per-channel gain in [0.9, 1.1] plus a brightness shift in [-0.05, 0.05].

    Both ranges are scaled by ``strength``; the result is clipped to [0, 1].
    """
    gain = rng.uniform(1.0 - 0.1 * strength, 1.0 + 0.1 * strength, size=(patch.shape[0], 1, 1))
    shift = rng.uniform(-0.05 * strength, 0.05 * strength)
    return np.clip(patch * gain + shift, 0.0, 1.0).astype(np.float32)
