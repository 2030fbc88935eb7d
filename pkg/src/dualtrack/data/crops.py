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
Crop geometry.

A ``CropWindow`` is a square region of a frame (center and side in frame
pixels) resampled to ``out_size`` pixels. Boxes map between frame and crop
coordinates with ``(x - origin) * scale`` and its inverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import cv2
import numpy as np

from dualtrack.core.exceptions import SequenceError
from dualtrack.core.geometry import BBox


@dataclass(frozen=True)
class CropWindow:
    """Square crop request.

    Attributes:
        cx: Center x in frame pixels.
        cy: Center y in frame pixels.
        side: Side length in frame pixels.
        out_size: Side of the resampled patch.
    """

    cx: float
    cy: float
    side: float
    out_size: int

    def __post_init__(self) -> None:
        if not (self.side > 0 and math.isfinite(self.side)):
            raise SequenceError(f"Crop side must be positive, got {self.side}")

    @property
    def scale(self) -> float:
        """Patch pixels per frame pixel."""
        return self.out_size / self.side

    @property
    def origin(self) -> Tuple[float, float]:
        return self.cx - self.side / 2.0, self.cy - self.side / 2.0

    def to_crop(self, box: BBox) -> BBox:
        """Express a frame box in patch coordinates."""
        x0, y0 = self.origin
        return box.translate(-x0, -y0).scale(self.scale)

    def to_frame(self, box: BBox) -> BBox:
        """Express a patch box in frame coordinates."""
        x0, y0 = self.origin
        return box.scale(1.0 / self.scale).translate(x0, y0)

    def affine(self) -> np.ndarray:
        """2x3 matrix mapping frame pixel centers to patch pixel centers."""
        s = self.scale
        x0, y0 = self.origin
        return np.array(
            [[s, 0.0, -x0 * s + 0.5 * s - 0.5], [0.0, s, -y0 * s + 0.5 * s - 0.5]],
            dtype=np.float64,
        )


def context_side(box: BBox, context_offset: float) -> float:
    """Side ``sqrt((w + m)(h + m))`` with ``m = context_offset * (w + h) / 2``."""
    margin = context_offset * (box.width + box.height) / 2.0
    return math.sqrt((box.width + margin) * (box.height + margin))


def crop_window(box: BBox, context_offset: float, out_size: int) -> CropWindow:
    """Crop request centered on ``box`` with the context-padded side.

    Raises:
        SequenceError: If the box has zero area.

    Example:
        >>> w = crop_window(BBox(100, 100, 140, 140), 2.0, 256)
        >>> (w.side, w.cx, w.cy)
        (120.0, 120.0, 120.0)
    """
    box.require_valid()
    cx, cy = box.center
    return CropWindow(cx, cy, context_side(box, context_offset), out_size)


def crop_patch(frame: np.ndarray, window: CropWindow) -> np.ndarray:
    """Resample ``window`` from an H x W x 3 frame into a 3 x out x out patch.

    Regions outside the frame are zero.
    """
    patch = cv2.warpAffine(
        frame,
        window.affine(),
        (window.out_size, window.out_size),
        flags=cv2.INTER_LINEAR,
        borderMode=cv2.BORDER_CONSTANT,
        borderValue=(0.0, 0.0, 0.0),
    )
    return np.ascontiguousarray(patch.transpose(2, 0, 1), dtype=np.float32)


def crop_region(frame: np.ndarray, box: BBox, context_offset: float, out_size: int) -> np.ndarray:
    """Square context crop around ``box`` resized to ``out_size``."""
    return crop_patch(frame, crop_window(box, context_offset, out_size))


def center_subpatch(patch: np.ndarray, size: int) -> np.ndarray:
    """Centered ``size`` x ``size`` sub-patch of a 3 x S x S patch."""
    full = patch.shape[-1]
    start = (full - size) // 2
    return patch[:, start : start + size, start : start + size].copy()
