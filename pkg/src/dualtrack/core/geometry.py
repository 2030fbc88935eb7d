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
"""Axis-aligned boxes in pixel coordinates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Tuple

from dualtrack.core.exceptions import SequenceError


@dataclass(frozen=True)
class BBox:
    """Axis-aligned box (x_min, y_min, x_max, y_max) in pixels.

    Attributes:
        x_min: Left edge.
        y_min: Top edge.
        x_max: Right edge.
        y_max: Bottom edge.
    """

    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self) -> None:
        if not (self.x_min <= self.x_max and self.y_min <= self.y_max):
            raise SequenceError(f"Inverted box: {self}")

    @classmethod
    def from_xywh(cls, x: float, y: float, w: float, h: float) -> "BBox":
        """Build a box from OTB-style (x, y, w, h)."""
        return cls(float(x), float(y), float(x + w), float(y + h))

    @classmethod
    def from_corners(cls, corners: Iterable[float]) -> "BBox":
        """Build a box from any two corners, sorting each axis."""
        x0, y0, x1, y1 = (float(v) for v in corners)
        return cls(min(x0, x1), min(y0, y1), max(x0, x1), max(y0, y1))

    @classmethod
    def from_center(cls, cx: float, cy: float, w: float, h: float) -> "BBox":
        """Build a box from its center and size."""
        return cls(cx - w / 2.0, cy - h / 2.0, cx + w / 2.0, cy + h / 2.0)

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def center(self) -> Tuple[float, float]:
        return (self.x_min + self.x_max) / 2.0, (self.y_min + self.y_max) / 2.0

    def is_degenerate(self) -> bool:
        """Return True when the box has zero area."""
        return self.width <= 0.0 or self.height <= 0.0

    def require_valid(self) -> "BBox":
        """Return self, raising if the box has zero area or non-finite corners."""
        if not all(math.isfinite(v) for v in self.as_tuple()):
            raise SequenceError(f"Non-finite box: {self}")
        if self.is_degenerate():
            raise SequenceError(f"Degenerate box: {self}")
        return self

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.x_min, self.y_min, self.x_max, self.y_max)

    def to_xywh(self) -> Tuple[float, float, float, float]:
        return (self.x_min, self.y_min, self.width, self.height)

    def scale(self, factor: float) -> "BBox":
        """Scale every coordinate about the origin."""
        return BBox(
            self.x_min * factor,
            self.y_min * factor,
            self.x_max * factor,
            self.y_max * factor,
        )

    def translate(self, dx: float, dy: float) -> "BBox":
        return BBox(self.x_min + dx, self.y_min + dy, self.x_max + dx, self.y_max + dy)

    def clamp(self, width: float, height: float) -> "BBox":
        """Clip the box to the rectangle [0, width] x [0, height]."""

        def _clip(v: float, hi: float) -> float:
            return min(max(v, 0.0), hi)

        return BBox(
            _clip(self.x_min, width),
            _clip(self.y_min, height),
            _clip(self.x_max, width),
            _clip(self.y_max, height),
        )

    def intersection(self, other: "BBox") -> float:
        """Area of the overlap with another box."""
        w = min(self.x_max, other.x_max) - max(self.x_min, other.x_min)
        h = min(self.y_max, other.y_max) - max(self.y_min, other.y_min)
        return max(w, 0.0) * max(h, 0.0)
