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
"""Per-sequence tracker memory."""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from torch import Tensor

from dualtrack.adaptation.base import NormAdapter
from dualtrack.core.geometry import BBox


@dataclass
class TrackState:
    """Everything the tracker carries from one frame to the next.

    A state belongs to exactly one sequence and must not be shared between
    concurrent callers.

    Attributes:
        static_features: F_T of the first-frame template; never replaced.
        template_repr: Cached filtered dual template.
        search_features: F_S of the most recent dynamic search region.
        box: Last output box in frame coordinates.
        frame_size: (width, height) of the frames.
        score_average: Running average of classification scores.
        counter: Frames since the last dynamic update.
        frame_index: Index of the last processed frame.
        adapter: Per-sequence normalization session, None when frozen.
        update_frames: Frame indices at which the dynamic components were refreshed.
    """

    static_features: Tensor
    template_repr: Tensor
    search_features: Tensor
    box: BBox
    frame_size: Tuple[int, int]
    score_average: float = 1.0
    counter: int = 0
    frame_index: int = 0
    adapter: Optional[NormAdapter] = None
    update_frames: List[int] = field(default_factory=list)
