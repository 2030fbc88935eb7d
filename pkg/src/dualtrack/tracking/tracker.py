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
Online tracker.

``Tracker.init`` cuts the static template, the dynamic search region and
its centered dynamic template from the first frame and caches their
features. ``Tracker.track`` crops a search region around the previous box,
runs the network (with test-time normalization when configured), decodes
the best cell back to frame coordinates and advances the dynamic update
schedule.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import torch
from torch import Tensor

from dualtrack.adaptation import create_adapter
from dualtrack.config.config_manager import AppConfig, AugmentParams
from dualtrack.core.constants import SEARCH_GRID, SEARCH_SIZE, TEMPLATE_SIZE
from dualtrack.core.geometry import BBox
from dualtrack.core.utils import patch_to_tensor
from dualtrack.data.crops import center_subpatch, crop_patch, crop_region, crop_window
from dualtrack.data.records import SequenceRecord
from dualtrack.model.heads import decode_prediction, hann_window
from dualtrack.model.network import DualTrackNet
from dualtrack.tracking.results import SequenceResult
from dualtrack.tracking.state import TrackState
from dualtrack.tracking.update import dynamic_update_check

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrameResult:
    """Tracker output for one frame."""

    box: BBox
    score: float
    updated: bool


class Tracker:
    """Runs a trained network over sequences.

    The network is put in eval mode and never modified; all per-sequence
    memory lives in ``TrackState``, so one tracker can serve several
    sequences as long as each state has a single caller.

    Attributes:
        model: Network in eval mode.
        config: Application configuration.
        window: Cosine penalty window over the score grid.
    """

    def __init__(self, model: DualTrackNet, config: Optional[AppConfig] = None):
        self.model = model.eval()
        self.config = config or AppConfig()
        self.window = hann_window(SEARCH_GRID)

    @property
    def _augment(self) -> AugmentParams:
        return self.config.sampling.augment

    @torch.no_grad()
    def _dynamic_components(self, frame: np.ndarray, box: BBox) -> Tuple[Tensor, Tensor]:
        search = crop_region(frame, box, self._augment.search_offset, SEARCH_SIZE)
        dynamic = center_subpatch(search, TEMPLATE_SIZE)
        search_features = self.model.extract(patch_to_tensor(search))
        dynamic_features = self.model.extract(patch_to_tensor(dynamic))
        return search_features, dynamic_features

    @torch.no_grad()
    def init(self, frame: np.ndarray, box: BBox) -> TrackState:
        """Start a sequence from its first frame and box.

        Raises:
            SequenceError: If the box is degenerate.
        """
        box.require_valid()
        static = crop_region(frame, box, self._augment.template_offset, TEMPLATE_SIZE)
        static_features = self.model.extract(patch_to_tensor(static))
        search_features, dynamic_features = self._dynamic_components(frame, box)
        height, width = frame.shape[:2]
        return TrackState(
            static_features=static_features,
            template_repr=self.model.template_representation(static_features, dynamic_features),
            search_features=search_features,
            box=box,
            frame_size=(width, height),
            score_average=self.config.tracking.update.initial_average,
            adapter=create_adapter(self.config.adaptation.mode, self.config.adaptation),
        )

    @torch.no_grad()
    def refresh(self, state: TrackState, frame: np.ndarray, box: BBox) -> None:
        """Re-cut the dynamic search region and template at ``box`` and recompute caches."""
        search_features, dynamic_features = self._dynamic_components(frame, box)
        state.search_features = search_features
        state.template_repr = self.model.template_representation(state.static_features, dynamic_features)
        state.update_frames.append(state.frame_index)
        logger.debug("Dynamic update at frame %d", state.frame_index)

    @torch.no_grad()
    def track(self, state: TrackState, frame: np.ndarray) -> FrameResult:
        """Locate the target in the next frame and advance the state."""
        state.frame_index += 1
        window = crop_window(state.box, self._augment.search_offset, SEARCH_SIZE)
        current_features = self.model.extract(patch_to_tensor(crop_patch(frame, window)))
        search_repr = self.model.search_representation(current_features, state.search_features)
        outputs = self.model.predict(
            state.template_repr, search_repr, current_features, adapter=state.adapter
        )
        crop_box, score = decode_prediction(
            outputs, SEARCH_SIZE, self.window, self.config.heads.window_weight
        )
        width, height = state.frame_size
        box = window.to_frame(crop_box).clamp(width, height)
        if box.is_degenerate():
            box = state.box

        decision = dynamic_update_check(
            state.counter, state.score_average, score, self.config.tracking.update
        )
        if decision.update:
            self.refresh(state, frame, box)
        state.counter = decision.counter
        state.score_average = decision.score_average
        state.box = box
        return FrameResult(box, score, decision.update)

    def track_sequence(self, record: SequenceRecord) -> SequenceResult:
        """One-pass evaluation of a sequence from its first ground-truth box."""
        state = self.init(record.frame(0), record.boxes[0])
        boxes = [record.boxes[0]]
        scores = [1.0]
        for index in range(1, len(record)):
            result = self.track(state, record.frame(index))
            boxes.append(result.box)
            scores.append(result.score)
        logger.info(
            "Tracked %s: %d frames, %d dynamic updates", record.name, len(record), len(state.update_frames)
        )
        return SequenceResult(record.name, boxes, scores, list(state.update_frames))
