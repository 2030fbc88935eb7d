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
Training-tuple sampling.

For a random sequence, draw frame indices ``i <= k <= j <= i + delta``;
crop the static template at ``i``, the past search region and its centered
dynamic template at ``k``, and the augmented current search region at
``j``.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import torch
from torch import Tensor

from dualtrack.config.config_manager import AugmentParams, SamplingConfig
from dualtrack.core.constants import SEARCH_GRID, SEARCH_SIZE, TEMPLATE_SIZE
from dualtrack.core.exceptions import DataError, SequenceError
from dualtrack.core.geometry import BBox
from dualtrack.data.augment import apply_geometric_augment, color_jitter, draw_geometric
from dualtrack.data.crops import center_subpatch, crop_patch, crop_region, crop_window
from dualtrack.data.records import SequenceRecord
from dualtrack.losses.targets import classification_target_map

logger = logging.getLogger(__name__)


@dataclass
class TrainingTuple:
    """Four crops, the current-crop ground truth and its classification target.

    Attributes:
        static_template: I_T, 3 x 128 x 128.
        dynamic_template: I_D, 3 x 128 x 128, center of ``search``.
        search: I_S, 3 x 256 x 256.
        current: I_t, 3 x 256 x 256.
        gt_box: Target box in ``current`` coordinates.
        target: 1 x 16 x 16 classification map.
        indices: Frame indices (i, k, j).
    """

    static_template: np.ndarray
    dynamic_template: np.ndarray
    search: np.ndarray
    current: np.ndarray
    gt_box: BBox
    target: Tensor
    indices: Tuple[int, int, int]


class TrainingBatch(NamedTuple):
    """Stacked tensors for one optimizer step."""

    static_template: Tensor
    dynamic_template: Tensor
    search: Tensor
    current: Tensor
    gt_boxes: Tensor
    targets: Tensor


def draw_indices(length: int, delta: int, rng: np.random.Generator) -> Tuple[int, int, int]:
    """Draw ``(i, k, j)`` with ``i <= k <= j <= min(i + delta, length - 1)``."""
    if length < 2:
        raise SequenceError(f"Sequence of length {length} cannot be sampled")
    i = int(rng.integers(0, length))
    j = int(rng.integers(i, min(i + delta, length - 1) + 1))
    k = int(rng.integers(i, j + 1))
    return i, k, j


def sample_training_tuple(
    record: SequenceRecord,
    delta: int,
    aug: Optional[AugmentParams],
    rng: np.random.Generator,
) -> TrainingTuple:
    """Build one training tuple from ``record``.

    Args:
        record: Source sequence.
        delta: Maximum frame gap between ``i`` and ``j``.
        aug: Augmentation parameters (defaults when None).
        rng: Random generator; the only source of randomness.

    Raises:
        SequenceError: If the sequence is too short or holds degenerate boxes.
    """
    aug = aug or AugmentParams()
    i, k, j = draw_indices(len(record), delta, rng)

    static_template = crop_region(record.frame(i), record.boxes[i], aug.template_offset, TEMPLATE_SIZE)

    search = crop_region(record.frame(k), record.boxes[k], aug.search_offset, SEARCH_SIZE)
    dynamic_template = center_subpatch(search, TEMPLATE_SIZE)

    window = crop_window(record.boxes[j], aug.search_offset, SEARCH_SIZE)
    window = apply_geometric_augment(window, draw_geometric(aug, rng))
    current = color_jitter(crop_patch(record.frame(j), window), aug.color_strength, rng)
    gt_box = window.to_crop(record.boxes[j]).clamp(SEARCH_SIZE, SEARCH_SIZE)

    return TrainingTuple(
        static_template=static_template,
        dynamic_template=dynamic_template,
        search=search,
        current=current,
        gt_box=gt_box,
        target=classification_target_map(gt_box, SEARCH_GRID, SEARCH_SIZE),
        indices=(i, k, j),
    )


def collate(tuples: Sequence[TrainingTuple]) -> TrainingBatch:
    """Stack tuples into float32 tensors."""

    def _stack(name: str) -> Tensor:
        return torch.from_numpy(np.stack([getattr(t, name) for t in tuples]).astype(np.float32))

    return TrainingBatch(
        static_template=_stack("static_template"),
        dynamic_template=_stack("dynamic_template"),
        search=_stack("search"),
        current=_stack("current"),
        gt_boxes=torch.tensor([t.gt_box.as_tuple() for t in tuples], dtype=torch.float32),
        targets=torch.stack([t.target for t in tuples]),
    )


class TupleSampler:
    """Draws tuples from one or more named datasets.

    Each draw first picks a dataset in proportion to its weight (equal
    weights for names missing from ``config.dataset_weights``), then a
    sequence uniformly, then frames per ``sample_training_tuple``. A
    sampler owns its generator and must not be shared between threads.

    Example:
        >>> sampler = TupleSampler({"synthetic": records}, SamplingConfig(), seed=0)
        >>> batch = sampler.batch(8)
    """

    def __init__(
        self,
        datasets: Mapping[str, List[SequenceRecord]],
        config: Optional[SamplingConfig] = None,
        seed: int = 0,
    ):
        self.config = config or SamplingConfig()
        self._datasets: Dict[str, List[SequenceRecord]] = {k: v for k, v in datasets.items() if v}
        if not self._datasets:
            raise DataError("No sequences to sample from")
        names = sorted(self._datasets)
        weights = np.array([float(self.config.dataset_weights.get(n, 1.0)) for n in names])
        if weights.sum() <= 0:
            raise DataError("Dataset weights must not all be zero")
        self._names = names
        self._probabilities = weights / weights.sum()
        self.rng = np.random.default_rng(seed)
        logger.debug("Sampler over %s with probabilities %s", names, self._probabilities.tolist())

    def sample(self) -> TrainingTuple:
        name = self._names[int(self.rng.choice(len(self._names), p=self._probabilities))]
        records = self._datasets[name]
        record = records[int(self.rng.integers(0, len(records)))]
        return sample_training_tuple(record, self.config.delta, self.config.augment, self.rng)

    def batch(self, size: int) -> TrainingBatch:
        return collate([self.sample() for _ in range(size)])
