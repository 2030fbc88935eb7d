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
import numpy as np
import pytest
import torch

from dualtrack.config.config_manager import AugmentParams, SamplingConfig
from dualtrack.core.exceptions import DataError, SequenceError
from dualtrack.core.geometry import BBox
from dualtrack.data.records import SequenceRecord
from dualtrack.data.sampler import TupleSampler, draw_indices, sample_training_tuple
from dualtrack.losses.targets import classification_target_map


class TestDrawIndices:
    @pytest.mark.parametrize("length, delta", [(2, 150), (50, 10), (300, 150), (20, 0)])
    def test_index_law(self, length, delta):
        rng = np.random.default_rng(0)
        for _ in range(2000):
            i, k, j = draw_indices(length, delta, rng)
            assert 0 <= i <= k <= j <= min(i + delta, length - 1)

    def test_zero_delta(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            i, k, j = draw_indices(10, 0, rng)
            assert i == k == j

    def test_two_frames(self):
        rng = np.random.default_rng(2)
        seen = {draw_indices(2, 150, rng) for _ in range(500)}
        assert seen <= {(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)}
        assert (0, 0, 1) in seen

    def test_too_short(self):
        with pytest.raises(SequenceError):
            draw_indices(1, 5, np.random.default_rng(0))


class TestSampleTrainingTuple:
    def test_shapes(self, short_record):
        sample = sample_training_tuple(short_record, 150, AugmentParams(), np.random.default_rng(0))
        assert sample.static_template.shape == (3, 128, 128)
        assert sample.dynamic_template.shape == (3, 128, 128)
        assert sample.search.shape == (3, 256, 256)
        assert sample.current.shape == (3, 256, 256)
        assert sample.target.shape == (1, 16, 16)

    def test_dynamic_template_is_center_of_search(self, short_record):
        sample = sample_training_tuple(short_record, 150, AugmentParams(), np.random.default_rng(1))
        assert np.array_equal(sample.dynamic_template, sample.search[:, 64:192, 64:192])

    def test_target_matches_gt(self, short_record):
        sample = sample_training_tuple(short_record, 150, AugmentParams(), np.random.default_rng(2))
        assert torch.equal(sample.target, classification_target_map(sample.gt_box))
        assert 0.0 <= sample.gt_box.x_min <= sample.gt_box.x_max <= 256.0

    def test_deterministic(self, short_record):
        first = sample_training_tuple(short_record, 150, AugmentParams(), np.random.default_rng(3))
        second = sample_training_tuple(short_record, 150, AugmentParams(), np.random.default_rng(3))
        assert first.indices == second.indices
        assert first.gt_box == second.gt_box
        for name in ("static_template", "dynamic_template", "search", "current"):
            assert np.array_equal(getattr(first, name), getattr(second, name))

    def test_zero_delta_single_frame(self, short_record):
        sample = sample_training_tuple(short_record, 0, AugmentParams(), np.random.default_rng(4))
        i, k, j = sample.indices
        assert i == k == j

    def test_degenerate_box(self):
        frames = [np.zeros((64, 64, 3), dtype=np.float32)] * 2
        record = SequenceRecord("flat", frames, [BBox(10, 10, 10, 30), BBox(10, 10, 10, 30)])
        with pytest.raises(SequenceError):
            sample_training_tuple(record, 5, AugmentParams(), np.random.default_rng(0))


class TestTupleSampler:
    def test_batch(self, short_record):
        sampler = TupleSampler({"synthetic": [short_record]}, SamplingConfig(), seed=0)
        batch = sampler.batch(3)
        assert batch.static_template.shape == (3, 3, 128, 128)
        assert batch.current.shape == (3, 3, 256, 256)
        assert batch.gt_boxes.shape == (3, 4)
        assert batch.targets.shape == (3, 1, 16, 16)
        assert batch.search.dtype == torch.float32

    def test_seeded(self, short_record):
        first = TupleSampler({"synthetic": [short_record]}, seed=5).batch(2)
        second = TupleSampler({"synthetic": [short_record]}, seed=5).batch(2)
        assert torch.equal(first.current, second.current)
        assert torch.equal(first.gt_boxes, second.gt_boxes)

    def test_weights(self, short_record):
        other = SequenceRecord("other", short_record.frames, short_record.boxes)
        config = SamplingConfig(dataset_weights={"a": 1.0, "b": 0.0})
        sampler = TupleSampler({"a": [short_record], "b": [other]}, config, seed=0)
        assert sampler._probabilities.tolist() == [1.0, 0.0]

    def test_empty(self):
        with pytest.raises(DataError):
            TupleSampler({"synthetic": []})
