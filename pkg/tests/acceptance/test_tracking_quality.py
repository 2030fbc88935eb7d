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
"""End-to-end checks on a model trained on synthetic sequences.

These take minutes on a single CPU and run only with ``-m slow``.
"""

import pytest
import torch

from dualtrack.adaptation.stats import instance_statistics
from dualtrack.config.config_manager import AppConfig, SynthConfig
from dualtrack.core.interfaces import AdaptMode, Corruption
from dualtrack.data.records import load_dataset
from dualtrack.data.sampler import TupleSampler
from dualtrack.data.synthetic import generate_corpus
from dualtrack.evaluation.ope import ope_run
from dualtrack.tracking.tracker import Tracker
from dualtrack.training.trainer import Trainer

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def trained(tmp_path_factory):
    root = tmp_path_factory.mktemp("overfit")
    config = AppConfig().validate()
    generate_corpus(SynthConfig(sequences=20, length=100), root / "train", seed=0)
    records = load_dataset(root / "train")
    trainer = Trainer(config)
    trainer.fit(TupleSampler({"synthetic": records}, config.sampling, seed=config.seed))
    return root, config, trainer.model


def _with_mode(config: AppConfig, mode: AdaptMode) -> AppConfig:
    adapted = AppConfig.from_dict(config.to_dict())
    adapted.adaptation.mode = mode.value
    return adapted.validate()


class TestOverfit:
    def test_training_sequences_are_tracked(self, trained):
        root, config, model = trained
        report = ope_run(Tracker(model, config), root / "train")
        assert report.aggregate.mean_iou >= 0.5
        assert report.aggregate.auc >= 0.45


class TestBrightnessShift:
    @pytest.fixture(scope="class")
    def shifted(self, trained):
        root, _, _ = trained
        synth = SynthConfig(sequences=5, length=100, corruption=Corruption.BRIGHTNESS.value, severity=0.4)
        generate_corpus(synth, root / "shifted", seed=1)
        return root / "shifted"

    def test_adaptation_keeps_accuracy(self, trained, shifted):
        _, config, model = trained
        plain = ope_run(Tracker(model, _with_mode(config, AdaptMode.OFF)), shifted)
        adapted = ope_run(Tracker(model, _with_mode(config, AdaptMode.DTTA)), shifted)
        assert adapted.aggregate.auc >= plain.aggregate.auc - 0.01

    def test_means_move_toward_instance(self, trained, shifted):
        _, config, model = trained
        tracker = Tracker(model, _with_mode(config, AdaptMode.DTTA))
        record = load_dataset(shifted)[0]

        instance_means = {}
        handles = []
        for key, layer in model.heads.norm_layers():

            def capture(module, args, key=key):
                instance_means[key] = instance_statistics(args[0])[0]

            handles.append(layer.register_forward_pre_hook(capture))
        try:
            state = tracker.init(record.frame(0), record.boxes[0])
            for index in range(1, len(record)):
                tracker.track(state, record.frame(index))
        finally:
            for handle in handles:
                handle.remove()

        closer = total = 0
        for key, stats in state.adapter.layer_stats.items():
            target = instance_means[key]
            before = (stats.source_mean - target).abs()
            after = (stats.adapted_mean - target).abs()
            moved = before > 0
            closer += int((after[moved] < before[moved]).sum())
            total += int(moved.sum())
        assert total > 0
        assert closer / total >= 0.9
        assert all(torch.isfinite(s.adapted_mean).all() for s in state.adapter.layer_stats.values())
