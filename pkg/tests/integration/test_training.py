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
import json

import pytest
import torch

from dualtrack.core.exceptions import NonFiniteLossError
from dualtrack.data.sampler import TupleSampler
from dualtrack.training.checkpoint import read_checkpoint
from dualtrack.training.trainer import Trainer


@pytest.fixture
def sampler(short_record, tiny_config):
    return TupleSampler({"synthetic": [short_record]}, tiny_config.sampling, seed=0)


@pytest.fixture
def fixed_batch(sampler):
    return sampler.batch(2)


class TestForwardTraining:
    def test_intermediate_shapes(self, tiny_config, fixed_batch):
        outputs = Trainer(tiny_config).forward_training(fixed_batch)
        assert outputs.template_repr.shape == (2, 16, 8, 8)
        assert outputs.search_repr.shape == (2, 16, 16, 16)
        assert outputs.current_features.shape == (2, 16, 16, 16)
        assert outputs.heads.cls.shape == (2, 1, 16, 16)
        assert outputs.heads.box.shape == (2, 4, 16, 16)

    def test_repeatable(self, tiny_config, fixed_batch):
        trainer = Trainer(tiny_config)
        trainer.model.eval()
        first = trainer.forward_training(fixed_batch)
        second = trainer.forward_training(fixed_batch)
        assert torch.equal(first.template_repr, second.template_repr)
        assert torch.equal(first.heads.box, second.heads.box)


class TestTrainerStep:
    def test_same_seed_same_weights(self, config_factory, fixed_batch):
        first = Trainer(config_factory())
        second = Trainer(config_factory())
        first.step(fixed_batch)
        second.step(fixed_batch)
        for (name, a), (_, b) in zip(first.model.state_dict().items(), second.model.state_dict().items()):
            assert torch.equal(a, b), name

    def test_finite_gradients(self, tiny_config, fixed_batch):
        trainer = Trainer(tiny_config)
        trainer.step(fixed_batch)
        grads = [p.grad for p in trainer.trainable if p.grad is not None]
        assert grads
        assert all(bool(torch.isfinite(g).all()) for g in grads)

    def test_overfits_fixed_batch(self, config_factory, fixed_batch):
        config = config_factory()
        config.training.lr = 1e-3
        trainer = Trainer(config)
        losses = [float(trainer.step(fixed_batch).total) for _ in range(50)]
        assert sum(losses[-5:]) / 5 < losses[0]

    def test_non_finite_loss(self, tiny_config, fixed_batch):
        broken = fixed_batch._replace(current=torch.full_like(fixed_batch.current, float("nan")))
        with pytest.raises(NonFiniteLossError) as info:
            Trainer(tiny_config).step(broken, step_index=7)
        assert info.value.step == 7

    def test_running_statistics_follow_momentum(self, tiny_config, fixed_batch):
        trainer = Trainer(tiny_config)
        layer = trainer.model.heads.cls.blocks[0].norm
        before = layer.running_mean.clone()
        trainer.step(fixed_batch)
        assert not torch.equal(layer.running_mean, before)
        assert int(layer.num_batches_tracked) == 1


class TestFit:
    def test_log_and_checkpoint(self, tmp_path, tiny_config, sampler):
        trainer = Trainer(tiny_config)
        result = trainer.fit(sampler, steps=3, log_path=tmp_path / "loss.jsonl")
        assert result.steps == 3
        assert len(result.history) == 3
        lines = [json.loads(line) for line in (tmp_path / "loss.jsonl").read_text().splitlines()]
        assert lines[0]["event"] == "config"
        assert lines[0]["config"]["backbone"]["width"] == 16
        assert [line["step"] for line in lines[1:]] == [1, 2, 3]
        assert lines[-1]["total"] == result.final_loss

        path = trainer.save(tmp_path / "checkpoint.dtk", metadata={"steps": result.steps})
        checkpoint = read_checkpoint(path)
        for name, tensor in trainer.model.state_dict().items():
            assert torch.equal(checkpoint.model_state[name], tensor)
        assert not trainer.model.training

    def test_default_step_count(self, config_factory, sampler):
        config = config_factory()
        config.training.steps = 1
        config.training.epochs = 2
        assert Trainer(config).fit(sampler).steps == 2
