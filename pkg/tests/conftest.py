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
"""Shared fixtures: a tiny network configuration and short synthetic sequences."""

import numpy as np
import pytest
import torch

from dualtrack.config.config_manager import AppConfig, BackboneConfig, HeadConfig, TrainingConfig
from dualtrack.data.synthetic import SyntheticSpec, synth_generate_sequence
from dualtrack.model.network import DualTrackNet

TINY_CONFIG = {
    "backbone": {"stage_channels": [4, 8, 8, 8], "width": 16},
    "heads": {"channels": 16},
    "training": {"batch_size": 2, "steps": 2, "log_every": 1},
}


def make_tiny_config(**overrides) -> AppConfig:
    config = AppConfig(
        backbone=BackboneConfig(stage_channels=(4, 8, 8, 8), width=16),
        heads=HeadConfig(channels=16),
        training=TrainingConfig(batch_size=2, steps=2, log_every=1),
    )
    for name, value in overrides.items():
        setattr(config, name, value)
    return config.validate()


@pytest.fixture(autouse=True)
def _isolated_environment(monkeypatch, tmp_path):
    """Keep DUALTRACK_* variables and .env files of the host out of the tests."""
    import os

    for key in list(os.environ):
        if key.startswith("DUALTRACK_"):
            monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("DUALTRACK_LOG_DIR", str(tmp_path / "logs"))
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def tiny_config() -> AppConfig:
    return make_tiny_config()


@pytest.fixture
def tiny_model(tiny_config) -> DualTrackNet:
    torch.manual_seed(0)
    return DualTrackNet(tiny_config).eval()


@pytest.fixture
def short_record():
    spec = SyntheticSpec(length=6, frame_size=(160, 120))
    return synth_generate_sequence(spec, np.random.default_rng(0), name="short")


@pytest.fixture
def config_factory():
    """Callable building a fresh tiny configuration on every call."""
    return make_tiny_config
