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
import io

import pytest
import torch
import zstandard as zstd

from dualtrack.core.constants import CHECKPOINT_MAGIC
from dualtrack.core.exceptions import CheckpointError
from dualtrack.losses.relation import ProjectionHeads
from dualtrack.training.checkpoint import load_model, read_checkpoint, save_checkpoint


def _write_payload(path, payload):
    buffer = io.BytesIO()
    torch.save(payload, buffer)
    path.write_bytes(zstd.ZstdCompressor().compress(buffer.getvalue()))


class TestCheckpoint:
    def test_round_trip(self, tmp_path, tiny_config, tiny_model):
        with torch.no_grad():
            for _, layer in tiny_model.heads.norm_layers():
                layer.running_mean.fill_(0.25)
        path = save_checkpoint(
            tmp_path / "model.dtk", tiny_model, tiny_config, ProjectionHeads(16), metadata={"steps": 3}
        )
        checkpoint = read_checkpoint(path)
        assert checkpoint.config == tiny_config
        assert checkpoint.metadata == {"steps": 3}
        assert checkpoint.projection_state is not None

        model, config = load_model(path)
        assert config.backbone.width == 16
        assert not model.training
        for name, tensor in tiny_model.state_dict().items():
            assert torch.equal(model.state_dict()[name], tensor)

    def test_no_temporary_left(self, tmp_path, tiny_config, tiny_model):
        save_checkpoint(tmp_path / "model.dtk", tiny_model, tiny_config)
        assert [p.name for p in tmp_path.iterdir()] == ["model.dtk"]

    def test_missing(self, tmp_path):
        with pytest.raises(CheckpointError):
            read_checkpoint(tmp_path / "missing.dtk")

    def test_corrupt(self, tmp_path):
        path = tmp_path / "bad.dtk"
        path.write_bytes(b"garbage")
        with pytest.raises(CheckpointError):
            read_checkpoint(path)

    def test_wrong_magic(self, tmp_path):
        path = tmp_path / "other.dtk"
        _write_payload(path, {"magic": "something-else", "format_version": "1.0"})
        with pytest.raises(CheckpointError):
            read_checkpoint(path)

    def test_incompatible_major(self, tmp_path):
        path = tmp_path / "future.dtk"
        _write_payload(path, {"magic": CHECKPOINT_MAGIC, "format_version": "2.0", "config": {}, "model": {}})
        with pytest.raises(CheckpointError, match="incompatible"):
            read_checkpoint(path)

    def test_newer_minor_warns(self, tmp_path, caplog):
        path = tmp_path / "minor.dtk"
        _write_payload(path, {"magic": CHECKPOINT_MAGIC, "format_version": "1.7", "config": {}, "model": {}})
        checkpoint = read_checkpoint(path)
        assert checkpoint.format_version == "1.7"
        assert "newer format" in caplog.text

    def test_mismatched_weights(self, tmp_path, tiny_config, tiny_model):
        path = tmp_path / "model.dtk"
        config = tiny_config
        save_checkpoint(path, tiny_model, config)
        payload = read_checkpoint(path)
        payload.config.backbone.width = 32
        _write_payload(
            path,
            {
                "magic": CHECKPOINT_MAGIC,
                "format_version": "1.0",
                "config": payload.config.to_dict(),
                "model": payload.model_state,
            },
        )
        with pytest.raises(CheckpointError):
            load_model(path)
