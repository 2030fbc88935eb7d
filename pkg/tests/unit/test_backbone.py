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
import pytest
import torch

from dualtrack.config.config_manager import BackboneConfig
from dualtrack.core.exceptions import ShapeError
from dualtrack.model.backbone import Backbone, ChannelAdapter


class TestChannelAdapter:
    def test_shape(self):
        adapter = ChannelAdapter(96, 128)
        assert adapter(torch.randn(1, 96, 16, 16)).shape == (1, 128, 16, 16)

    def test_identity(self):
        adapter = ChannelAdapter(8, 8)
        adapter.reset_to_identity()
        f = torch.randn(2, 8, 5, 5)
        assert torch.equal(adapter(f), f)

    def test_identity_needs_equal_widths(self):
        with pytest.raises(ShapeError):
            ChannelAdapter(8, 4).reset_to_identity()

    def test_per_pixel_oracle(self):
        torch.manual_seed(1)
        adapter = ChannelAdapter(6, 4).double()
        f = torch.randn(1, 6, 3, 3, dtype=torch.float64)
        out = adapter(f)
        weight = adapter.proj.weight[:, :, 0, 0]
        bias = adapter.proj.bias
        for i in range(3):
            for j in range(3):
                for o in range(4):
                    expected = sum(weight[o, c] * f[0, c, i, j] for c in range(6)) + bias[o]
                    assert abs(float(out[0, o, i, j] - expected)) <= 1e-10

    def test_wrong_width(self):
        with pytest.raises(ShapeError):
            ChannelAdapter(6, 4)(torch.randn(1, 5, 3, 3))


class TestBackbone:
    @pytest.fixture
    def backbone(self):
        torch.manual_seed(0)
        return Backbone(BackboneConfig(stage_channels=(4, 8, 8, 8), width=16)).eval()

    def test_search_stride(self, backbone):
        assert backbone(torch.rand(1, 3, 256, 256)).shape == (1, 16, 16, 16)

    def test_template_stride(self, backbone):
        assert backbone(torch.rand(2, 3, 128, 128)).shape == (2, 16, 8, 8)

    def test_illegal_size(self, backbone):
        with pytest.raises(ShapeError):
            backbone(torch.rand(1, 3, 100, 100))
        with pytest.raises(ShapeError):
            backbone(torch.rand(1, 1, 128, 128))
        with pytest.raises(ShapeError):
            backbone(torch.rand(1, 3, 128, 256))

    def test_shared_branches_identical(self, backbone):
        patch = torch.rand(1, 3, 128, 128)
        assert torch.equal(backbone(patch), backbone(patch.clone()))

    def test_stage_count(self):
        with pytest.raises(ShapeError):
            Backbone(BackboneConfig(stage_channels=(4, 8, 8), width=16))

    def test_default_width(self):
        assert Backbone().width == 128
        assert Backbone.stride == 16
