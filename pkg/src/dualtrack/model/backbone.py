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
Shared-weight feature extractor.

Four stride-2 convolution stages bring a 128x128 template or 256x256 search
patch down to an 8x8 or 16x16 map; a linear 1x1 adapter sets the channel
count to the working width.
"""

import logging
from typing import Optional

import torch
from torch import Tensor, nn

from dualtrack.config.config_manager import BackboneConfig
from dualtrack.core.constants import FEATURE_STRIDE, LEGAL_PATCH_SIZES
from dualtrack.core.exceptions import ShapeError

logger = logging.getLogger(__name__)


class ChannelAdapter(nn.Module):
    """1x1 convolution without activation mapping stage width to working width."""

    def __init__(self, in_channels: int, out_channels: int):
        super().__init__()
        self.in_channels = in_channels
        self.out_channels = out_channels
        self.proj = nn.Conv2d(in_channels, out_channels, kernel_size=1)

    def reset_to_identity(self) -> None:
        """Set the projection to the identity map (widths must match)."""
        if self.in_channels != self.out_channels:
            raise ShapeError(
                "Identity adapter needs equal widths",
                expected=(self.in_channels,),
                actual=(self.out_channels,),
            )
        with torch.no_grad():
            self.proj.weight.copy_(torch.eye(self.in_channels).view_as(self.proj.weight))
            self.proj.bias.zero_()

    def forward(self, f: Tensor) -> Tensor:
        if f.dim() != 4 or f.shape[1] != self.in_channels:
            raise ShapeError(
                f"Adapter expects N x {self.in_channels} x h x w, got {tuple(f.shape)}",
                expected=(self.in_channels,),
                actual=tuple(f.shape),
            )
        return self.proj(f)


def _stage(in_channels: int, out_channels: int, bn_momentum: float) -> nn.Sequential:
    return nn.Sequential(
        nn.Conv2d(in_channels, out_channels, kernel_size=3, stride=2, padding=1, bias=False),
        nn.BatchNorm2d(out_channels, momentum=bn_momentum),
        nn.ReLU(inplace=True),
    )


class Backbone(nn.Module):
    """Stride-16 convolutional feature extractor shared by all four inputs.

    Attributes:
        width: Working channel width C of every output map.
        stride: Pixels per output cell (always 16).
    """

    stride = FEATURE_STRIDE

    def __init__(self, config: Optional[BackboneConfig] = None, bn_momentum: float = 0.1):
        """Build the stages and the channel adapter.

        Args:
            config: Stage widths and working width.
            bn_momentum: Running-statistics momentum of the stage BN layers.
        """
        super().__init__()
        config = config or BackboneConfig()
        widths = (3, *config.stage_channels)
        if len(config.stage_channels) != 4:
            raise ShapeError(
                "Backbone needs exactly four stride-2 stages",
                expected=(4,),
                actual=(len(config.stage_channels),),
            )
        self.width = config.width
        self.stages = nn.Sequential(
            *(_stage(widths[i], widths[i + 1], bn_momentum) for i in range(len(config.stage_channels)))
        )
        self.adapter = ChannelAdapter(widths[-1], config.width)

    @staticmethod
    def check_patch(patch: Tensor) -> None:
        """Raise ShapeError unless ``patch`` is N x 3 x S x S with a legal S."""
        if (
            patch.dim() != 4
            or patch.shape[1] != 3
            or patch.shape[2] != patch.shape[3]
            or patch.shape[2] not in LEGAL_PATCH_SIZES
        ):
            raise ShapeError(
                f"Illegal image patch shape {tuple(patch.shape)}",
                expected=LEGAL_PATCH_SIZES,
                actual=tuple(patch.shape),
            )

    def forward(self, patch: Tensor) -> Tensor:
        self.check_patch(patch)
        return self.adapter(self.stages(patch))
