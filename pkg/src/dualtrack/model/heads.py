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
Classification and box-regression heads, plus prediction decoding.

Both heads stack separable-convolution blocks whose batch-norm layers are
``AdaptiveBatchNorm2d`` so that test-time adaptation can replace their
statistics per frame.
"""

from typing import Iterator, List, NamedTuple, Optional, Tuple

import numpy as np
import torch
from torch import Tensor, nn

from dualtrack.adaptation.base import AdaptiveBatchNorm2d, NormAdapter
from dualtrack.core.exceptions import ShapeError
from dualtrack.core.geometry import BBox


class HeadOutputs(NamedTuple):
    """Dense head predictions.

    Attributes:
        cls: N x 1 x h x w foreground confidences in (0, 1).
        box: N x 4 x h x w normalized corners (x_min, y_min, x_max, y_max).
    """

    cls: Tensor
    box: Tensor


class SeparableConv(nn.Module):
    """Depthwise 3x3 convolution followed by a pointwise 1x1 convolution."""

    def __init__(self, in_channels: int, out_channels: int, bias: bool = True):
        super().__init__()
        self.depthwise = nn.Conv2d(
            in_channels, in_channels, kernel_size=3, padding=1, groups=in_channels, bias=False
        )
        self.pointwise = nn.Conv2d(in_channels, out_channels, kernel_size=1, bias=bias)

    def forward(self, x: Tensor) -> Tensor:
        return self.pointwise(self.depthwise(x))


class SeparableConvBlock(nn.Module):
    """Separable convolution, adaptive batch norm, ReLU.

    Attributes:
        stats_key: Name under which an adapter stores this block's statistics.
    """

    def __init__(
        self, in_channels: int, out_channels: int, stats_key: str, eps: float = 1e-5, momentum: float = 0.1
    ):
        super().__init__()
        self.stats_key = stats_key
        self.conv = SeparableConv(in_channels, out_channels, bias=False)
        self.norm = AdaptiveBatchNorm2d(out_channels, eps=eps, momentum=momentum)
        self.act = nn.ReLU()

    def forward(self, x: Tensor, adapter: Optional[NormAdapter] = None) -> Tensor:
        return self.act(self.norm(self.conv(x), adapter=adapter, name=self.stats_key))


class PredictionHead(nn.Module):
    """``num_layers - 1`` separable blocks and a final linear separable layer with sigmoid."""

    def __init__(
        self,
        name: str,
        in_channels: int,
        out_channels: int,
        num_layers: int,
        eps: float = 1e-5,
        momentum: float = 0.1,
    ):
        super().__init__()
        self.blocks = nn.ModuleList(
            SeparableConvBlock(in_channels, in_channels, f"{name}.{i}", eps=eps, momentum=momentum)
            for i in range(num_layers - 1)
        )
        self.output = SeparableConv(in_channels, out_channels)

    def forward(self, x: Tensor, adapter: Optional[NormAdapter] = None) -> Tensor:
        for block in self.blocks:
            x = block(x, adapter=adapter)
        return torch.sigmoid(self.output(x))


class TrackingHeads(nn.Module):
    """Two-layer classification head and four-layer box head.

    Example:
        >>> heads = TrackingHeads(128).eval()
        >>> out = heads(torch.randn(1, 128, 16, 16))
        >>> out.cls.shape, out.box.shape
        (torch.Size([1, 1, 16, 16]), torch.Size([1, 4, 16, 16]))
    """

    def __init__(self, channels: int = 128, eps: float = 1e-5, momentum: float = 0.1):
        super().__init__()
        self.channels = channels
        self.cls = PredictionHead("cls", channels, 1, num_layers=2, eps=eps, momentum=momentum)
        self.box = PredictionHead("box", channels, 4, num_layers=4, eps=eps, momentum=momentum)

    def norm_layers(self) -> Iterator[Tuple[str, AdaptiveBatchNorm2d]]:
        """Yield (stats key, layer) for every adaptive batch-norm layer."""
        for head in (self.cls, self.box):
            for block in head.blocks:
                yield block.stats_key, block.norm

    def forward(self, fused: Tensor, adapter: Optional[NormAdapter] = None) -> HeadOutputs:
        if fused.dim() != 4 or fused.shape[1] != self.channels:
            raise ShapeError(
                f"Heads expect N x {self.channels} x h x w, got {tuple(fused.shape)}",
                expected=(self.channels,),
                actual=tuple(fused.shape),
            )
        return HeadOutputs(self.cls(fused, adapter=adapter), self.box(fused, adapter=adapter))


def hann_window(size: int) -> Tensor:
    """Outer product of two Hann windows, scaled so its maximum is 1."""
    window = np.outer(np.hanning(size), np.hanning(size))
    return torch.from_numpy(window / window.max()).float()


def decode_prediction(
    outputs: HeadOutputs, search_size: float, window: Tensor, window_weight: float
) -> Tuple[BBox, float]:
    """Pick the best cell and read its box.

    The cell maximizing ``(1 - window_weight) * cls + window_weight * window``
    wins (first one on ties). The score is the raw confidence there and the
    box is its normalized corners scaled by ``search_size``, sorted and
    clamped to the search region.

    Args:
        outputs: Head outputs of a single sample.
        search_size: Side of the search region in pixels.
        window: h x w penalty window with maximum 1.
        window_weight: Blend weight of the window.

    Returns:
        Tuple of (box in search-region pixels, score).
    """
    cls = outputs.cls[0, 0].detach()
    box = outputs.box[0].detach()
    penalized = (1.0 - window_weight) * cls + window_weight * window.to(cls)
    index = int(torch.argmax(penalized.flatten()))
    row, col = divmod(index, cls.shape[1])
    corners: List[float] = [float(v) * search_size for v in box[:, row, col]]
    decoded = BBox.from_corners(corners).clamp(search_size, search_size)
    return decoded, float(cls[row, col])
