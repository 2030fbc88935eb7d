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
Filtration of concatenated dual representations.

``FastMixedFiltration`` gates its input with the sum of a channel filter
and a spatial filter that share one value projection and use only
broadcast products and sums. ``PolarizedSelfAttention`` is the two-branch
baseline with separate value maps and matrix products. Either one, or a
plain pass-through, is followed by a 1x1 reduction from 2C to C inside
``RelationAwareBlock``.
"""

from typing import Dict, NamedTuple, Optional, Tuple, Type, Union

import torch
import torch.nn.functional as F
from torch import Tensor, nn

from dualtrack.config.config_manager import FiltrationConfig
from dualtrack.core.exceptions import InvalidConfigValueError, ShapeError
from dualtrack.core.interfaces import FusionKind


class FiltrationOutput(NamedTuple):
    """Result of a filtration block.

    Attributes:
        gated: ``gate * x``, same shape as the input.
        gate: Channel filter plus spatial filter, broadcast to the input shape.
        channel_filter: N x 2C x 1 x 1.
        spatial_filter: N x 1 x h x w.
    """

    gated: Tensor
    gate: Tensor
    channel_filter: Tensor
    spatial_filter: Tensor


def _check_even(x: Tensor, channels: int) -> None:
    if x.dim() != 4 or x.shape[1] != channels or channels % 2:
        raise ShapeError(
            f"Filtration expects N x {channels} x h x w with an even channel count, got {tuple(x.shape)}",
            expected=(channels,),
            actual=tuple(x.shape),
        )


def _inner_width(channels: int, squeeze_rate: int) -> int:
    if channels % 2:
        raise ShapeError("Filtration channel count must be even", expected=(2,), actual=(channels,))
    if squeeze_rate < 1 or channels % squeeze_rate:
        raise InvalidConfigValueError(
            f"Squeeze rate {squeeze_rate} does not divide {channels}",
            config_key="filtration.squeeze_rate",
        )
    return channels // squeeze_rate


class FastMixedFiltration(nn.Module):
    """Channel and spatial gating with a shared value projection.

    With ``V = W_v(x)``::

        q_ch = softmax over h*w of W_qch(x)
        A_ch = sigmoid(layernorm(W_ch(sum_hw V * q_ch)))
        q_sp = softmax over channels of avgpool(W_qsp(x))
        A_sp = sigmoid(sum_c q_sp * V)
        gated = (A_ch + A_sp) * x

    Args:
        channels: Input width 2C (must be even).
        squeeze_rate: Value width is ``channels // squeeze_rate``.
        eps: Layer-norm epsilon.

    Example:
        >>> block = FastMixedFiltration(8)
        >>> block(torch.zeros(1, 8, 4, 4)).gated.shape
        torch.Size([1, 8, 4, 4])
    """

    def __init__(self, channels: int, squeeze_rate: int = 2, eps: float = 1e-5):
        super().__init__()
        self.channels = channels
        self.inner = _inner_width(channels, squeeze_rate)
        self.value = nn.Conv2d(channels, self.inner, kernel_size=1)
        self.channel_query = nn.Conv2d(channels, 1, kernel_size=1)
        self.spatial_query = nn.Conv2d(channels, self.inner, kernel_size=1)
        self.unsqueeze = nn.Conv2d(self.inner, channels, kernel_size=1)
        self.norm = nn.LayerNorm(channels, eps=eps)

    @staticmethod
    def parameter_count(channels: int, squeeze_rate: int = 2) -> int:
        """Closed-form number of trainable parameters."""
        inner = channels // squeeze_rate
        return (
            (channels * inner + inner)  # value
            + (channels + 1)  # channel query
            + (channels * inner + inner)  # spatial query
            + (inner * channels + channels)  # unsqueeze
            + 2 * channels  # layer norm
        )

    def elementwise_macs(self, height: int, width: int) -> int:
        """Multiply-adds outside the 1x1 convolutions for an h x w input."""
        positions = height * width
        return 2 * self.inner * positions + 2 * self.channels * positions

    def queries(self, x: Tensor) -> Tuple[Tensor, Tensor]:
        """Softmax-normalized channel query (N x 1 x hw) and spatial query (N x inner)."""
        q_ch = F.softmax(self.channel_query(x).flatten(2), dim=-1)
        q_sp = F.softmax(self.spatial_query(x).mean(dim=(2, 3)), dim=1)
        return q_ch, q_sp

    def forward(self, x: Tensor) -> FiltrationOutput:
        _check_even(x, self.channels)
        n, c, h, w = x.shape
        v = self.value(x).flatten(2)
        q_ch, q_sp = self.queries(x)

        pooled = (v * q_ch).sum(dim=-1)
        z = self.unsqueeze(pooled[:, :, None, None]).flatten(1)
        channel_filter = torch.sigmoid(self.norm(z)).view(n, c, 1, 1)

        spatial_filter = torch.sigmoid((q_sp.unsqueeze(-1) * v).sum(dim=1)).view(n, 1, h, w)

        gate = channel_filter + spatial_filter
        return FiltrationOutput(gate * x, gate, channel_filter, spatial_filter)


class PolarizedSelfAttention(nn.Module):
    """Parallel polarized self-attention with separate channel and spatial value maps.

    Same outer contract as ``FastMixedFiltration``; the reductions are
    batched matrix products.
    """

    def __init__(self, channels: int, squeeze_rate: int = 2, eps: float = 1e-5):
        super().__init__()
        self.channels = channels
        self.inner = _inner_width(channels, squeeze_rate)
        self.channel_value = nn.Conv2d(channels, self.inner, kernel_size=1)
        self.channel_query = nn.Conv2d(channels, 1, kernel_size=1)
        self.unsqueeze = nn.Conv2d(self.inner, channels, kernel_size=1)
        self.norm = nn.LayerNorm(channels, eps=eps)
        self.spatial_value = nn.Conv2d(channels, self.inner, kernel_size=1)
        self.spatial_query = nn.Conv2d(channels, self.inner, kernel_size=1)

    @staticmethod
    def parameter_count(channels: int, squeeze_rate: int = 2) -> int:
        """Closed-form number of trainable parameters."""
        inner = channels // squeeze_rate
        return FastMixedFiltration.parameter_count(channels, squeeze_rate) + channels * inner + inner

    def elementwise_macs(self, height: int, width: int) -> int:
        positions = height * width
        return 2 * self.inner * positions + 3 * self.channels * positions

    def forward(self, x: Tensor) -> FiltrationOutput:
        _check_even(x, self.channels)
        n, c, h, w = x.shape

        v_ch = self.channel_value(x).view(n, self.inner, h * w)
        q_ch = F.softmax(self.channel_query(x).view(n, h * w, 1), dim=1)
        z = self.unsqueeze(torch.matmul(v_ch, q_ch).unsqueeze(-1)).flatten(1)
        channel_filter = torch.sigmoid(self.norm(z)).view(n, c, 1, 1)

        v_sp = self.spatial_value(x).view(n, self.inner, h * w)
        q_sp = F.softmax(self.spatial_query(x).mean(dim=(2, 3)), dim=1).view(n, 1, self.inner)
        spatial_filter = torch.sigmoid(torch.matmul(q_sp, v_sp)).view(n, 1, h, w)

        gated = x * channel_filter + x * spatial_filter
        return FiltrationOutput(gated, channel_filter + spatial_filter, channel_filter, spatial_filter)


class PassThroughFiltration(nn.Module):
    """No filtration; the concatenation goes straight to the channel reduction."""

    def __init__(self, channels: int, squeeze_rate: int = 2, eps: float = 1e-5):
        super().__init__()
        self.channels = channels

    @staticmethod
    def parameter_count(channels: int, squeeze_rate: int = 2) -> int:
        return 0

    def elementwise_macs(self, height: int, width: int) -> int:
        return 0

    def forward(self, x: Tensor) -> FiltrationOutput:
        _check_even(x, self.channels)
        n, c, h, w = x.shape
        return FiltrationOutput(
            x, torch.ones_like(x), x.new_ones(n, c, 1, 1), x.new_zeros(n, 1, h, w)
        )


_FILTERS: Dict[FusionKind, Type[nn.Module]] = {
    FusionKind.FMF: FastMixedFiltration,
    FusionKind.PSA: PolarizedSelfAttention,
    FusionKind.CONCAT: PassThroughFiltration,
}


def build_filtration(
    kind: Union[str, FusionKind], channels: int, squeeze_rate: int = 2, eps: float = 1e-5
) -> nn.Module:
    """Instantiate the filtration block registered for ``kind``.

    Raises:
        InvalidConfigValueError: If the kind is unknown.
    """
    try:
        resolved = FusionKind(kind) if not isinstance(kind, FusionKind) else kind
    except ValueError as exc:
        raise InvalidConfigValueError(f"Unknown filtration kind {kind!r}", config_key="filtration.kind") from exc
    return _FILTERS[resolved](channels, squeeze_rate=squeeze_rate, eps=eps)


class ChannelReduce(nn.Module):
    """Linear 1x1 map from 2C to C channels."""

    def __init__(self, in_channels: int, out_channels: int):
        super().__init__()
        self.in_channels = in_channels
        self.proj = nn.Conv2d(in_channels, out_channels, kernel_size=1)

    def forward(self, gated: Tensor) -> Tensor:
        if gated.dim() != 4 or gated.shape[1] != self.in_channels:
            raise ShapeError(
                f"Channel reduction expects {self.in_channels} channels, got {tuple(gated.shape)}",
                expected=(self.in_channels,),
                actual=tuple(gated.shape),
            )
        return self.proj(gated)


class RelationAwareBlock(nn.Module):
    """Concatenate two C-channel maps, filter the 2C result, reduce back to C.

    The same instance serves both the dual-template pair and the
    dual-search-region pair.
    """

    def __init__(self, width: int, config: Optional[FiltrationConfig] = None):
        super().__init__()
        config = config or FiltrationConfig()
        self.width = width
        self.kind = FusionKind(config.kind)
        self.filtration = build_filtration(
            self.kind, 2 * width, squeeze_rate=config.squeeze_rate, eps=config.layer_norm_eps
        )
        self.reduce = ChannelReduce(2 * width, width)

    def forward(self, first: Tensor, second: Tensor) -> Tensor:
        if first.shape != second.shape:
            raise ShapeError(
                "Relation-aware block needs two maps of identical shape",
                expected=tuple(first.shape),
                actual=tuple(second.shape),
            )
        x = torch.cat([first, second], dim=1)
        return self.reduce(self.filtration(x).gated)
