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
Batch-normalization statistics and the source-anchored adaptation rule.

The functions here operate on a ``BNLayerStats`` record: the frozen
source statistics and affine parameters of one BN layer plus the
transient, per-sequence adapted statistics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import torch
from torch import Tensor, nn

from dualtrack.core.exceptions import AdaptationStateError, ShapeError


@dataclass
class BNLayerStats:
    """Statistics of one batch-normalization layer.

    Attributes:
        source_mean: Frozen running mean from training.
        source_var: Frozen running variance from training.
        weight: Frozen affine scale (gamma).
        bias: Frozen affine shift (beta).
        eps: Variance epsilon.
        lambda_bn: Weight of the instance statistics in the blend.
        adapted_mean: Mean used for the most recent frame, if any.
        adapted_var: Variance used for the most recent frame, if any.
        step: Number of frames normalized since the last reset.
    """

    source_mean: Tensor
    source_var: Tensor
    weight: Tensor
    bias: Tensor
    eps: float = 1e-5
    lambda_bn: float = 0.1
    adapted_mean: Optional[Tensor] = None
    adapted_var: Optional[Tensor] = None
    step: int = 0

    @classmethod
    def from_layer(cls, layer: nn.BatchNorm2d, lambda_bn: float = 0.1) -> "BNLayerStats":
        """Snapshot the source statistics of a BN layer.

        Raises:
            AdaptationStateError: If the layer does not track running statistics.
        """
        if layer.running_mean is None or layer.running_var is None:
            raise AdaptationStateError("Batch-norm layer has no running statistics to anchor on")
        channels = layer.num_features
        weight = layer.weight if layer.weight is not None else torch.ones(channels)
        bias = layer.bias if layer.bias is not None else torch.zeros(channels)
        return cls(
            source_mean=layer.running_mean.detach().clone(),
            source_var=layer.running_var.detach().clone(),
            weight=weight.detach().clone(),
            bias=bias.detach().clone(),
            eps=layer.eps,
            lambda_bn=lambda_bn,
        )

    @property
    def num_channels(self) -> int:
        return int(self.source_mean.numel())

    def current(self) -> Tuple[Tensor, Tensor]:
        """Statistics carried between frames (adapted if present, else source)."""
        if self.adapted_mean is None or self.adapted_var is None:
            return self.source_mean, self.source_var
        return self.adapted_mean, self.adapted_var

    def check_input(self, x: Tensor) -> None:
        if x.dim() != 4 or x.shape[1] != self.num_channels:
            raise ShapeError(
                f"Expected N x {self.num_channels} x H x W input, got {tuple(x.shape)}",
                expected=(self.num_channels,),
                actual=tuple(x.shape),
            )


def instance_statistics(x: Tensor) -> Tuple[Tensor, Tensor]:
    """Per-channel mean and biased variance over batch and spatial positions."""
    mean = x.mean(dim=(0, 2, 3))
    var = x.var(dim=(0, 2, 3), unbiased=False)
    return mean, var


def affine_normalize(
    x: Tensor, mean: Tensor, var: Tensor, weight: Tensor, bias: Tensor, eps: float
) -> Tensor:
    """Normalize ``x`` with the given statistics, then apply gamma and beta."""
    shape = (1, -1, 1, 1)
    scale = torch.rsqrt(var.reshape(shape) + eps)
    return (x - mean.reshape(shape)) * scale * weight.reshape(shape) + bias.reshape(shape)


def frozen_normalize(x: Tensor, stats: BNLayerStats) -> Tensor:
    """Normalize with the source statistics only."""
    stats.check_input(x)
    return affine_normalize(
        x, stats.source_mean, stats.source_var, stats.weight, stats.bias, stats.eps
    )


def dtta_normalize(x: Tensor, stats: BNLayerStats) -> Tensor:
    """Normalize with statistics blended between source and the current instance.

    The blend is ``(1 - lambda_bn) * source + lambda_bn * instance`` for both
    moments and is always anchored to the frozen source values, so the
    result for a frame does not depend on earlier frames.

    Args:
        x: Activations of a single frame (N=1).
        stats: Layer statistics; ``adapted_mean``/``adapted_var`` are overwritten.

    Returns:
        Normalized activations.
    """
    stats.check_input(x)
    inst_mean, inst_var = instance_statistics(x)
    stats.adapted_mean = torch.lerp(stats.source_mean, inst_mean, stats.lambda_bn)
    stats.adapted_var = torch.lerp(stats.source_var, inst_var, stats.lambda_bn)
    return affine_normalize(
        x, stats.adapted_mean, stats.adapted_var, stats.weight, stats.bias, stats.eps
    )


def reset_stats(stats: BNLayerStats) -> BNLayerStats:
    """Discard adapted statistics; source statistics and affine are untouched."""
    stats.adapted_mean = None
    stats.adapted_var = None
    stats.step = 0
    return stats
