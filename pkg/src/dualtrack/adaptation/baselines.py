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
Baseline test-time normalization policies.

These accumulate statistics across frames (Momentum, DUA) or discard the
source statistics altogether (AdaBN). They exist for comparison with the
source-anchored blend in ``dualtrack.adaptation.dtta``.
"""

import logging
from typing import Optional

import torch
from torch import Tensor

from dualtrack.adaptation.base import NormAdapter
from dualtrack.adaptation.stats import BNLayerStats, affine_normalize, instance_statistics
from dualtrack.core.interfaces import AdaptMode

logger = logging.getLogger(__name__)


def momentum_rate(prior: float, rate: Optional[float] = None) -> float:
    """Update rate of the cumulative-momentum baseline.

    Args:
        prior: Pseudo-count N given to the source statistics.
        rate: Explicit rate; overrides the prior when set.

    Returns:
        ``rate`` if given, otherwise ``1 / (prior + 1)``.
    """
    if rate is not None:
        return rate
    return 1.0 / (prior + 1.0)


def dua_momentum(step: int, initial: float = 0.1, decay: float = 0.94, minimum: float = 0.005) -> float:
    """Decaying momentum schedule ``max(initial * decay**step, minimum)``."""
    return max(initial * decay**step, minimum)


class MomentumAdapter(NormAdapter):
    """Running statistics updated with a fixed rate, then used for the frame."""

    mode = AdaptMode.MOMENTUM

    def _normalize(self, x: Tensor, stats: BNLayerStats) -> Tensor:
        rate = momentum_rate(self.config.momentum_prior, self.config.momentum_rate)
        inst_mean, inst_var = instance_statistics(x)
        running_mean, running_var = stats.current()
        stats.adapted_mean = torch.lerp(running_mean, inst_mean, rate)
        stats.adapted_var = torch.lerp(running_var, inst_var, rate)
        return affine_normalize(
            x, stats.adapted_mean, stats.adapted_var, stats.weight, stats.bias, stats.eps
        )


class DUAAdapter(NormAdapter):
    """Normalize with the running statistics, then fold the frame in with a decaying momentum."""

    mode = AdaptMode.DUA

    def _normalize(self, x: Tensor, stats: BNLayerStats) -> Tensor:
        running_mean, running_var = stats.current()
        out = affine_normalize(x, running_mean, running_var, stats.weight, stats.bias, stats.eps)
        rate = dua_momentum(
            stats.step,
            initial=self.config.dua_momentum,
            decay=self.config.dua_decay,
            minimum=self.config.dua_min_momentum,
        )
        inst_mean, inst_var = instance_statistics(x.detach())
        stats.adapted_mean = torch.lerp(running_mean, inst_mean, rate)
        stats.adapted_var = torch.lerp(running_var, inst_var, rate)
        return out


class AdaBNAdapter(NormAdapter):
    """Normalize every frame with its own statistics only."""

    mode = AdaptMode.ADABN

    def _normalize(self, x: Tensor, stats: BNLayerStats) -> Tensor:
        inst_mean, inst_var = instance_statistics(x)
        stats.adapted_mean, stats.adapted_var = inst_mean, inst_var
        return affine_normalize(x, inst_mean, inst_var, stats.weight, stats.bias, stats.eps)
