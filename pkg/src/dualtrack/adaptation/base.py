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
"""Base adapter class and the adaptive batch-norm layer.

A ``NormAdapter`` owns the adapted statistics of one sequence; layers stay
stateless at test time and only read their frozen source statistics, so a
single model can serve several sequences concurrently.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Dict, Mapping, Optional

import torch
from torch import Tensor, nn

from dualtrack.adaptation.stats import (
    BNLayerStats,
    affine_normalize,
    instance_statistics,
    reset_stats,
)
from dualtrack.config.config_manager import AdaptationConfig
from dualtrack.core.exceptions import AdaptationStateError
from dualtrack.core.interfaces import AdaptMode


class NormAdapter(ABC):
    """Per-sequence test-time normalization policy.

    Subclasses implement ``_normalize`` for one layer. Statistics records
    are created lazily the first time a layer is seen.

    Attributes:
        config: Adaptation settings.
    """

    mode: AdaptMode

    def __init__(self, config: Optional[AdaptationConfig] = None):
        """Initialize the adapter.

        Args:
            config: Adaptation settings (defaults when None).
        """
        self.config = config or AdaptationConfig()
        self._stats: Dict[str, BNLayerStats] = {}

    @property
    def layer_stats(self) -> Mapping[str, BNLayerStats]:
        """Statistics records keyed by layer name."""
        return self._stats

    def stats_for(self, name: str, layer: nn.BatchNorm2d) -> BNLayerStats:
        """Return (creating on first use) the statistics record of a layer."""
        stats = self._stats.get(name)
        if stats is None:
            stats = BNLayerStats.from_layer(layer, lambda_bn=self.config.lambda_bn)
            self._stats[name] = stats
        return stats

    def normalize(self, name: str, layer: nn.BatchNorm2d, x: Tensor) -> Tensor:
        """Normalize one layer's input for the current frame."""
        stats = self.stats_for(name, layer)
        stats.check_input(x)
        out = self._normalize(x, stats)
        stats.step += 1
        return out

    @abstractmethod
    def _normalize(self, x: Tensor, stats: BNLayerStats) -> Tensor:
        """Compute the adapted normalization of ``x`` (must be overridden)."""
        raise NotImplementedError("Subclasses must implement _normalize()")

    def reset(self) -> None:
        """Discard every adapted statistic, keeping the source snapshots."""
        for stats in self._stats.values():
            reset_stats(stats)


class AdaptiveBatchNorm2d(nn.BatchNorm2d):
    """BatchNorm2d whose inference statistics can come from a NormAdapter.

    In training mode the running statistics follow the exponential rule
    ``running = (1 - momentum) * running + momentum * batch`` with the biased
    batch variance. In eval mode the layer normalizes with its running
    statistics unless an adapter is passed to ``forward``.
    """

    def __init__(self, num_features: int, eps: float = 1e-5, momentum: float = 0.1):
        super().__init__(num_features, eps=eps, momentum=momentum)

    def forward(  # type: ignore[override]
        self, x: Tensor, adapter: Optional[NormAdapter] = None, name: str = ""
    ) -> Tensor:
        self._check_input_dim(x)
        if self.training:
            mean, var = instance_statistics(x)
            with torch.no_grad():
                self.running_mean.lerp_(mean.detach(), self.momentum)
                self.running_var.lerp_(var.detach(), self.momentum)
                self.num_batches_tracked += 1
            return affine_normalize(x, mean, var, self.weight, self.bias, self.eps)
        if self.running_mean is None or self.running_var is None:
            raise AdaptationStateError("Batch-norm layer has no running statistics")
        if adapter is None:
            return affine_normalize(
                x, self.running_mean, self.running_var, self.weight, self.bias, self.eps
            )
        return adapter.normalize(name, self, x)
