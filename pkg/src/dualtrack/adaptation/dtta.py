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
"""Dynamic test-time adaptation of batch-norm statistics."""

from torch import Tensor

from dualtrack.adaptation.base import NormAdapter
from dualtrack.adaptation.stats import BNLayerStats, dtta_normalize
from dualtrack.core.interfaces import AdaptMode


class DynamicTestTimeAdapter(NormAdapter):
    """Blend frozen source statistics with the current frame's statistics.

    Every frame is normalized with ``(1 - lambda_bn) * source + lambda_bn *
    instance``. Nothing accumulates across frames, so a corrupted frame
    cannot drift the statistics used for later ones.
    """

    mode = AdaptMode.DTTA

    def _normalize(self, x: Tensor, stats: BNLayerStats) -> Tensor:
        return dtta_normalize(x, stats)
