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
Test-time adaptation of batch-normalization statistics.

Adapters are registered by mode name; ``create_adapter`` builds the
per-sequence session used by the tracker.
"""

from typing import Dict, Optional, Type, Union

from dualtrack.adaptation.base import AdaptiveBatchNorm2d, NormAdapter
from dualtrack.adaptation.baselines import (
    AdaBNAdapter,
    DUAAdapter,
    MomentumAdapter,
    dua_momentum,
    momentum_rate,
)
from dualtrack.adaptation.dtta import DynamicTestTimeAdapter
from dualtrack.adaptation.stats import (
    BNLayerStats,
    dtta_normalize,
    frozen_normalize,
    instance_statistics,
    reset_stats,
)
from dualtrack.config.config_manager import AdaptationConfig
from dualtrack.core.exceptions import UnknownAdaptationModeError
from dualtrack.core.interfaces import AdaptMode

_ADAPTERS: Dict[AdaptMode, Type[NormAdapter]] = {
    AdaptMode.DTTA: DynamicTestTimeAdapter,
    AdaptMode.MOMENTUM: MomentumAdapter,
    AdaptMode.DUA: DUAAdapter,
    AdaptMode.ADABN: AdaBNAdapter,
}


def parse_mode(mode: Union[str, AdaptMode]) -> AdaptMode:
    """Resolve an adaptation mode name.

    Raises:
        UnknownAdaptationModeError: If the name is not a known mode.
    """
    if isinstance(mode, AdaptMode):
        return mode
    try:
        return AdaptMode(str(mode).lower())
    except ValueError as exc:
        raise UnknownAdaptationModeError(str(mode)) from exc


def create_adapter(
    mode: Union[str, AdaptMode], config: Optional[AdaptationConfig] = None
) -> Optional[NormAdapter]:
    """Build a fresh per-sequence adapter, or None for frozen statistics.

    Args:
        mode: One of ``off``, ``dtta``, ``momentum``, ``dua``, ``adabn``.
        config: Adaptation settings shared by the adapters.

    Returns:
        A new NormAdapter, or None when ``mode`` is ``off``.

    Raises:
        UnknownAdaptationModeError: If the mode is unknown.
    """
    resolved = parse_mode(mode)
    if resolved is AdaptMode.OFF:
        return None
    return _ADAPTERS[resolved](config)


__all__ = [
    "AdaBNAdapter",
    "AdaptiveBatchNorm2d",
    "BNLayerStats",
    "DUAAdapter",
    "DynamicTestTimeAdapter",
    "MomentumAdapter",
    "NormAdapter",
    "create_adapter",
    "dtta_normalize",
    "dua_momentum",
    "frozen_normalize",
    "instance_statistics",
    "momentum_rate",
    "parse_mode",
    "reset_stats",
]
