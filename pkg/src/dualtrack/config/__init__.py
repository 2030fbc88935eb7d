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
Configuration package for dualtrack
"""

from dualtrack.config.config_manager import (
    AdaptationConfig,
    AppConfig,
    AugmentParams,
    BackboneConfig,
    ConfigManager,
    FiltrationConfig,
    HeadConfig,
    LossWeights,
    PathsConfig,
    UpdatePolicy,
    get_config_manager,
    preset_config,
    reset_config_manager,
)

__all__ = [
    "AdaptationConfig",
    "AppConfig",
    "AugmentParams",
    "BackboneConfig",
    "ConfigManager",
    "FiltrationConfig",
    "HeadConfig",
    "LossWeights",
    "PathsConfig",
    "UpdatePolicy",
    "get_config_manager",
    "preset_config",
    "reset_config_manager",
]
