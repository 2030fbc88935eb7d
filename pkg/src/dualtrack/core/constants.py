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
"""Project-wide constants.

Defines patch geometry, file layout names, environment variable names,
checkpoint format identifiers and CLI exit codes.
"""

from __future__ import annotations

TEMPLATE_SIZE = 128
SEARCH_SIZE = 256
LEGAL_PATCH_SIZES = (TEMPLATE_SIZE, SEARCH_SIZE)
FEATURE_STRIDE = 16
TEMPLATE_GRID = TEMPLATE_SIZE // FEATURE_STRIDE
SEARCH_GRID = SEARCH_SIZE // FEATURE_STRIDE

GROUNDTRUTH_FILE = "groundtruth.txt"
FRAME_PATTERN = "{index:08d}.png"
FRAME_GLOB = "*.png"
RESULTS_SUFFIX = ".txt"
EFFECTIVE_CONFIG_FILE = "effective_config.json"
REPORT_FILE = "report.txt"
CURVE_FILE = "success_curve.csv"
LOSS_LOG_FILE = "loss_log.jsonl"
CHECKPOINT_FILE = "checkpoint.dtk"

CHECKPOINT_MAGIC = "dualtrack-checkpoint"
CHECKPOINT_FORMAT_VERSION = "1.0"

ENV_PREFIX = "DUALTRACK_"
ENV_LOG_LEVEL = "DUALTRACK_LOG_LEVEL"
ENV_CONFIG = "DUALTRACK_CONFIG"
ENV_SEED = "DUALTRACK_SEED"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4
