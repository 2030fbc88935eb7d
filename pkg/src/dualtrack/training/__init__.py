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
"""Training loop and checkpoint container."""

from dualtrack.training.checkpoint import Checkpoint, load_model, read_checkpoint, save_checkpoint
from dualtrack.training.trainer import Trainer, TrainingResult

__all__ = [
    "Checkpoint",
    "Trainer",
    "TrainingResult",
    "load_model",
    "read_checkpoint",
    "save_checkpoint",
]
