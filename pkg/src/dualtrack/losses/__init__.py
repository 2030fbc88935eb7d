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
"""Training objectives."""

from dualtrack.config.config_manager import LossWeights
from dualtrack.losses.box import box_regression_loss, generalized_iou, giou_loss, order_corners
from dualtrack.losses.focal import focal_loss
from dualtrack.losses.relation import (
    ProjectionHeads,
    cosine_distance,
    symmetric_relation_distance,
    transitive_relation_losses,
)
from dualtrack.losses.targets import classification_target_map
from dualtrack.losses.total import LossBreakdown, compute_losses, total_loss

__all__ = [
    "LossBreakdown",
    "LossWeights",
    "ProjectionHeads",
    "box_regression_loss",
    "classification_target_map",
    "compute_losses",
    "cosine_distance",
    "focal_loss",
    "generalized_iou",
    "giou_loss",
    "order_corners",
    "symmetric_relation_distance",
    "total_loss",
    "transitive_relation_losses",
]
