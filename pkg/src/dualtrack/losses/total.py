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
Total training objective.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Union

from torch import Tensor

from dualtrack.config.config_manager import LossConfig, LossWeights
from dualtrack.core.constants import SEARCH_SIZE
from dualtrack.losses.box import box_regression_loss
from dualtrack.losses.focal import focal_loss
from dualtrack.losses.relation import ProjectionHeads, transitive_relation_losses
from dualtrack.model.network import TrainingOutputs

Scalar = Union[float, Tensor]


def total_loss(
    l_iou: Scalar, l_fl: Scalar, l_tr: Scalar, l_reg: Scalar, weights: Optional[LossWeights] = None
) -> Scalar:
    """``L_IoU + w_fl * L_FL + w_tr * L_TR + w_reg * L_Reg``.

    The tracking terms and the relation terms are summed separately, then
    added.
    """
    w = weights or LossWeights()
    return (l_iou + w.fl * l_fl) + (w.tr * l_tr + w.reg * l_reg)


@dataclass
class LossBreakdown:
    """All loss components of one step."""

    total: Tensor
    iou: Tensor
    focal: Tensor
    relation: Tensor
    regularizer: Tensor

    def as_floats(self) -> Dict[str, float]:
        return {
            "total": float(self.total.detach()),
            "iou": float(self.iou.detach()),
            "focal": float(self.focal.detach()),
            "relation": float(self.relation.detach()),
            "regularizer": float(self.regularizer.detach()),
        }


def compute_losses(
    outputs: TrainingOutputs,
    gt_boxes: Tensor,
    targets: Tensor,
    projection: ProjectionHeads,
    config: Optional[LossConfig] = None,
    search_size: float = SEARCH_SIZE,
) -> LossBreakdown:
    """Evaluate every component on a batch of network outputs.

    Args:
        outputs: Result of ``DualTrackNet.forward``.
        gt_boxes: N x 4 ground-truth corners in search-crop pixels.
        targets: N x 1 x h x w classification targets.
        projection: Relation-loss MLPs.
        config: Weights and focal parameters.
        search_size: Search crop side used to normalize ``gt_boxes``.
    """
    config = config or LossConfig()
    l_iou = box_regression_loss(outputs.heads.box, gt_boxes / search_size, targets)
    l_fl = focal_loss(outputs.heads.cls, targets, alpha=config.focal_alpha, gamma=config.focal_gamma)
    l_tr, l_reg = transitive_relation_losses(
        outputs.template_repr, outputs.search_repr, outputs.current_features, projection
    )
    total = total_loss(l_iou, l_fl, l_tr, l_reg, config.weights)
    return LossBreakdown(total, l_iou, l_fl, l_tr, l_reg)  # type: ignore[arg-type]
