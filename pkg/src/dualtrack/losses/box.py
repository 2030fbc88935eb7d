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
"""Generalized-IoU box loss."""

import torch
from torch import Tensor


def order_corners(boxes: Tensor) -> Tensor:
    """Sort each axis so that x_min <= x_max and y_min <= y_max."""
    x0, y0, x1, y1 = boxes.unbind(-1)
    return torch.stack(
        (torch.minimum(x0, x1), torch.minimum(y0, y1), torch.maximum(x0, x1), torch.maximum(y0, y1)), dim=-1
    )


def generalized_iou(pred: Tensor, gt: Tensor) -> Tensor:
    """Generalized IoU of corner boxes with shape (..., 4).

    Corners are ordered per axis first, matching how predictions are decoded.
    Boxes whose enclosing hull has zero area (the same degenerate point)
    get a GIoU of 1.
    """
    pred = order_corners(pred)
    gt = order_corners(gt)
    ix = (torch.minimum(pred[..., 2], gt[..., 2]) - torch.maximum(pred[..., 0], gt[..., 0])).clamp(min=0)
    iy = (torch.minimum(pred[..., 3], gt[..., 3]) - torch.maximum(pred[..., 1], gt[..., 1])).clamp(min=0)
    inter = ix * iy
    area_pred = (pred[..., 2] - pred[..., 0]) * (pred[..., 3] - pred[..., 1])
    area_gt = (gt[..., 2] - gt[..., 0]) * (gt[..., 3] - gt[..., 1])
    union = area_pred + area_gt - inter

    hull_w = torch.maximum(pred[..., 2], gt[..., 2]) - torch.minimum(pred[..., 0], gt[..., 0])
    hull_h = torch.maximum(pred[..., 3], gt[..., 3]) - torch.minimum(pred[..., 1], gt[..., 1])
    hull = hull_w * hull_h

    has_union = union > 0
    has_hull = hull > 0
    iou = torch.where(has_union, inter / torch.where(has_union, union, torch.ones_like(union)), torch.zeros_like(union))
    penalty = (hull - union) / torch.where(has_hull, hull, torch.ones_like(hull))
    return torch.where(has_hull, iou - penalty, torch.ones_like(hull))


def giou_loss(pred: Tensor, gt: Tensor) -> Tensor:
    """Element-wise ``1 - GIoU``, in [0, 2].

    Example:
        >>> giou_loss(torch.tensor([0., 0., 2., 2.]), torch.tensor([1., 1., 3., 3.]))
        tensor(1.0794)
    """
    return 1.0 - generalized_iou(pred, gt)


def box_regression_loss(pred_map: Tensor, gt_boxes: Tensor, target: Tensor) -> Tensor:
    """Mean GIoU loss over positive cells.

    Args:
        pred_map: N x 4 x h x w normalized corner predictions.
        gt_boxes: N x 4 normalized ground-truth corners.
        target: N x 1 x h x w binary map selecting positive cells.

    Returns:
        Scalar loss; zero (still attached to the graph) when no cell is positive.
    """
    mask = target[:, 0] > 0.5
    if not bool(mask.any()):
        return pred_map.sum() * 0.0
    pred = pred_map.permute(0, 2, 3, 1)[mask]
    gt = gt_boxes[:, None, None, :].expand(-1, mask.shape[1], mask.shape[2], -1)[mask]
    return giou_loss(pred, gt).mean()
