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
"""Focal classification loss."""

import torch
from torch import Tensor


def focal_loss(
    cls: Tensor, target: Tensor, alpha: float = 0.25, gamma: float = 2.0, clamp: float = 1e-7
) -> Tensor:
    """Mean over cells of ``-alpha_t * (1 - p_t)**gamma * log(p_t)``.

    Args:
        cls: Confidences in (0, 1).
        target: Binary map of the same shape.
        alpha: Weight of positive cells; negatives get ``1 - alpha``.
        gamma: Focusing exponent.
        clamp: Probabilities are clamped to ``[clamp, 1 - clamp]``.
    """
    p = cls.clamp(clamp, 1.0 - clamp)
    positive = target > 0.5
    p_t = torch.where(positive, p, 1.0 - p)
    alpha_t = torch.where(positive, torch.full_like(p, alpha), torch.full_like(p, 1.0 - alpha))
    return (-alpha_t * (1.0 - p_t) ** gamma * torch.log(p_t)).mean()
