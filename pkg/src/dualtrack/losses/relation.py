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
Transitive relation losses.

Symmetric cosine distances between pooled representations passed through a
predictor (h1) and a stop-gradient projector (h2).
"""

from typing import Tuple

from torch import Tensor, nn


def cosine_distance(z1: Tensor, z2: Tensor, eps: float = 1e-12) -> Tensor:
    """``1 - <z1/|z1|, z2/|z2|>`` along the last dimension.

    Args:
        z1: (..., C) vectors.
        z2: (..., C) vectors.
        eps: Added to each norm.

    Returns:
        Distances in [0, 2] with the leading shape of the inputs.
    """
    dot = (z1 * z2).sum(dim=-1)
    norms = (z1.norm(dim=-1) + eps) * (z2.norm(dim=-1) + eps)
    return 1.0 - dot / norms


def _mlp(width: int) -> nn.Sequential:
    return nn.Sequential(
        nn.Linear(width, width),
        nn.BatchNorm1d(width),
        nn.ReLU(),
        nn.Linear(width, width),
    )


class ProjectionHeads(nn.Module):
    """Training-only MLPs applied to globally average-pooled maps.

    Attributes:
        predictor: h1, receives gradients.
        projector: h2, always behind a stop-gradient.
    """

    def __init__(self, width: int = 128):
        super().__init__()
        self.predictor = _mlp(width)
        self.projector = _mlp(width)

    @staticmethod
    def pool(x: Tensor) -> Tensor:
        """Global average pooling of an N x C x h x w map to N x C."""
        return x.mean(dim=(2, 3))


def symmetric_relation_distance(x1: Tensor, x2: Tensor, heads: ProjectionHeads) -> Tensor:
    """Symmetric stop-gradient distance between two feature maps.

    Computes ``0.5 * (D(h1(p1), sg(h2(p2))) + D(h1(p2), sg(h2(p1))))`` with
    ``p = pool(x)``, averaged over the batch.
    """
    p1, p2 = heads.pool(x1), heads.pool(x2)
    first = cosine_distance(heads.predictor(p1), heads.projector(p2).detach())
    second = cosine_distance(heads.predictor(p2), heads.projector(p1).detach())
    return 0.5 * (first.mean() + second.mean())


def transitive_relation_losses(
    template_repr: Tensor, search_repr: Tensor, current_features: Tensor, heads: ProjectionHeads
) -> Tuple[Tensor, Tensor]:
    """Relation loss between the filtered template and search maps, and its regularizer.

    Returns:
        ``(D(template_repr, search_repr), D(template_repr, current_features))``.
    """
    l_tr = symmetric_relation_distance(template_repr, search_repr, heads)
    l_reg = symmetric_relation_distance(template_repr, current_features, heads)
    return l_tr, l_reg
