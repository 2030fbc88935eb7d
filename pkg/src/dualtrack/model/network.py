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
Assembled dual-template / dual-search-region network.

Pipeline: backbone on (I_T, I_D, I_S, I_t); relation-aware block on the
template pair and on the search pair; pixel-wise correlation of the two
filtered maps; fusion with F_t; classification and box heads.
"""

import logging
from typing import NamedTuple, Optional

from torch import Tensor, nn

from dualtrack.adaptation.base import NormAdapter
from dualtrack.config.config_manager import AppConfig
from dualtrack.core.constants import TEMPLATE_GRID
from dualtrack.model.backbone import Backbone
from dualtrack.model.filtration import RelationAwareBlock
from dualtrack.model.fusion import SearchFusion, pixelwise_cross_correlation
from dualtrack.model.heads import HeadOutputs, TrackingHeads

logger = logging.getLogger(__name__)


class TrainingOutputs(NamedTuple):
    """Head outputs plus the intermediates consumed by the relation losses.

    Attributes:
        heads: Classification and box predictions.
        template_repr: Filtered dual template, N x C x 8 x 8.
        search_repr: Filtered dual search region, N x C x 16 x 16.
        current_features: Raw backbone map of the current search crop.
    """

    heads: HeadOutputs
    template_repr: Tensor
    search_repr: Tensor
    current_features: Tensor


class DualTrackNet(nn.Module):
    """Siamese tracker network.

    Args:
        config: Application configuration; only the model sections are read.

    Example:
        >>> net = DualTrackNet(AppConfig()).eval()
        >>> out = net(i_t, i_d, i_s, i_cur)
        >>> out.heads.cls.shape
        torch.Size([1, 1, 16, 16])
    """

    def __init__(self, config: Optional[AppConfig] = None):
        super().__init__()
        config = config or AppConfig()
        width = config.backbone.width
        self.width = width
        self.backbone = Backbone(config.backbone, bn_momentum=config.training.bn_momentum)
        self.relation = RelationAwareBlock(width, config.filtration)
        self.fusion = SearchFusion(TEMPLATE_GRID * TEMPLATE_GRID, width, config.heads.channels)
        self.heads = TrackingHeads(
            config.heads.channels, eps=config.heads.bn_eps, momentum=config.training.bn_momentum
        )

    def extract(self, patch: Tensor) -> Tensor:
        """Backbone features F(patch)."""
        return self.backbone(patch)

    def template_representation(self, static_features: Tensor, dynamic_features: Tensor) -> Tensor:
        """Filtered dual template from F_T and F_D (concatenated as F_D, F_T)."""
        return self.relation(dynamic_features, static_features)

    def search_representation(self, current_features: Tensor, search_features: Tensor) -> Tensor:
        """Filtered dual search region from F_t and F_S (concatenated as F_t, F_S)."""
        return self.relation(current_features, search_features)

    def predict(
        self,
        template_repr: Tensor,
        search_repr: Tensor,
        current_features: Tensor,
        adapter: Optional[NormAdapter] = None,
    ) -> HeadOutputs:
        """Correlate, fuse with F_t and run the heads."""
        corr = pixelwise_cross_correlation(template_repr, search_repr)
        fused = self.fusion(corr, current_features)
        return self.heads(fused, adapter=adapter)

    def forward(
        self,
        static_template: Tensor,
        dynamic_template: Tensor,
        search: Tensor,
        current: Tensor,
        adapter: Optional[NormAdapter] = None,
    ) -> TrainingOutputs:
        template_repr = self.template_representation(
            self.extract(static_template), self.extract(dynamic_template)
        )
        current_features = self.extract(current)
        search_repr = self.search_representation(current_features, self.extract(search))
        heads = self.predict(template_repr, search_repr, current_features, adapter=adapter)
        return TrainingOutputs(heads, template_repr, search_repr, current_features)
