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
Pixel-wise cross-correlation and the search-side fusion layer.
"""

import math

import torch
from torch import Tensor, nn

from dualtrack.core.exceptions import ShapeError


def pixelwise_cross_correlation(template: Tensor, search: Tensor) -> Tensor:
    """Correlate every template pixel vector with every search pixel vector.

    Output channel ``i * w_t + j`` holds ``<template[:, i, j], search[:, u, v]>
    / sqrt(C)`` at position ``(u, v)``.

    Args:
        template: N x C x h_t x w_t map.
        search: N x C x h_s x w_s map.

    Returns:
        N x (h_t * w_t) x h_s x w_s correlation map.

    Raises:
        ShapeError: If batch or channel counts differ.
    """
    if template.dim() != 4 or search.dim() != 4 or template.shape[:2] != search.shape[:2]:
        raise ShapeError(
            "Correlation needs equal batch and channel counts",
            expected=tuple(template.shape[:2]),
            actual=tuple(search.shape[:2]),
        )
    n, c, h_t, w_t = template.shape
    out = torch.einsum("ncij,ncuv->nijuv", template, search) / math.sqrt(c)
    return out.reshape(n, h_t * w_t, search.shape[2], search.shape[3])


class SearchFusion(nn.Module):
    """Concatenate the correlation map with F_t and apply one 1x1 convolution.

    Args:
        corr_channels: Correlation channels (template cells).
        feature_channels: Channels of F_t.
        out_channels: Head input width.
    """

    def __init__(self, corr_channels: int, feature_channels: int, out_channels: int):
        super().__init__()
        self.corr_channels = corr_channels
        self.feature_channels = feature_channels
        self.proj = nn.Conv2d(corr_channels + feature_channels, out_channels, kernel_size=1)

    def forward(self, corr: Tensor, features: Tensor) -> Tensor:
        if corr.shape[0] != features.shape[0] or corr.shape[2:] != features.shape[2:]:
            raise ShapeError(
                "Correlation and search features must share batch and spatial size",
                expected=tuple(corr.shape),
                actual=tuple(features.shape),
            )
        if corr.shape[1] != self.corr_channels or features.shape[1] != self.feature_channels:
            raise ShapeError(
                "Unexpected channel counts for search fusion",
                expected=(self.corr_channels, self.feature_channels),
                actual=(corr.shape[1], features.shape[1]),
            )
        return self.proj(torch.cat([corr, features], dim=1))
