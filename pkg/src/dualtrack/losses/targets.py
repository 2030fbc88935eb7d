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
"""Classification targets on the search-region grid."""

import torch
from torch import Tensor

from dualtrack.core.constants import SEARCH_GRID, SEARCH_SIZE
from dualtrack.core.geometry import BBox


def classification_target_map(gt: BBox, grid: int = SEARCH_GRID, search_size: float = SEARCH_SIZE) -> Tensor:
    """Binary 1 x grid x grid map of cells whose centers lie inside ``gt``.

    Cell (row v, column u) has its center at ``((u + 0.5) * stride, (v + 0.5)
    * stride)``; boundaries count as inside. A zero-area box yields zeros.

    Example:
        >>> classification_target_map(BBox(64, 64, 192, 192))[0, 4:12, 4:12].all()
        tensor(True)
    """
    target = torch.zeros(1, grid, grid)
    if gt.is_degenerate():
        return target
    stride = search_size / grid
    centers = (torch.arange(grid, dtype=torch.float64) + 0.5) * stride
    cols = (centers >= gt.x_min) & (centers <= gt.x_max)
    rows = (centers >= gt.y_min) & (centers <= gt.y_max)
    target[0] = (rows[:, None] & cols[None, :]).float()
    return target
