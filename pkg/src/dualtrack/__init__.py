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
dualtrack - efficient siamese single-object tracking.

Dual-template / dual-search-region network with fast mixed filtration,
parameter-free dynamic template update and test-time adaptation of
batch-normalization statistics.
"""

from dualtrack.__version__ import (
    __author__,
    __description__,
    __license__,
    __title__,
    __version__,
    __version_info__,
)

__all__ = [
    "__version__",
    "__version_info__",
    "__title__",
    "__description__",
    "__author__",
    "__license__",
]
