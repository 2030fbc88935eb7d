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
"""Version information for dualtrack"""

__version__ = "0.1.0"
__version_info__ = tuple(int(i) for i in __version__.split("."))

__title__ = "dualtrack"
__description__ = "Dual-template siamese tracker with fast mixed filtration and test-time BN adaptation"
__author__ = "dualtrack contributors"
__license__ = "MIT"
