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
"""Core building blocks: exceptions, constants, enums and box geometry."""

from dualtrack.core.geometry import BBox

__all__ = ["BBox"]
