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
import math

import pytest

from dualtrack.core.exceptions import SequenceError
from dualtrack.core.geometry import BBox


class TestBBox:
    def test_xywh_round_trip(self):
        box = BBox.from_xywh(10, 20, 30, 40)
        assert box.as_tuple() == (10.0, 20.0, 40.0, 60.0)
        assert box.to_xywh() == (10.0, 20.0, 30.0, 40.0)

    def test_properties(self):
        box = BBox(0, 0, 4, 2)
        assert box.width == 4
        assert box.height == 2
        assert box.area == 8
        assert box.center == (2.0, 1.0)

    def test_from_corners_sorts(self):
        assert BBox.from_corners([5, 6, 1, 2]) == BBox(1, 2, 5, 6)

    def test_inverted_box(self):
        with pytest.raises(SequenceError):
            BBox(3, 0, 1, 1)

    def test_require_valid(self):
        with pytest.raises(SequenceError):
            BBox(1, 1, 1, 5).require_valid()
        with pytest.raises(SequenceError):
            BBox(0, 0, math.inf, 1).require_valid()
        box = BBox(0, 0, 1, 1)
        assert box.require_valid() is box

    def test_clamp(self):
        assert BBox(-5, -5, 300, 50).clamp(256, 40) == BBox(0, 0, 256, 40)

    def test_intersection(self):
        assert BBox(0, 0, 2, 2).intersection(BBox(1, 1, 3, 3)) == 1.0
        assert BBox(0, 0, 1, 1).intersection(BBox(2, 2, 3, 3)) == 0.0

    def test_scale_translate(self):
        box = BBox(1, 2, 3, 4).scale(2.0).translate(1, -1)
        assert box == BBox(3, 3, 7, 7)
