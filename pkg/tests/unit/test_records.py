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
import logging

import numpy as np
import pytest

from dualtrack.core.exceptions import DatasetError, SequenceError
from dualtrack.core.geometry import BBox
from dualtrack.data.records import (
    SequenceRecord,
    load_dataset,
    load_sequence,
    parse_box_line,
    read_boxes,
    read_frame,
    save_sequence,
    write_boxes,
)


class TestBoxFiles:
    def test_parse_separators(self):
        expected = BBox.from_xywh(1, 2, 3, 4)
        assert parse_box_line("1,2,3,4") == expected
        assert parse_box_line("1\t2\t3\t4\n") == expected
        assert parse_box_line("1 2 3 4") == expected

    def test_write_and_read(self, tmp_path):
        boxes = [BBox.from_xywh(10.5, 20.25, 30.0, 40.125), BBox.from_xywh(0, 0, 1, 1)]
        path = tmp_path / "groundtruth.txt"
        write_boxes(path, boxes)
        assert path.read_text().splitlines()[0] == "10.5000,20.2500,30.0000,40.1250"
        assert read_boxes(path) == boxes

    def test_malformed_line(self, tmp_path):
        path = tmp_path / "groundtruth.txt"
        path.write_text("1,2,3,4\n1,2,3\n")
        with pytest.raises(DatasetError, match=":2:"):
            read_boxes(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DatasetError):
            read_boxes(tmp_path / "groundtruth.txt")


class TestSequenceRecord:
    def test_needs_two_frames(self):
        with pytest.raises(SequenceError):
            SequenceRecord("one", [np.zeros((4, 4, 3))], [BBox(0, 0, 1, 1)])

    def test_box_count(self):
        with pytest.raises(SequenceError):
            SequenceRecord("two", [np.zeros((4, 4, 3))] * 2, [BBox(0, 0, 1, 1)])


class TestDatasetLayout:
    def test_save_and_load(self, short_record, tmp_path):
        directory = save_sequence(short_record, tmp_path / "short")
        loaded = load_sequence(directory)
        assert loaded.name == "short"
        assert len(loaded) == len(short_record)
        assert np.allclose(loaded.frame(2), short_record.frame(2), atol=1 / 255)

    def test_frame_count_mismatch(self, short_record, tmp_path):
        directory = save_sequence(short_record, tmp_path / "short")
        sorted(directory.glob("*.png"))[-1].unlink()
        with pytest.raises(DatasetError):
            load_sequence(directory)

    def test_unreadable_frame(self, tmp_path):
        path = tmp_path / "00000000.png"
        path.write_bytes(b"not an image")
        with pytest.raises(DatasetError):
            read_frame(path)

    def test_skips_broken_sequences(self, short_record, tmp_path, caplog):
        save_sequence(short_record, tmp_path / "data" / "good")
        (tmp_path / "data" / "broken").mkdir()
        with caplog.at_level(logging.WARNING, logger="dualtrack.data.records"):
            records = load_dataset(tmp_path / "data")
        assert [r.name for r in records] == ["good"]
        assert "broken" in caplog.text

    def test_missing_root(self, tmp_path):
        with pytest.raises(DatasetError):
            load_dataset(tmp_path / "nowhere")
