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
Sequence records and the on-disk dataset layout.

A dataset root holds one directory per sequence with numbered PNG frames
and a ``groundtruth.txt`` file of ``x,y,w,h`` lines (one per frame).
"""

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Sequence, Union

import cv2
import numpy as np

from dualtrack.core.constants import FRAME_GLOB, FRAME_PATTERN, GROUNDTRUTH_FILE
from dualtrack.core.exceptions import DatasetError, SequenceError
from dualtrack.core.geometry import BBox

logger = logging.getLogger(__name__)

Frame = Union[Path, np.ndarray]

_SEPARATORS = re.compile(r"[,\s]+")


@dataclass
class SequenceRecord:
    """Ordered frames with one ground-truth box per frame.

    Frames are either file paths or in-memory H x W x 3 float32 RGB arrays.

    Attributes:
        name: Sequence identifier.
        frames: Frame paths or arrays.
        boxes: Ground-truth box per frame.
    """

    name: str
    frames: Sequence[Frame]
    boxes: List[BBox] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.frames) < 2:
            raise SequenceError(f"Sequence {self.name!r} needs at least two frames")
        if len(self.frames) != len(self.boxes):
            raise SequenceError(
                f"Sequence {self.name!r} has {len(self.frames)} frames but {len(self.boxes)} boxes"
            )

    def __len__(self) -> int:
        return len(self.frames)

    def frame(self, index: int) -> np.ndarray:
        """Return frame ``index`` as an H x W x 3 float32 array in [0, 1]."""
        item = self.frames[index]
        if isinstance(item, np.ndarray):
            return item
        return read_frame(item)


def read_frame(path: Path) -> np.ndarray:
    """Read an image file as float32 RGB in [0, 1].

    Raises:
        DatasetError: If the file cannot be decoded.
    """
    image = cv2.imread(str(path), cv2.IMREAD_COLOR)
    if image is None:
        raise DatasetError(f"Unreadable frame: {path}", path=str(path))
    return cv2.cvtColor(image, cv2.COLOR_BGR2RGB).astype(np.float32) / 255.0


def write_frame(path: Path, frame: np.ndarray) -> None:
    """Write a float RGB frame in [0, 1] as an 8-bit PNG."""
    pixels = np.clip(np.rint(frame * 255.0), 0, 255).astype(np.uint8)
    if not cv2.imwrite(str(path), cv2.cvtColor(pixels, cv2.COLOR_RGB2BGR)):
        raise DatasetError(f"Could not write frame: {path}", path=str(path))


def parse_box_line(line: str) -> BBox:
    """Parse one ``x,y,w,h`` line (commas, tabs or spaces)."""
    values = [float(v) for v in _SEPARATORS.split(line.strip()) if v]
    if len(values) != 4:
        raise ValueError(f"Expected 4 values, got {len(values)}")
    return BBox.from_xywh(*values)


def read_boxes(path: Path) -> List[BBox]:
    """Read a box file with one ``x,y,w,h`` line per frame.

    Raises:
        DatasetError: If the file is missing or a line is malformed.
    """
    if not path.exists():
        raise DatasetError(f"Missing box file: {path}", path=str(path))
    boxes: List[BBox] = []
    with open(path, "r", encoding="utf-8") as f:
        for number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                boxes.append(parse_box_line(line))
            except (ValueError, SequenceError) as exc:
                raise DatasetError(f"{path}:{number}: malformed box line {line.strip()!r}", path=str(path)) from exc
    return boxes


def format_box(box: BBox) -> str:
    x, y, w, h = box.to_xywh()
    return f"{x:.4f},{y:.4f},{w:.4f},{h:.4f}"


def write_boxes(path: Path, boxes: Sequence[BBox]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for box in boxes:
            f.write(format_box(box) + "\n")


def load_sequence(directory: Path) -> SequenceRecord:
    """Load one sequence directory.

    Raises:
        DatasetError: If the ground truth is missing or does not match the frames.
    """
    directory = Path(directory)
    boxes = read_boxes(directory / GROUNDTRUTH_FILE)
    frames = sorted(directory.glob(FRAME_GLOB))
    if len(frames) != len(boxes):
        raise DatasetError(
            f"{directory}: {len(frames)} frames but {len(boxes)} ground-truth lines",
            path=str(directory),
        )
    try:
        return SequenceRecord(directory.name, list(frames), boxes)
    except SequenceError as exc:
        raise DatasetError(str(exc), path=str(directory)) from exc


def discover_sequences(root: Path) -> List[Path]:
    """Sorted sequence directories under ``root``.

    Raises:
        DatasetError: If ``root`` is not a directory.
    """
    root = Path(root)
    if not root.is_dir():
        raise DatasetError(f"Dataset directory not found: {root}", path=str(root))
    return sorted(p for p in root.iterdir() if p.is_dir())


def load_dataset(root: Path) -> List[SequenceRecord]:
    """Load every sequence under ``root``, skipping unreadable ones with a warning."""
    records: List[SequenceRecord] = []
    for directory in discover_sequences(root):
        try:
            records.append(load_sequence(directory))
        except DatasetError as exc:
            logger.warning("Skipping sequence %s: %s", directory.name, exc)
    logger.info("Loaded %d sequences from %s", len(records), root)
    return records


def save_sequence(record: SequenceRecord, directory: Path) -> Path:
    """Write a sequence in the on-disk layout and return its directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for index in range(len(record)):
        write_frame(directory / FRAME_PATTERN.format(index=index), record.frame(index))
    write_boxes(directory / GROUNDTRUTH_FILE, record.boxes)
    return directory
