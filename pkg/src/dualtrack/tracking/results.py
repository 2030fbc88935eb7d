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
"""Per-sequence tracking results and their text files."""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Sequence

from dualtrack.core.constants import RESULTS_SUFFIX
from dualtrack.core.exceptions import DatasetError, SequenceError
from dualtrack.core.geometry import BBox
from dualtrack.data.records import format_box

logger = logging.getLogger(__name__)


@dataclass
class SequenceResult:
    """Output of one pass over a sequence.

    Attributes:
        name: Sequence name.
        boxes: One box per frame (the first is the initialization box).
        scores: One score per frame (1.0 for the first).
        update_frames: Frames at which the dynamic components were refreshed.
    """

    name: str
    boxes: List[BBox]
    scores: List[float] = field(default_factory=list)
    update_frames: List[int] = field(default_factory=list)


def results_path(directory: Path, name: str) -> Path:
    return Path(directory) / f"{name}{RESULTS_SUFFIX}"


def write_results(result: SequenceResult, directory: Path, extended: bool = False) -> Path:
    """Write ``x,y,w,h`` lines, with a trailing score column when ``extended``."""
    path = results_path(directory, result.name)
    path.parent.mkdir(parents=True, exist_ok=True)
    scores: Sequence[float] = result.scores or [1.0] * len(result.boxes)
    with open(path, "w", encoding="utf-8") as f:
        for box, score in zip(result.boxes, scores):
            line = format_box(box)
            if extended:
                line += f",{score:.6f}"
            f.write(line + "\n")
    logger.debug("Wrote %d boxes to %s", len(result.boxes), path)
    return path


def read_results(path: Path) -> SequenceResult:
    """Read a plain or extended result file.

    Raises:
        DatasetError: If the file is missing or malformed.
    """
    path = Path(path)
    if not path.exists():
        raise DatasetError(f"Missing results file: {path}", path=str(path))
    boxes: List[BBox] = []
    scores: List[float] = []
    with open(path, "r", encoding="utf-8") as f:
        lines = [line.strip() for line in f if line.strip()]
    for number, line in enumerate(lines, start=1):
        values = line.split(",")
        if len(values) not in (4, 5):
            raise DatasetError(f"{path}:{number}: expected 4 or 5 values", path=str(path))
        try:
            boxes.append(BBox.from_xywh(*(float(v) for v in values[:4])))
            scores.append(float(values[4]) if len(values) == 5 else 1.0)
        except (ValueError, SequenceError) as exc:
            raise DatasetError(f"{path}:{number}: {exc}", path=str(path)) from exc
    return SequenceResult(path.stem, boxes, scores)
