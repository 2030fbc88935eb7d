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
"""Core interfaces and enumerations.

Defines the option enums shared by configuration, model and CLI, and the
protocol every sequence tracker used by the evaluation harness follows.
"""

from __future__ import annotations

from enum import Enum
from typing import TYPE_CHECKING, Protocol

if TYPE_CHECKING:
    from dualtrack.data.records import SequenceRecord
    from dualtrack.tracking.results import SequenceResult


class AdaptMode(Enum):
    """Test-time adaptation modes selectable from the CLI."""

    OFF = "off"
    DTTA = "dtta"
    MOMENTUM = "momentum"
    DUA = "dua"
    ADABN = "adabn"


class FusionKind(Enum):
    """Filtration layer used by the relation-aware block."""

    FMF = "fmf"
    PSA = "psa"
    CONCAT = "concat"


class BlockKind(Enum):
    """Blocks the bench harness knows how to measure."""

    FMF = "fmf"
    PSA = "psa"
    FULL = "full"


class UpdateStrategy(Enum):
    """Dynamic template refresh strategies.

    Attributes:
        RUNNING_AVERAGE: Score-vs-running-average test after N frames.
        FIXED_INTERVAL: Refresh every N frames unconditionally.
        NONE: Never refresh the dynamic components.
    """

    RUNNING_AVERAGE = "running_average"
    FIXED_INTERVAL = "fixed_interval"
    NONE = "none"


class Corruption(Enum):
    """Synthetic per-frame corruptions."""

    NONE = "none"
    BRIGHTNESS = "brightness"
    BLUR = "blur"
    NOISE = "noise"


class ObjectKind(Enum):
    """Shapes drawn by the synthetic sequence generator."""

    RECTANGLE = "rectangle"
    ELLIPSE = "ellipse"


class MotionKind(Enum):
    """Motion models of the synthetic sequence generator."""

    STATIC = "static"
    LINEAR = "linear"


class SequenceTracker(Protocol):
    """Anything the OPE harness can run over a sequence.

    Example:
        >>> class Oracle:
        ...     def track_sequence(self, record):
        ...         return SequenceResult(name=record.name, boxes=list(record.boxes))
    """

    def track_sequence(self, record: "SequenceRecord") -> "SequenceResult":
        """Track one sequence from its first-frame box.

        Args:
            record: Sequence with frames and groundtruth.

        Returns:
            Per-frame predictions for the whole sequence.
        """
        ...
