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
"""Online tracking: state, dynamic update schedule, tracker and result files."""

from dualtrack.tracking.results import SequenceResult, read_results, results_path, write_results
from dualtrack.tracking.state import TrackState
from dualtrack.tracking.tracker import FrameResult, Tracker
from dualtrack.tracking.update import UpdateDecision, dynamic_update_check, simulate_updates

__all__ = [
    "FrameResult",
    "SequenceResult",
    "TrackState",
    "Tracker",
    "UpdateDecision",
    "dynamic_update_check",
    "read_results",
    "results_path",
    "simulate_updates",
    "write_results",
]
