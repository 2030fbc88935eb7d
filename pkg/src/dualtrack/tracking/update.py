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
Parameter-free dynamic update schedule.

Each tracked frame increments a counter. Under the running-average strategy
the dynamic template and search region are refreshed once the counter has
reached N and the frame's score beats the running average as it stood
before this frame; the counter then restarts. The average is updated last
as ``(1 - lambda_d) * average + lambda_d * score``.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from dualtrack.config.config_manager import UpdatePolicy
from dualtrack.core.interfaces import UpdateStrategy


@dataclass(frozen=True)
class UpdateDecision:
    """Outcome of one scheduling step."""

    update: bool
    counter: int
    score_average: float


def dynamic_update_check(
    counter: int, score_average: float, score: float, policy: Optional[UpdatePolicy] = None
) -> UpdateDecision:
    """Advance the schedule by one frame.

    Args:
        counter: Frames since the last update.
        score_average: Running average before this frame.
        score: Classification score of this frame.
        policy: N, lambda_d and strategy.

    Returns:
        Whether to refresh, and the new counter and average.

    Example:
        >>> d = dynamic_update_check(0, 1.0, 0.8)
        >>> d.update, d.score_average
        (False, 0.95)
    """
    policy = policy or UpdatePolicy()
    strategy = UpdateStrategy(policy.strategy)
    counter += 1
    if strategy is UpdateStrategy.RUNNING_AVERAGE:
        update = counter >= policy.n and score > score_average
    elif strategy is UpdateStrategy.FIXED_INTERVAL:
        update = counter >= policy.n
    else:
        update = False
    if update:
        counter = 0
    average = (1.0 - policy.lambda_d) * score_average + policy.lambda_d * score
    return UpdateDecision(update, counter, average)


def simulate_updates(
    scores: Iterable[float], policy: Optional[UpdatePolicy] = None
) -> Tuple[List[int], List[float]]:
    """Run the schedule over a score stream starting at frame 1.

    Returns:
        (frames at which an update fires, running average after each frame).
    """
    policy = policy or UpdatePolicy()
    counter, average = 0, policy.initial_average
    frames: List[int] = []
    averages: List[float] = []
    for t, score in enumerate(scores, start=1):
        decision = dynamic_update_check(counter, average, score, policy)
        counter, average = decision.counter, decision.score_average
        if decision.update:
            frames.append(t)
        averages.append(average)
    return frames, averages
