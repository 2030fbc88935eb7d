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
Custom exceptions for dualtrack.

This module defines an exception hierarchy so that the CLI can map
failures onto exit codes and callers can catch whole families at once.
"""

from typing import Any, Dict, Optional, Sequence


class DualTrackError(Exception):
    """Base class for all dualtrack exceptions."""

    pass


class ShapeError(DualTrackError, ValueError):
    """Exception raised when a tensor or patch has an illegal shape."""

    def __init__(
        self,
        message: str,
        expected: Optional[Sequence[Any]] = None,
        actual: Optional[Sequence[Any]] = None,
    ):
        """Initialize a shape error.

        Args:
            message: Error description.
            expected: Expected shape (or shapes), if known.
            actual: Shape that was received.
        """
        self.expected = tuple(expected) if expected is not None else None
        self.actual = tuple(actual) if actual is not None else None
        super().__init__(message)


class AdaptationStateError(DualTrackError):
    """Exception raised when test-time adaptation has no source statistics."""

    pass


class ConfigurationError(DualTrackError):
    """Exception raised on configuration errors."""

    pass


class MissingConfigurationError(ConfigurationError):
    """Exception raised when a required configuration is missing."""

    def __init__(self, message: str, config_key: str = ""):
        """Initialize a missing configuration error.

        Args:
            message: Error description.
            config_key: Name of the missing configuration key.
        """
        self.config_key = config_key
        super().__init__(message)


class InvalidConfigValueError(ConfigurationError):
    """Exception raised when a configuration value is out of range."""

    def __init__(self, message: str, config_key: str = ""):
        """Initialize an invalid configuration value error.

        Args:
            message: Error description.
            config_key: Dotted name of the offending key.
        """
        self.config_key = config_key
        super().__init__(message)


class UnknownAdaptationModeError(ConfigurationError):
    """Exception raised when an adaptation mode is not registered."""

    def __init__(self, mode: str):
        """Initialize an unknown adaptation mode error.

        Args:
            mode: The mode string that was requested.
        """
        self.mode = mode
        super().__init__(f"Unknown adaptation mode: {mode!r}")


class DataError(DualTrackError):
    """Base exception for dataset and sequence errors."""

    pass


class DatasetError(DataError):
    """Exception raised when a dataset directory cannot be read."""

    def __init__(self, message: str, path: str = ""):
        """Initialize a dataset error.

        Args:
            message: Error description.
            path: Offending file or directory.
        """
        self.path = path
        super().__init__(message)


class SequenceError(DataError):
    """Exception raised on degenerate sequences or boxes."""

    pass


class CheckpointError(DualTrackError):
    """Exception raised when a checkpoint cannot be written or read."""

    def __init__(self, message: str, path: str = ""):
        """Initialize a checkpoint error.

        Args:
            message: Error description.
            path: Path to the checkpoint file.
        """
        self.path = path
        super().__init__(message)


class NumericError(DualTrackError):
    """Base exception for numerical failures."""

    pass


class NonFiniteLossError(NumericError):
    """Exception raised when a training loss becomes NaN or infinite."""

    def __init__(self, step: int, components: Dict[str, float]):
        """Initialize a non-finite loss error.

        Args:
            step: Optimizer step at which the loss diverged.
            components: Loss components recorded at that step.
        """
        self.step = step
        self.components = dict(components)
        detail = ", ".join(f"{k}={v:.6g}" for k, v in self.components.items())
        super().__init__(f"Non-finite loss at step {step}: {detail}")
