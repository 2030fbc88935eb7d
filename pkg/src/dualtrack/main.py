#!/usr/bin/env python3
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
Main entry point for dualtrack
Runs the train / track / eval / bench / synth command line
"""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional, Sequence

from dualtrack.cli.commands import run
from dualtrack.core.constants import ENV_LOG_LEVEL

LOG_DIR_ENV = "DUALTRACK_LOG_DIR"


def get_log_dir() -> Path:
    """Directory for the rotating log file (``DUALTRACK_LOG_DIR`` or ./logs)."""
    return Path(os.getenv(LOG_DIR_ENV, Path.cwd() / "logs"))


def configure_logging(level: Optional[str] = None) -> None:
    """Set up basic logging to console and rotating file."""
    if logging.getLogger().handlers:
        return

    log_level = (level or os.getenv(ENV_LOG_LEVEL, "INFO")).upper()
    log_dir = get_log_dir()
    log_dir.mkdir(parents=True, exist_ok=True)
    log_file = log_dir / "dualtrack.log"

    formatter = logging.Formatter("%(asctime)s [%(levelname)s] %(name)s: %(message)s")

    file_handler = RotatingFileHandler(
        log_file, maxBytes=1_000_000, backupCount=3, encoding="utf-8"
    )
    file_handler.setFormatter(formatter)

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)

    logging.basicConfig(level=log_level, handlers=[file_handler, console_handler])


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one dualtrack command.

    Logging is configured once the effective log level is known; the
    process exits with the command's status code.
    """
    status = run(argv, configure=configure_logging)
    if argv is None:
        sys.exit(status)
    return status


if __name__ == "__main__":
    main()
