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
Pre-push quality checks for dualtrack.

Runs lint, format, type checks and the fast test suite in order and stops
at the first failure.
Usage: python scripts/check.py [--fast] [--slow]
"""

import subprocess
import sys
import time
from pathlib import Path
from typing import List, Tuple

PROJECT_ROOT = Path(__file__).resolve().parent.parent


class Colors:
    """ANSI color codes for terminal output."""

    CYAN = "\033[96m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    RED = "\033[91m"
    BOLD = "\033[1m"
    END = "\033[0m"


def print_section(message: str) -> None:
    bar = "=" * 60
    print(f"\n{Colors.BOLD}{Colors.CYAN}{bar}\n{message}\n{bar}{Colors.END}\n")


def run_check(command: List[str], description: str, step: int, total: int) -> Tuple[bool, float]:
    """
    Run one check from the project root.

    Args:
        command: Command and arguments
        description: Label printed in the summary
        step: Position of this check
        total: Number of checks

    Returns:
        Tuple of (passed, duration in seconds)
    """
    print(f"[{step}/{total}] {description}...")
    start = time.perf_counter()
    try:
        result = subprocess.run(command, cwd=PROJECT_ROOT, capture_output=True, text=True, check=False)
    except FileNotFoundError:
        print(f"{Colors.RED}Command not found: {command[0]} (run `uv sync --extra dev`){Colors.END}")
        return False, time.perf_counter() - start
    duration = time.perf_counter() - start

    if result.returncode == 0:
        print(f"{Colors.GREEN}passed{Colors.END} ({duration:.2f}s)")
        return True, duration
    print(f"{Colors.RED}failed{Colors.END} ({duration:.2f}s)")
    for label, stream in (("STDOUT", result.stdout), ("STDERR", result.stderr)):
        if stream:
            print(f"\n{Colors.YELLOW}{label}:{Colors.END}\n{stream}")
    return False, duration


def build_checks(fast: bool, slow: bool) -> List[Tuple[List[str], str]]:
    checks = [
        (["uv", "run", "ruff", "check", "."], "Ruff lint"),
        (["uv", "run", "ruff", "format", "--check", "."], "Ruff format"),
        (["uv", "run", "mypy", "src/dualtrack", "--ignore-missing-imports"], "MyPy"),
        (["uv", "run", "ty", "check", "src", "tests"], "Ty"),
    ]
    if not fast:
        checks.append((["uv", "run", "pytest", "tests/", "--tb=short", "-q"], "Pytest"))
    if slow:
        checks.append((["uv", "run", "pytest", "tests/", "-m", "slow", "--tb=short", "-q"], "Pytest (slow)"))
    return checks


def main() -> int:
    """Run all quality checks."""
    if not (PROJECT_ROOT / "pyproject.toml").exists():
        print(f"{Colors.RED}pyproject.toml not found under {PROJECT_ROOT}{Colors.END}")
        return 1

    checks = build_checks(fast="--fast" in sys.argv, slow="--slow" in sys.argv)
    print_section("dualtrack quality checks")

    results = []
    for step, (command, description) in enumerate(checks, 1):
        passed, duration = run_check(command, description, step, len(checks))
        results.append((description, passed, duration))
        if not passed:
            break

    print_section("Summary")
    for description, passed, duration in results:
        mark = f"{Colors.GREEN}ok{Colors.END}" if passed else f"{Colors.RED}FAIL{Colors.END}"
        print(f"  {mark:<16} {description} ({duration:.2f}s)")
    skipped = len(checks) - len(results)
    if skipped:
        print(f"  {skipped} check(s) not run")

    if all(passed for _, passed, _ in results) and not skipped:
        print(f"\n{Colors.GREEN}{Colors.BOLD}All checks passed{Colors.END}")
        return 0
    return 1


if __name__ == "__main__":
    sys.exit(main())
