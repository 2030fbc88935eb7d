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
Build the MkDocs site.

Usage:
    python scripts/build_docs.py          # build into site/
    python scripts/build_docs.py serve    # live preview
    python scripts/build_docs.py clean    # remove site/
"""

import argparse
import shutil
import subprocess
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parent.parent
SITE_DIR = PROJECT_ROOT / "site"


def mkdocs(*args: str) -> int:
    command = ["mkdocs", *args]
    print(" ".join(command))
    try:
        return subprocess.call(command, cwd=PROJECT_ROOT)
    except FileNotFoundError:
        print("mkdocs not found; install the docs extra: pip install -e '.[docs]'")
        return 1


def clean() -> int:
    if SITE_DIR.exists():
        shutil.rmtree(SITE_DIR)
        print(f"Removed {SITE_DIR}")
    return 0


def main() -> int:
    parser = argparse.ArgumentParser(description="Build the dualtrack documentation")
    parser.add_argument("action", nargs="?", default="build", choices=["build", "serve", "clean"])
    action = parser.parse_args().action
    if action == "clean":
        return clean()
    if action == "serve":
        return mkdocs("serve")
    code = mkdocs("build")
    if code == 0:
        print(f"Documentation built in {SITE_DIR}")
    return code


if __name__ == "__main__":
    sys.exit(main())
