"""Command-line entrypoint for extrank (repo root)."""

import os
import sys

ROOT_DIR = os.path.dirname(os.path.abspath(__file__))
if ROOT_DIR not in sys.path:
    sys.path.insert(0, ROOT_DIR)

from extrank.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
