"""Run the acceptance tests and print one verdict line per criterion.

    python3 scripts/run_acceptance.py [-k expr]
"""

from __future__ import annotations

import sys
from pathlib import Path

import pytest


def main() -> int:
    tests = Path(__file__).resolve().parent.parent / "tests" / "test_acceptance.py"
    return pytest.main([str(tests), "-q", *sys.argv[1:]])


if __name__ == "__main__":
    sys.exit(main())
