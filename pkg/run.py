#!/usr/bin/env python3
"""
Entry point for hochschild-bv.

    python run.py verify --family dnr --n 4 --r 1
"""

import os
import sys

# Add project root to path
root_path = os.path.dirname(os.path.abspath(__file__))
if root_path not in sys.path:
    sys.path.append(root_path)

from app.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
