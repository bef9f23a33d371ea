#!/usr/bin/env python3
"""
Command-line runner for the cubic surface statistics toolkit.

Examples:
    python run_cli.py tables 1
    python run_cli.py verify
    python run_cli.py census --jobs 8
    python run_cli.py distribution double-sixes --format json
"""

import os
import sys

# Ensure project root is on path
PROJECT_ROOT = os.path.abspath(os.path.dirname(__file__))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from src.cli.main import main


if __name__ == "__main__":
    sys.exit(main())
