#!/usr/bin/env python3
"""
Run script for the Goldbach sieve toolkit.

This script runs the command-line interface; `python run.py serve` starts the API.
"""

import sys

from src.goldbach.cli import cli

if __name__ == "__main__":
    sys.exit(cli(sys.argv[1:]))
