#!/usr/bin/env python3
"""
Run tests script for the Goldbach sieve toolkit.

This script runs the test suite with coverage of the goldbach package.
"""

import os
import sys

import pytest

if __name__ == "__main__":
    # Add the current directory to the path
    sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))

    # Run the tests
    sys.exit(pytest.main(["-v", "--cov=src/goldbach", "tests"]))
