"""
Root-level entry point for the command-line tool.

Usage:
    python main.py <command> [options]

This re-exports `run` from cli.main so that both `python main.py …` and
`python -m cli.main …` work identically.
"""

import sys

from cli.main import run

if __name__ == "__main__":
    sys.exit(run())
