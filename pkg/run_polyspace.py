#!/usr/bin/env python3

import sys
from pathlib import Path

# Add the src directory to the Python path
sys.path.append(str(Path(__file__).parent / 'src'))

from cli.commands import run


def main():
    """Run the polyspace command line from a source checkout."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
