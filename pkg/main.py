#!/usr/bin/env python3
"""
Entry point for running the ofip command from a source checkout.
"""

import sys
from pathlib import Path

# Make the package importable without installation
sys.path.insert(0, str(Path(__file__).parent))


def main():
    """Main entry point."""
    try:
        from ofip.main import main as ofip_main
        sys.exit(ofip_main())
    except KeyboardInterrupt:
        print("\nInterrupted by user.")
        sys.exit(1)


if __name__ == "__main__":
    main()
