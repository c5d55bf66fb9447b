"""
Argument parsing for the ofip command line.
"""

import argparse
import logging
import math
from typing import List, Optional


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _plane_vector(text: str) -> List[float]:
    parts = text.split(',')
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected X1,X2, got {text!r}")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two numbers, got {text!r}") from None
    if not all(math.isfinite(v) for v in values):
        raise argparse.ArgumentTypeError(f"entries must be finite, got {text!r}")
    return values


class ArgumentParser:
    """Handle command line argument parsing."""

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self.parser = self._create_parser()

    def _create_parser(self) -> argparse.ArgumentParser:
        """Create the argument parser with its subcommands."""
        parser = argparse.ArgumentParser(
            prog='ofip',
            description="Ordered-interval fuzzy inner products: calculator, example evaluator and verifier",
            formatter_class=argparse.RawDescriptionHelpFormatter
        )

        parser.add_argument(
            '--log-level',
            choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
            default=None,
            help='Set logging level (default: OFIP_LOG_LEVEL or INFO)'
        )

        commands = parser.add_subparsers(dest='command', required=True)

        verify = commands.add_parser('verify', help='Run a randomized verification campaign')
        verify.add_argument('--config', required=True, help='Path to the campaign JSON file')
        verify.add_argument('--seed', type=_non_negative_int, help='Override the campaign seed')
        verify.add_argument('--trials', type=_non_negative_int, help='Override the number of trials')
        verify.add_argument('--workers', type=_positive_int, help='Worker threads (default: 1)')

        example = commands.add_parser('example', help='Evaluate the example fuzzy norm on R^2')
        example.add_argument('--alpha', type=float, required=True, help='Level in (0, 1]')
        example.add_argument('--x', type=_plane_vector, required=True, help='Vector as X1,X2')
        example.add_argument('--verbatim', action='store_true',
                             help='Use the unsquared (1 - alpha^2) factor in the imaginary radicand')

        interval = commands.add_parser('interval', help='Evaluate an ordered-interval expression')
        interval.add_argument('expression', help='e.g. "[1,2] (+) [3,-4]"')

        return parser

    def parse_args(self, args=None) -> argparse.Namespace:
        """Parse command line arguments."""
        try:
            return self.parser.parse_args(args)
        except SystemExit as e:
            self.logger.debug(f"Argument parsing exited with {e.code}")
            raise

    def get_command(self, args: argparse.Namespace) -> str:
        return args.command

    def get_log_level_from_args(self, args: argparse.Namespace) -> Optional[str]:
        """Get log level from parsed arguments."""
        return getattr(args, 'log_level', None)

    def get_config_file(self, args: argparse.Namespace) -> Optional[str]:
        """Get configuration file path from arguments."""
        return getattr(args, 'config', None)
