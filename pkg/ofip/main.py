"""
Command-line front end: campaign runner, example evaluator and interval calculator.
"""

import logging
import sys
from typing import List, Optional, Sequence

from ofip.campaign import run_campaign
from ofip.fuzzy_number import check_alpha
from ofip.fuzzy_structures import example_interval, example_magnitude, example_norm
from ofip.ordered_interval import OrderedIntervalError, format_label
from ofip.utils.argument_parser import ArgumentParser
from ofip.utils.config import CampaignConfig, Config, ConfigError
from ofip.utils.data_processing import ReportFormatting
from ofip.utils.interval_parser import IntervalParseError, evaluate_expression
from ofip.utils.logger import Logger

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# Relative slack for the example containment verdict
EXAMPLE_TOLERANCE = 1e-12

logger = logging.getLogger(__name__)


def format_complex(value: complex) -> str:
    sign = '-' if value.imag < 0 else '+'
    return f"{format_label(value.real)} {sign} {format_label(abs(value.imag))}i"


def cmd_verify(config_path: str, env_config: Config, seed: Optional[int] = None,
               trials: Optional[int] = None, workers: Optional[int] = None) -> int:
    """Run a campaign and write its reports; 0 if every check passed, 1 otherwise, 2 on config errors."""
    try:
        config = CampaignConfig.from_file(config_path).with_overrides(trials=trials, workers=workers)
        report = run_campaign(config, seed=seed, workers=workers, env_config=env_config)
    except ConfigError as e:
        logger.error(f"Invalid campaign config: {e}")
        print(f"error: invalid config key {e.field!r}: {e}", file=sys.stderr)
        return EXIT_USAGE

    report_path = env_config.resolve_report_path(config.report_path)
    csv_path = env_config.resolve_report_path(config.csv_path) if config.csv_path else None
    try:
        report_path, csv_path = report.save(report_path, csv_path)
    except OSError as e:
        logger.error(f"Error writing report: {e}")
        print(f"error: cannot write report: {e}", file=sys.stderr)
        return EXIT_USAGE

    logger.info(f"Wrote {report_path} and {csv_path}")
    print(ReportFormatting.summary_line(report.to_dict()))
    print(f"report: {report_path}")
    print(f"csv:    {csv_path}")
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_example(alpha: float, x: Sequence[float], verbatim: bool = False) -> int:
    """Print the example norm at (alpha, x) with its target interval and containment verdict."""
    try:
        alpha = check_alpha(alpha)
        value = example_norm(alpha, x)
        printed = example_norm(alpha, x, verbatim=True)
        closed_form = example_magnitude(alpha, x)
        interval = example_interval(x)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    magnitude = abs(printed if verbatim else value)
    contained = interval.contains_within(magnitude, EXAMPLE_TOLERANCE)

    print(f"alpha       = {format_label(alpha)}")
    print(f"x           = ({format_label(float(x[0]))}, {format_label(float(x[1]))})")
    print(f"value       = {format_complex(value)}")
    print(f"verbatim    = {format_complex(printed)}")
    print(f"magnitude   = {format_label(magnitude)}")
    print(f"closed form = {format_label(closed_form)}")
    print(f"interval    = {interval} (canonical {interval.canonical()})")
    print(f"contained   = {'true' if contained else 'false'}")
    return EXIT_OK


def cmd_interval(expression: str) -> int:
    """Evaluate a calculator expression and print the label form and canonical form."""
    try:
        result = evaluate_expression(expression)
    except IntervalParseError as e:
        print(f"error: {e}", file=sys.stderr)
        print(f"  {expression}\n  {' ' * e.position}^", file=sys.stderr)
        return EXIT_USAGE
    except OrderedIntervalError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if result.is_degenerate or result.lo_label <= result.hi_label:
        print(f"{result}")
    else:
        print(f"{result} (canonical {result.canonical()})")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the ofip command."""
    argument_parser = ArgumentParser()
    try:
        args = argument_parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        env_config = Config()
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    log_level = argument_parser.get_log_level_from_args(args) or env_config.LOG_LEVEL
    Logger(log_level, env_config.LOG_DIR, env_config.LOG_TO_FILE).setup_logging()
    logger.debug(f"Loaded {env_config}")

    command = argument_parser.get_command(args)
    if command == 'verify':
        return cmd_verify(argument_parser.get_config_file(args), env_config,
                          seed=args.seed, trials=args.trials, workers=args.workers)
    if command == 'example':
        return cmd_example(args.alpha, args.x, args.verbatim)
    return cmd_interval(args.expression)


if __name__ == "__main__":
    sys.exit(main())
