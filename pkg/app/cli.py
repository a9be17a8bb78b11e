#!/usr/bin/env python3
"""
Command-line driver.

    python -m app.cli --config gamma.txt classify
    python -m app.cli verify paper-example

Exit status: 0 success, 1 failed assertion or check, 2 usage or input error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from app.exceptions import (
    ClassificationError,
    ComputationTimeout,
    ConfigError,
    InvalidInputError,
    MustafinError,
    ValidationFailure,
)
from app.schemas.run_config import RunConfig
from app.services.pipeline_service import COMMANDS, GOLDEN_CASES, render_text, run
from app.utils.config_parser import parse_config
from app.utils.logging import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mustafin",
        description="Special fibers of Mustafin degenerations of flag varieties",
    )
    parser.add_argument("command", choices=COMMANDS, help="What to compute")
    parser.add_argument("case", nargs="?", help=f"Golden case for verify: {', '.join(GOLDEN_CASES)}")
    parser.add_argument("--config", type=Path, help="Run configuration file")
    parser.add_argument("--seed", type=int, help="Seed for randomized tests")
    parser.add_argument("--radius", type=int, help="Neighbourhood radius for secondary candidates")
    parser.add_argument("--json", action="store_true", help="Print the structured report as JSON")
    parser.add_argument("--order", choices=["degrevlex", "lex"], help="Order of printed Groebner bases")
    parser.add_argument("--max-candidates", type=int, help="Cap on secondary candidates")
    parser.add_argument("--timeout-secs", type=float, help="Wall-clock budget for Groebner runs")
    parser.add_argument("--trials", type=int, help="Samples for the experiment command")
    return parser


def _overrides(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    updates = {
        "seed": args.seed,
        "radius": args.radius,
        "order": args.order,
        "max_candidates": args.max_candidates,
        "timeout_secs": args.timeout_secs,
        "trials": args.trials,
        "output": "json" if args.json else None,
    }
    updates = {k: v for k, v in updates.items() if v is not None}
    try:
        return RunConfig.model_validate({**config.model_dump(), **updates})
    except ValidationError as e:
        raise ConfigError(f"invalid option: {e.errors()[0]['msg']}") from e


def load_config(args: argparse.Namespace) -> Optional[RunConfig]:
    """The --config file with command-line overrides; verify runs without one."""
    if args.config is None:
        if args.command == "verify":
            return None
        raise ConfigError(f"{args.command} needs --config")
    try:
        text = args.config.read_text()
    except OSError as e:
        raise ConfigError(f"cannot read {args.config}: {e}") from e
    return _overrides(parse_config(text), args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging()

    try:
        config = load_config(args)
        report = run(
            args.command,
            config,
            args.case,
            seed=args.seed,
            timeout_secs=args.timeout_secs,
            radius=args.radius,
            max_candidates=args.max_candidates,
            order=args.order,
        )
    except (ConfigError, InvalidInputError) as e:
        logger.error(f"input error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ComputationTimeout as e:
        logger.error(f"timeout: {e}")
        print(f"timeout: {e}", file=sys.stderr)
        return EXIT_FAILED
    except (ValidationFailure, ClassificationError) as e:
        logger.error(f"assertion failed: {e}")
        print(f"assertion failed: {e}", file=sys.stderr)
        return EXIT_FAILED
    except MustafinError as e:
        logger.error(f"run failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED

    if args.json or (config is not None and config.output == "json"):
        print(report.model_dump_json(indent=2))
    else:
        print(render_text(report))
    return EXIT_OK if report.passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
