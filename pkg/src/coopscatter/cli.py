"""Command line entry point for the scenario runner."""

from __future__ import annotations

import argparse
import os
import sys

from .scenarios import OUTPUT_DIR_ENV, SCENARIOS, ConfigError, run_scenario, validate_config
from .solver import NumericalError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="coopscatter",
        description="Cooperative light scattering scenarios; writes CSV + metadata.")
    parser.add_argument("--scenario", required=True, choices=sorted(SCENARIOS),
                        help="named scenario to run")
    parser.add_argument("--config", default=None,
                        help="JSON config file (defaults apply when omitted)")
    parser.add_argument("--out", default=None,
                        help=f"output directory (default: ${OUTPUT_DIR_ENV} or cwd)")
    parser.add_argument("--seed", type=int, default=None,
                        help="override master seed")
    parser.add_argument("--samples", type=int, default=None,
                        help="override Monte Carlo sample count")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker pool size (default: available parallelism)")
    args = parser.parse_args(argv)

    try:
        cfg = validate_config(args.config)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    cfg["threads"] = args.threads if args.threads else (os.cpu_count() or 1)
    if args.seed is not None:
        cfg["master_seed"] = args.seed
    if args.samples is not None:
        cfg["n_samples"] = args.samples

    try:
        written = run_scenario(args.scenario, cfg, args.out)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    for path in written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
