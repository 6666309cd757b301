"""Command line entry point.

    mzmxcorr [--config FILE] [flags]            write a bias sweep as CSV
    mzmxcorr [--config FILE] [flags] --verify   run the invariant suite

Flags override values read from the config file. Exit codes: 0 success,
1 usage error, 2 invariant failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .exceptions import InvalidParameterError
from .sweep import BIAS_MODES, ConfigError, SweepConfig, load_config, run_sweep, write_csv
from .verify import run_verify

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mzmxcorr", description="Majorana branch-current cross-correlation sweeps.")
    p.add_argument("--config", help="flat 'key = value' config file")
    p.add_argument("--bias-mode", choices=BIAS_MODES)
    p.add_argument("--ev-min", type=float)
    p.add_argument("--ev-max", type=float)
    p.add_argument("--ev-steps", type=int)
    p.add_argument("--epsilon-m", type=float, action="append", help="repeatable")
    p.add_argument("--gamma-e-l", type=float)
    p.add_argument("--gamma-h-l", type=float)
    p.add_argument("--gamma-e-r", type=float)
    p.add_argument("--gamma-h-r", type=float)
    p.add_argument("--temperature", type=float)
    p.add_argument("--out", help="CSV path; stdout when omitted or '-'")
    p.add_argument("--seed", type=int)
    p.add_argument("--mc-duration", type=float)
    p.add_argument("--workers", type=int)
    p.add_argument("--verify", action="store_true", help="run the invariant suite instead of a sweep")
    p.add_argument("--corrupt-rate", action="store_true", help=argparse.SUPPRESS)
    return p


def config_from_args(args: argparse.Namespace) -> SweepConfig:
    values = load_config(args.config) if args.config else {}
    for key in (
        "bias_mode", "ev_min", "ev_max", "ev_steps", "gamma_e_l", "gamma_h_l",
        "gamma_e_r", "gamma_h_r", "temperature", "out", "seed", "mc_duration", "workers",
    ):
        v = getattr(args, key)
        if v is not None:
            values[key] = v
    if args.epsilon_m:
        values["epsilon_m"] = tuple(args.epsilon_m)
    return SweepConfig(**values).validate()


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = config_from_args(args)
    except (UsageError, ConfigError, InvalidParameterError) as exc:
        print(f"mzmxcorr: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"mzmxcorr: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO

    if args.verify:
        report = run_verify(config, corrupt_rates=args.corrupt_rate)
        print(report.render())
        return EXIT_OK if report.ok else EXIT_INVARIANT

    rows = run_sweep(config)
    try:
        write_csv(rows, config.out)
    except OSError as exc:
        print(f"mzmxcorr: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
