"""Command line front end: one subcommand per experiment.

Exit codes: 0 all assertions passed, 1 an assertion was violated,
2 usage or sizing problem. Flags may come from the command line or a JSON
config file (--config); explicit flags win over the file.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .dht import ENTRY_BOUND, FULL
from .errors import SizeLimitError
from .experiments import (
    EXPERIMENT_NAMES,
    ExperimentConfig,
    ExperimentFailure,
    emit,
    run_experiment,
)

DEFAULTS = {
    "trie-exact": {"m": 8, "w": 3, "k": 2},
    "trie-random": {"m": 12, "w": 4, "k": 2, "population": 1024, "trials": 10000},
    "identity-sweep": {"m": 20},
    "position-law": {"m": 10, "w": 3, "trials": 100000},
    "chord-single": {
        "m": 12, "n": 256, "trials": 1000, "entries_factor": 1, "mode": FULL,
    },
    "chord-wildcard": {
        "m": 16, "w": 4, "n": 1024, "trials": 1000, "entries_factor": 4,
        "mode": FULL,
    },
    "chord-decay": {
        "m": 16, "n": 256, "trials": 500, "entries_factor": 8,
        "mode": ENTRY_BOUND,
    },
}

_FLAG_DESTS = (
    "m", "w", "k", "n", "population", "entries_factor", "trials", "seed",
    "mode", "fmt", "out",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wildquery",
        description="Wildcard query cost experiments over tries and a Chord ring",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subparsers = parser.add_subparsers(dest="experiment", required=True)
    for name in EXPERIMENT_NAMES:
        sub = subparsers.add_parser(name, help=f"run the {name} experiment")
        sub.add_argument("--m", type=int, help="key length in letters/bits")
        sub.add_argument("--w", type=int, help="number of wildcards")
        sub.add_argument("--k", type=int, help="trie arity")
        sub.add_argument("--n", type=int, help="ring nodes")
        sub.add_argument("--population", type=int, help="keys stored per trie")
        sub.add_argument(
            "--entries-factor", dest="entries_factor", type=int,
            help="entries = factor * m * n (for chord-decay, the sweep maximum)",
        )
        sub.add_argument(
            "--trials", type=int,
            help="trial count (chord-single: 0 sweeps every target and start)",
        )
        sub.add_argument("--seed", type=int, help="master seed (required)")
        sub.add_argument("--mode", choices=[FULL, ENTRY_BOUND], help="finger mode")
        sub.add_argument(
            "--format", dest="fmt", choices=["csv", "json"], help="report format"
        )
        sub.add_argument("--out", help="report path (default <experiment>.<format>)")
        sub.add_argument("--config", help="JSON file supplying any of the flags")
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    merged = dict(DEFAULTS.get(args.experiment, {}))
    if args.config:
        try:
            with open(args.config) as handle:
                loaded = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            raise SizeLimitError(f"cannot read config {args.config}: {exc}")
        if not isinstance(loaded, dict):
            raise SizeLimitError(f"config {args.config} must hold a JSON object")
        stated = loaded.pop("experiment", args.experiment)
        if stated != args.experiment:
            raise SizeLimitError(
                f"config file is for {stated!r}, not {args.experiment!r}"
            )
        unknown = set(loaded) - set(_FLAG_DESTS)
        if unknown:
            raise SizeLimitError(f"unknown config keys: {sorted(unknown)}")
        merged.update(loaded)
    for dest in _FLAG_DESTS:
        value = getattr(args, dest, None)
        if value is not None:
            merged[dest] = value
    if merged.get("seed") is None:
        raise SizeLimitError("a seed is mandatory; pass --seed")
    cfg = ExperimentConfig(experiment=args.experiment, **merged)
    if cfg.out is None:
        cfg.out = f"{cfg.experiment}.{cfg.fmt}"
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except (SizeLimitError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    try:
        report = run_experiment(cfg)
    except ExperimentFailure as exc:
        print(f"ASSERTION FAILED: {exc}", file=sys.stderr)
        return 1
    except (SizeLimitError, ValueError) as exc:
        print(f"sizing error: {exc}", file=sys.stderr)
        return 2
    try:
        emit(report, cfg.fmt, cfg.out)
    except OSError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    print(f"{cfg.experiment}: {len(report.rows)} rows -> {cfg.out}")
    for key, value in report.aggregates.items():
        print(f"  {key} = {value}")
    if report.wall_clock_s is not None:
        print(f"wall clock: {report.wall_clock_s:.2f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
