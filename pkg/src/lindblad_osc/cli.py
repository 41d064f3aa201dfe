"""``lindblad-osc`` command-line entry point.

Exit codes: 0 ok, 1 configuration error, 2 constraint violation, 3 oracle
check failed, 4 convergence or truncation problem.

With ``--sweep key=a:b:n`` the command runs once per value (in parallel, at
most ``LINDBLAD_OSC_THREADS`` at a time).  Tables gain a leading column
named after the key; JSON documents become a list of ``{key, result}``.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import commands
from .config import config_help, parse_config
from .errors import (
    ConfigError,
    ConstraintViolation,
    ConvergenceError,
    LindbladOscError,
    NumericalConsistencyError,
    TruncationError,
)

EXIT_OK, EXIT_CONFIG, EXIT_CONSTRAINT, EXIT_ORACLE, EXIT_NUMERICS = 0, 1, 2, 3, 4
THREADS_ENV = "LINDBLAD_OSC_THREADS"


@dataclass
class Outcome:
    table: tuple | None = None  # (header, rows)
    document: object = None
    code: int = EXIT_OK
    summary: str | None = None
    output_path: str | None = None


def parse_sweep(spec: str):
    """``key=a:b:n`` -> ``(key, [n values evenly spaced from a to b])``."""
    try:
        key, span = spec.split("=", 1)
        start, stop, count = span.split(":")
        count = int(count)
        if count < 1:
            raise ValueError
        return key.strip(), [float(v) for v in np.linspace(float(start), float(stop), count)]
    except ValueError:
        raise ConfigError(f"bad sweep spec {spec!r}; expected key=start:stop:count") from None


def _max_workers(n_runs):
    cap = os.environ.get(THREADS_ENV)
    try:
        cap = int(cap) if cap else (os.cpu_count() or 1)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {cap!r}") from None
    return max(1, min(cap, n_runs))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lindblad-osc",
        description="Damped quantum harmonic oscillator: closed-form evolution, entropy and oracle checks.",
        epilog=config_help(),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="key = value configuration file")
    common.add_argument("--out", help="write the result here instead of stdout (overrides output_path)")
    common.add_argument("--sweep", help="run once per value: key=start:stop:count")
    sub.add_parser("validate", parents=[common], help="diffusion-constraint report as JSON")
    sub.add_parser("evolve", parents=[common], help="time series as CSV (JSON if output_format = json)")
    sub.add_parser("asymptote", parents=[common], help="stationary covariances, s and S as JSON")
    wig = sub.add_parser("wigner", parents=[common], help="Wigner function on a grid as CSV")
    wig.add_argument("--t", type=float, default=None, help="time (default: t_max)")
    wig.add_argument("--grid", type=int, default=101, help="points per axis")
    sub.add_parser("oracle-check", parents=[common],
                   help="cross-check closed forms against numerical oracles")
    return parser


def _run(args, text, overrides) -> Outcome:
    outcome = _dispatch(args, text, overrides)
    outcome.output_path = parse_config(text, overrides, check_constraints=False).output_path
    return outcome


def _dispatch(args, text, overrides) -> Outcome:
    if args.command == "validate":
        config = parse_config(text, overrides, check_constraints=False)
        report, valid = commands.validate_command(config)
        return Outcome(document=report, code=EXIT_OK if valid else EXIT_CONSTRAINT)
    config = parse_config(text, overrides)
    if args.command == "evolve":
        if config.output_format == "json":
            return Outcome(document=commands.evolve_records(config))
        return Outcome(table=(commands.EVOLVE_COLUMNS, commands.evolve_table(config)))
    if args.command == "asymptote":
        return Outcome(document=commands.asymptote_command(config))
    if args.command == "wigner":
        t = config.t_max if args.t is None else args.t
        return Outcome(table=(commands.WIGNER_COLUMNS, commands.wigner_table(config, t, args.grid)))
    report = commands.oracle_check_command(config)
    return Outcome(document=report.as_dict(), code=report.exit_code, summary=report.text())


def _render(outcomes, key, values) -> str:
    if outcomes[0].table is not None:
        header, _ = outcomes[0].table
        if key is None:
            return commands.to_csv(header, outcomes[0].table[1])
        rows = [np.column_stack([np.full(len(o.table[1]), v), o.table[1]]) for v, o in zip(values, outcomes)]
        return commands.to_csv((key, *header), np.vstack(rows))
    if key is None:
        return commands.to_json(outcomes[0].document)
    return commands.to_json([{key: v, "result": o.document} for v, o in zip(values, outcomes)])


def _exit_code(outcomes) -> int:
    codes = {o.code for o in outcomes}
    for code in (EXIT_ORACLE, EXIT_CONSTRAINT, EXIT_NUMERICS):
        if code in codes:
            return code
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"lindblad-osc: cannot read config {args.config}: {exc.strerror}", file=sys.stderr)
        return EXIT_CONFIG

    key = values = None
    try:
        if args.sweep:
            key, values = parse_sweep(args.sweep)
            with ThreadPoolExecutor(_max_workers(len(values))) as pool:
                outcomes = list(pool.map(lambda v: _run(args, text, {key: v}), values))
        else:
            outcomes = [_run(args, text, None)]
    except ConstraintViolation as exc:
        print(f"lindblad-osc: constraint violation: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except (ConvergenceError, TruncationError, NumericalConsistencyError) as exc:
        print(f"lindblad-osc: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICS
    except LindbladOscError as exc:
        print(f"lindblad-osc: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    code = _exit_code(outcomes)
    # --out wins over the output_path configuration key
    out_path = args.out or outcomes[0].output_path
    if args.command == "oracle-check":
        for value, outcome in zip(values or [None], outcomes):
            if value is not None:
                print(f"# {key} = {commands.format_float(value)}")
            sys.stdout.write(outcome.summary)
        if not out_path:
            return code

    document = _render(outcomes, key, values)
    if not out_path:
        sys.stdout.write(document)
        return code
    try:
        Path(out_path).write_text(document, encoding="utf-8")
    except OSError as exc:
        print(f"lindblad-osc: cannot write {out_path}: {exc.strerror}", file=sys.stderr)
        return EXIT_CONFIG
    return code


if __name__ == "__main__":
    sys.exit(main())
