"""Command-line sweeps, plots and self-verification.

Precedence is flags over config file over defaults.  The config file is
flat ``key = value`` text using the flag names without dashes-dashes;
repeatable flags become comma lists, e.g.::

    channel = x, z
    measure = tau, gqd
    kt-max = 0.4
    steps = 41

Exit codes: 0 success, 1 usage error (bad flags, bad config file, bad
values), 2 verification failure, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import sys

from .channels import Channel
from .discord import OptimizerConfig
from .sweep import MEASURES, METHODS, SweepConfig, emit_csv, emit_plot_script, run_sweep
from .verify import format_report, run_checks

_CHANNEL_VALUES = tuple(c.value for c in Channel)

_CONFIG_KEYS = (
    "channel", "measure", "kt-max", "steps", "method",
    "grid-theta", "grid-phi", "refine", "out", "plot", "jobs",
)

_DEFAULTS = {
    "channel": list(_CHANNEL_VALUES),
    "measure": list(MEASURES),
    "kt-max": 0.6,
    "steps": 121,
    "method": "both",
    "grid-theta": 21,
    "grid-phi": 16,
    "refine": 3,
    "out": "sweep.csv",
    "plot": False,
    "jobs": 1,
}


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors exit with code 1, not 2."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ghzdyn",
        description="Sweep entanglement and discord measures of a noisy 4-qubit GHZ register.",
        epilog="example: ghzdyn --channel x --channel z --measure tau --kt-max 0.4 --out run.csv",
    )
    parser.add_argument("--channel", action="append", choices=_CHANNEL_VALUES,
                        help="noise channel to sweep; repeatable (default: all)")
    parser.add_argument("--measure", action="append", choices=MEASURES,
                        help="quantity to compute; repeatable (default: all)")
    parser.add_argument("--kt-max", type=float, default=None,
                        help="largest kappa*t on the grid (default 0.6)")
    parser.add_argument("--steps", type=int, default=None,
                        help="number of grid points including both ends (default 121)")
    parser.add_argument("--method", choices=METHODS, default=None,
                        help="analytic, numeric, or both columns (default both)")
    parser.add_argument("--grid-theta", type=int, default=None,
                        help="theta points in the discord optimiser grid (default 21)")
    parser.add_argument("--grid-phi", type=int, default=None,
                        help="phi points in the discord optimiser grid (default 16)")
    parser.add_argument("--refine", type=int, default=None,
                        help="coordinate-descent sweeps in the optimiser (default 3)")
    parser.add_argument("--out", default=None,
                        help="CSV output path (default sweep.csv)")
    parser.add_argument("--plot", action="store_true", default=None,
                        help="also emit a standalone matplotlib script next to the CSV")
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker processes for the sweep (default 1)")
    parser.add_argument("--config", default=None,
                        help="flat key = value file supplying defaults for the flags above")
    parser.add_argument("--verify", action="store_true",
                        help="run the built-in cross-checks and exit (0 pass, 2 fail)")
    return parser


def parse_config_file(path: str) -> dict[str, str]:
    """Read a flat ``key = value`` file, rejecting unknown keys and noise."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw_lines = fh.readlines()
    except OSError as exc:
        raise ValueError(f"cannot read config file {path}: {exc}") from exc
    values: dict[str, str] = {}
    for lineno, raw in enumerate(raw_lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r} "
                             f"(known: {', '.join(_CONFIG_KEYS)})")
        values[key] = value
    return values


def _coerce(key: str, text: str):
    if key in ("channel", "measure"):
        return [item.strip() for item in text.split(",") if item.strip()]
    if key in ("steps", "grid-theta", "grid-phi", "refine", "jobs"):
        try:
            return int(text)
        except ValueError:
            raise ValueError(f"config key {key!r}: expected an integer, got {text!r}") from None
    if key == "kt-max":
        try:
            return float(text)
        except ValueError:
            raise ValueError(f"config key {key!r}: expected a number, got {text!r}") from None
    if key == "plot":
        lowered = text.lower()
        if lowered in ("true", "yes", "1"):
            return True
        if lowered in ("false", "no", "0"):
            return False
        raise ValueError(f"config key 'plot': expected true/false, got {text!r}")
    return text


def build_config(args: argparse.Namespace) -> SweepConfig:
    """Merge defaults, the optional config file, and the flags into a SweepConfig."""
    merged = dict(_DEFAULTS)
    if args.config:
        for key, text in parse_config_file(args.config).items():
            merged[key] = _coerce(key, text)
    overrides = {
        "channel": args.channel,
        "measure": args.measure,
        "kt-max": args.kt_max,
        "steps": args.steps,
        "method": args.method,
        "grid-theta": args.grid_theta,
        "grid-phi": args.grid_phi,
        "refine": args.refine,
        "out": args.out,
        "plot": args.plot,
        "jobs": args.jobs,
    }
    for key, value in overrides.items():
        if value is not None:
            merged[key] = value

    bad = [c for c in merged["channel"] if c not in _CHANNEL_VALUES]
    if bad:
        raise ValueError(f"unknown channel values {bad} (expected {list(_CHANNEL_VALUES)})")
    optimizer = OptimizerConfig(
        theta_grid=merged["grid-theta"],
        phi_grid=merged["grid-phi"],
        refine_sweeps=merged["refine"],
    )
    config = SweepConfig(
        channels=tuple(Channel(c) for c in merged["channel"]),
        measures=tuple(merged["measure"]),
        kt_max=merged["kt-max"],
        steps=merged["steps"],
        method=merged["method"],
        optimizer=optimizer,
        out=merged["out"],
        plot=bool(merged["plot"]),
        jobs=merged["jobs"],
    )
    config.validate()
    return config


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)

    if args.verify:
        try:
            results = run_checks()
        except Exception as exc:  # registry failures are runtime, not usage
            print(f"runtime error: {exc}", file=sys.stderr)
            return 3
        print(format_report(results))
        return 0 if all(r.passed for r in results) else 2

    try:
        config = build_config(args)
    except ValueError as exc:
        print(f"ghzdyn: error: {exc}", file=sys.stderr)
        return 1

    try:
        records = run_sweep(config)
        emit_csv(records, config.out)
        print(f"wrote {len(records)} records to {config.out}")
        if config.plot:
            script = emit_plot_script(records, config.out)
            print(f"wrote plot script to {script}")
    except Exception as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
