"""Parameter sweeps over kappa*t with deterministic CSV output.

A sweep evaluates the requested measures for every channel on a uniform
time grid.  ``tau`` and ``gqd`` each come in an analytic route (closed
forms) and a numeric route (state-based bound / frame optimiser) so the
CSV carries both columns when ``method = "both"``; ``ppt`` and
``entropy`` are single-route state diagnostics.

Output is byte-reproducible: records are ordered channel-major, floats
are rendered with 12 significant digits, rows end with a bare newline,
and the file is written atomically.  Worker processes only parallelise
the grid; the record order never depends on the job count.
"""

from __future__ import annotations

import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channels import Channel, closed_form_state
from .discord import OptimizerConfig, analytic_gqd, global_discord
from .entanglement import analytic_tau, ppt_min_eigenvalue, tau_lower_bound
from .linalg import von_neumann_entropy

CSV_HEADER = "channel,kappa_t,tau_analytic,tau_numeric,gqd_analytic,gqd_numeric,ppt_min_eig,entropy"
MEASURES = ("tau", "gqd", "ppt", "entropy")
METHODS = ("analytic", "numeric", "both")
ALL_CHANNELS = (Channel.X, Channel.Y, Channel.Z, Channel.ISO)


@dataclass(frozen=True)
class SweepConfig:
    """What to compute and where to put it."""

    channels: tuple[Channel, ...] = ALL_CHANNELS
    measures: tuple[str, ...] = MEASURES
    kt_max: float = 0.6
    steps: int = 121
    method: str = "both"
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    out: str = "sweep.csv"
    plot: bool = False
    jobs: int = 1

    def validate(self) -> None:
        problems = []
        if not self.channels:
            problems.append("channels must not be empty")
        for ch in self.channels:
            if not isinstance(ch, Channel):
                problems.append(f"unknown channel {ch!r}")
        if not self.measures:
            problems.append("measures must not be empty")
        for m in self.measures:
            if m not in MEASURES:
                problems.append(f"unknown measure {m!r} (expected one of {MEASURES})")
        if len(set(self.measures)) != len(self.measures):
            problems.append(f"duplicate measures in {self.measures}")
        if len(set(self.channels)) != len(self.channels):
            problems.append(f"duplicate channels in {tuple(c.value for c in self.channels)}")
        if not self.kt_max > 0:
            problems.append(f"kt_max must be positive, got {self.kt_max}")
        if self.steps < 2:
            problems.append(f"steps must be >= 2, got {self.steps}")
        if self.method not in METHODS:
            problems.append(f"unknown method {self.method!r} (expected one of {METHODS})")
        if self.jobs < 1:
            problems.append(f"jobs must be >= 1, got {self.jobs}")
        if problems:
            raise ValueError("; ".join(problems))


@dataclass(frozen=True)
class SweepRecord:
    """One (channel, time) cell; absent measures stay None."""

    channel: str
    kappa_t: float
    tau_analytic: float | None = None
    tau_numeric: float | None = None
    gqd_analytic: float | None = None
    gqd_numeric: float | None = None
    ppt_min_eig: float | None = None
    entropy: float | None = None


def _compute_record(args: tuple[str, float, tuple[str, ...], str, OptimizerConfig]) -> SweepRecord:
    channel_value, kt, measures, method, optimizer = args
    channel = Channel(channel_value)
    analytic = method in ("analytic", "both")
    numeric = method in ("numeric", "both")
    needs_state = ("ppt" in measures or "entropy" in measures
                   or (numeric and ("tau" in measures or "gqd" in measures)))
    state = closed_form_state(channel, kt) if needs_state else None

    fields: dict[str, float | None] = {}
    if "tau" in measures:
        if analytic:
            fields["tau_analytic"] = analytic_tau(channel, kt)
        if numeric:
            fields["tau_numeric"] = tau_lower_bound(state).value
    if "gqd" in measures:
        if analytic:
            fields["gqd_analytic"] = analytic_gqd(channel, kt)
        if numeric:
            fields["gqd_numeric"] = global_discord(state, optimizer).value
    if "ppt" in measures:
        fields["ppt_min_eig"] = ppt_min_eigenvalue(state, (0,))
    if "entropy" in measures:
        fields["entropy"] = von_neumann_entropy(state)
    return SweepRecord(channel.value, kt, **fields)


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """Evaluate the configured grid, channel-major, in deterministic order."""
    config.validate()
    grid = np.linspace(0.0, config.kt_max, config.steps)
    cells = [
        (channel.value, float(kt), config.measures, config.method, config.optimizer)
        for channel in config.channels
        for kt in grid
    ]
    if config.jobs == 1:
        return [_compute_record(cell) for cell in cells]
    with ProcessPoolExecutor(max_workers=config.jobs) as pool:
        return list(pool.map(_compute_record, cells, chunksize=4))


def _format(value: float | None) -> str:
    return "" if value is None else f"{value:.12g}"


def emit_csv(records: list[SweepRecord], path: str) -> None:
    """Write records atomically with fixed header, digits and line endings."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join([
            r.channel,
            _format(r.kappa_t),
            _format(r.tau_analytic),
            _format(r.tau_numeric),
            _format(r.gqd_analytic),
            _format(r.gqd_numeric),
            _format(r.ppt_min_eig),
            _format(r.entropy),
        ]))
    payload = "\n".join(lines) + "\n"
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


_PLOT_PRELUDE = '''#!/usr/bin/env python3
"""Render sweep curves from {csv_name} (auto-generated)."""
import csv
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV_PATH = sys.argv[1] if len(sys.argv) > 1 else {csv_path!r}
OUT_PATH = os.path.splitext(CSV_PATH)[0] + "_curves.png"


def series(rows, channel, column):
    xs, ys = [], []
    for row in rows:
        if row["channel"] == channel and row[column]:
            xs.append(float(row["kappa_t"]))
            ys.append(float(row[column]))
    return xs, ys


with open(CSV_PATH, newline="") as fh:
    rows = list(csv.DictReader(fh))

'''


def emit_plot_script(records: list[SweepRecord], csv_path: str, script_path: str | None = None) -> str:
    """Generate a standalone matplotlib script for the swept tau/gqd curves.

    One explicit curve declaration is emitted per channel and panel, so
    the script stays readable and editable.  Returns the script path.
    """
    def column_for(prefix: str) -> str | None:
        numeric = f"{prefix}_numeric"
        analytic = f"{prefix}_analytic"
        if any(getattr(r, numeric) is not None for r in records):
            return numeric
        if any(getattr(r, analytic) is not None for r in records):
            return analytic
        return None

    panels = [(m, col, label) for m, label in (("tau", "concurrence bound"), ("gqd", "global discord"))
              if (col := column_for(m)) is not None]
    if not panels:
        raise ValueError("records carry neither tau nor gqd values; nothing to plot")

    channels = list(dict.fromkeys(r.channel for r in records))
    styles = {"x": "-", "y": "--", "z": "-.", "iso": ":"}
    names = {"x": "Pauli-X", "y": "Pauli-Y", "z": "Pauli-Z", "iso": "isotropic"}

    body = [f"fig, axes = plt.subplots(1, {len(panels)}, figsize=({5.5 * len(panels):.1f}, 4.2), squeeze=False)"]
    for idx, (_, column, label) in enumerate(panels):
        body.append(f"ax = axes[0][{idx}]")
        for ch in channels:
            style = styles.get(ch, "-")
            name = names.get(ch, ch)
            body.append(
                f'ax.plot(*series(rows, "{ch}", "{column}"), "{style}", label="{name}")'
            )
        body.append('ax.set_xlabel("kappa * t")')
        body.append(f'ax.set_ylabel("{label}")')
        body.append("ax.legend()")
        body.append("ax.grid(alpha=0.3)")
    body.append("fig.tight_layout()")
    body.append("fig.savefig(OUT_PATH, dpi=150)")
    body.append('print(f"wrote {OUT_PATH}")')

    if script_path is None:
        script_path = os.path.splitext(csv_path)[0] + "_plot.py"
    text = _PLOT_PRELUDE.format(csv_name=os.path.basename(csv_path), csv_path=csv_path) + "\n".join(body) + "\n"
    with open(script_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return script_path
