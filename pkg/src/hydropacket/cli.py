"""Command-line driver producing plot-ready CSV.

Every output starts with one ``#`` line holding the tool version and the
full effective configuration, followed by a CSV header row.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, fields

import numpy as np

from . import __version__
from .angular import OmegaBar, manifold_norm
from .autocorr import evaluate_many, scan
from .coefficients import (
    DEFAULT_CUTOFF,
    DEFAULT_THRESHOLD,
    PacketParams,
    log_normalization_sum,
    moments,
    norm_factor,
    significant_count,
    weight_table,
)
from .packet import overlap
from .spectrum import anharmonic_phase, kepler_period, linear_phase, spacing

COMMANDS = ("coeffs", "autocorr", "moments", "dephase", "normcheck", "overlapcheck")
MANIFOLD_N_MAX = 40


@dataclass(frozen=True)
class RunConfig:
    command: str
    s: float
    gamma: float = 0.0
    threshold: float = DEFAULT_THRESHOLD
    t_max_periods: float = 3.0
    samples: int = 6000
    output: str = "-"
    theta: float = 0.5 * math.pi
    phi: float = 0.0
    psi: float = 0.0
    cutoff: float = DEFAULT_CUTOFF
    jobs: int = 1

    def validate(self) -> None:
        """Raise ValueError on the first invalid field."""
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        for name in ("s", "gamma", "threshold", "t_max_periods", "theta", "phi", "psi", "cutoff"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"--{name.replace('_', '-')} must be finite")
        if self.s < 0:
            raise ValueError("--s must be >= 0")
        if self.command in ("moments", "dephase") and self.s == 0:
            raise ValueError(f"--s must be > 0 for {self.command}")
        if not 0 < self.threshold < 1:
            raise ValueError("--threshold must lie in (0, 1)")
        if not 0 < self.cutoff <= 1:
            raise ValueError("--cutoff must lie in (0, 1]")
        if not self.t_max_periods > 0:
            raise ValueError("--t-max-periods must be > 0")
        if self.samples < 2:
            raise ValueError("--samples must be >= 2")
        if not 0 <= self.theta <= math.pi:
            raise ValueError("--theta must lie in [0, pi]")
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")

    def comment(self) -> str:
        parts = [f"hydropacket {__version__}"]
        parts += [f"{f.name}={getattr(self, f.name)!r}" for f in fields(self) if f.name != "output"]
        return " ".join(parts)


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _write_rows(out, comment, header, rows):
    out.write(f"# {comment}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def _coeffs(cfg, out):
    weight_table(cfg.s, cfg.threshold).write_csv(out, cfg.comment())


def _autocorr(cfg, out):
    table = weight_table(cfg.s, cfg.threshold)
    t_max = cfg.t_max_periods * kepler_period(table.center)
    scan(table, t_max, cfg.samples, n_jobs=cfg.jobs).write_csv(out, cfg.comment())


def _moments(cfg, out):
    table = weight_table(cfg.s, cfg.threshold)
    m = moments(table)
    header = ["s", "n_lo", "n_hi", "mean", "variance", "argmax", "asymptotic_variance", "significant_count"]
    row = [cfg.s, table.n_lo, table.n_hi, m.mean, m.variance, m.argmax,
           m.asymptotic_variance, significant_count(cfg.s, cfg.cutoff)]
    _write_rows(out, cfg.comment(), header, [row])


def _dephase(cfg, out):
    # one row per level within ~4 standard deviations of the centre
    n_bar = max(1, round(cfg.s * cfg.s))
    t_k = kepler_period(n_bar)
    reach = int(math.ceil(4 * math.sqrt(n_bar))) + 1
    rows = []
    for delta in range(max(1 - n_bar, -reach), reach + 1):
        sp = spacing(n_bar, delta)
        rows.append([
            delta, n_bar + delta, sp.exact, sp.linear_term, sp.anharmonic_term, sp.residual,
            linear_phase(n_bar, delta, t_k), anharmonic_phase(n_bar, delta, t_k),
        ])
    header = ["delta", "n", "exact", "linear_term", "anharmonic_term", "residual",
              "linear_phase_at_kepler", "anharmonic_phase_at_kepler"]
    _write_rows(out, cfg.comment(), header, rows)


def _normcheck(cfg, out):
    target = norm_factor(cfg.s)
    total = math.exp(log_normalization_sum(cfg.s))
    omega = OmegaBar.make(cfg.theta, cfg.phi, cfg.psi)
    manifold_err = max(abs(manifold_norm(n, omega) / (n * n) - 1.0) for n in range(1, MANIFOLD_N_MAX + 1))
    header = ["s", "norm_factor", "log_space_sum", "rel_error", "manifold_n_max", "manifold_max_rel_error"]
    row = [cfg.s, target, total, abs(total / target - 1.0), MANIFOLD_N_MAX, manifold_err]
    _write_rows(out, cfg.comment(), header, [row])


def _overlapcheck(cfg, out):
    params = PacketParams(cfg.s, cfg.gamma, OmegaBar.make(cfg.theta, cfg.phi, cfg.psi))
    table = weight_table(params.s, cfg.threshold)
    times = np.linspace(0.0, cfg.t_max_periods * kepler_period(table.center), cfg.samples)
    c = evaluate_many(table, times, n_jobs=cfg.jobs)
    ov = np.array([overlap(table, params.gamma, params.gamma + 0.5 * t).modulus_sq for t in times])
    header = ["s", "gamma", "samples", "max_abs_diff"]
    _write_rows(out, cfg.comment(), header, [[cfg.s, cfg.gamma, cfg.samples, float(np.max(np.abs(c - ov)))]])


_DISPATCH = {
    "coeffs": _coeffs,
    "autocorr": _autocorr,
    "moments": _moments,
    "dephase": _dephase,
    "normcheck": _normcheck,
    "overlapcheck": _overlapcheck,
}


def run(cfg: RunConfig, stdout=None) -> int:
    """Execute ``cfg`` and write its CSV. Returns the exit status.

    Output is produced in memory first so an invalid run never leaves a
    partial file behind.
    """
    cfg.validate()
    buf = io.StringIO()
    _DISPATCH[cfg.command](cfg, buf)
    text = buf.getvalue()
    if cfg.output == "-":
        (stdout or sys.stdout).write(text)
        return 0
    try:
        with open(cfg.output, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"hydropacket: cannot write {cfg.output}: {exc.strerror}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--s", type=float, required=True, help="packet parameter s >= 0")
    common.add_argument("--gamma", type=float, default=0.0)
    common.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD,
                        help="relative truncation of the weights (default 1e-100)")
    common.add_argument("--t-max-periods", type=float, default=3.0,
                        help="scan length in Kepler periods of round(s^2)")
    common.add_argument("--samples", type=int, default=6000)
    common.add_argument("--output", "-o", default="-", help="output file, '-' for stdout")
    common.add_argument("--theta", type=float, default=0.5 * math.pi)
    common.add_argument("--phi", type=float, default=0.0)
    common.add_argument("--psi", type=float, default=0.0)
    common.add_argument("--cutoff", type=float, default=DEFAULT_CUTOFF,
                        help="relative cutoff for significant_count (default e^-100)")
    common.add_argument("--jobs", type=int, default=1, help="threads for time scans")

    parser = argparse.ArgumentParser(
        prog="hydropacket",
        description="Autocorrelation and weight analysis of hydrogen temporally stable coherent states.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "coeffs": "weights ln p_n of the truncated table",
        "autocorr": "C(t) on a uniform grid",
        "moments": "mean, variance, mode and significant-state count",
        "dephase": "level-spacing expansion and phases after one Kepler period",
        "normcheck": "log-space normalization sum vs closed form, and manifold norms",
        "overlapcheck": "max |C(t) - |<gamma|gamma + t/2>|^2| over the grid",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(**vars(args))
    try:
        cfg.validate()
    except ValueError as exc:
        parser.error(str(exc))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
