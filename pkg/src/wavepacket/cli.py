"""Command-line front end: ``wavepacket <command> [options]``.

Commands
--------
eval              print psi(x, y, t) as ``re im modulus phase``
observables       measured vs closed-form moments per time (CSV/JSON)
propagate-check   spectral propagation vs closed form per mode and time
snapshot          density frames per time (CSV grid dump + PGM)
section           density along y = 0 over an (x, t) raster (CSV)
streamlines       current streamlines per time (CSV + SVG)

Settings come from an optional JSON config (``--config``); flags override
it.  Exit codes: 0 success, 2 malformed config, 3 invariant violation,
4 oracle threshold exceeded.
"""
import argparse
import json
import math
import os
import re
import sys
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import export
from .grids import Grid2D
from .observables import (
    current,
    default_grid,
    measure,
    packet_width,
    sample,
)
from .propagator import oracle_compare
from .states import (
    HermiteGauss1D,
    PhysicalParams,
    closed_form_moments,
    eval_density,
    evaluate,
    parse_mode,
    time_scale,
)
from .streamlines import (
    StagnationError,
    closure_error,
    default_seeds,
    handedness,
    trace,
)

EXIT_OK, EXIT_CONFIG, EXIT_INVARIANT, EXIT_THRESHOLD = 0, 2, 3, 4

COMMANDS = ("eval", "observables", "propagate-check", "snapshot", "section", "streamlines")
FORMATS = ("csv", "json", "pgm", "svg")

#: Modes checked by ``propagate-check`` when none are configured.
DEFAULT_CHECK_MODES = ("hg:0,0", "hg:1,0", "hg:1,1", "hg:2,1", "lg:0", "lg:1", "lg:-1", "lg:2")

DEFAULT_TIMES = {
    "eval": ("0",),
    "observables": ("0", "t0", "2t0"),
    "propagate-check": ("0", "0.5t0", "t0", "2t0"),
    "snapshot": ("-2t0", "0", "2t0"),
    "section": tuple(f"{k / 20}t0" for k in range(-40, 41)),
    "streamlines": ("-2t0", "-t0", "-0.1t0", "0", "0.1t0", "t0", "2t0"),
}

CONFIG_KEYS = {"params", "mode", "modes", "grid", "times", "output_dir", "formats",
               "threshold", "x", "y", "step"}


class ConfigError(Exception):
    """Malformed configuration or flag value."""


class ThresholdExceeded(Exception):
    pass


@dataclass
class RunConfig:
    params: PhysicalParams
    mode: object
    grid_n: int = 256
    half_width: Optional[float] = None
    times: list = field(default_factory=list)
    output_dir: str = "wavepacket_out"
    formats: tuple = FORMATS
    modes: Optional[list] = None
    threshold: float = 1e-8
    x: float = 0.0
    y: float = 0.0
    step: Optional[float] = None

    @property
    def t0(self):
        return time_scale(self.params)

    def grid(self, times=None):
        """Explicit grid if configured, else one sized for ``times``."""
        times = self.times if times is None else times
        if self.half_width is None:
            return default_grid(self.params, times or (0.0,), n=self.grid_n)
        return Grid2D(half_width=self.half_width, nx=self.grid_n, ny=self.grid_n)


_TIME_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+)?)\s*(t0)?\s*$")


def parse_time(value, t0):
    """Number, or text like ``"2t0"``, ``"-t0"``, ``"0.5t0"``, ``"1e-3"``."""
    if isinstance(value, bool):
        raise ConfigError(f"invalid time {value!r}")
    if isinstance(value, (int, float)):
        t = float(value)
    else:
        m = _TIME_RE.match(str(value))
        if not m or (not m.group(1) and not m.group(2)):
            raise ConfigError(f"invalid time {value!r}")
        coeff = m.group(1)
        if coeff in ("", "+", "-"):
            coeff = coeff + "1"
        t = float(coeff) * (t0 if m.group(2) else 1.0)
    if not math.isfinite(t):
        raise ConfigError(f"time must be finite, got {value!r}")
    return t


def _parse_times(values, t0):
    if isinstance(values, str):
        values = [v for v in values.split(",") if v.strip()]
    return [parse_time(v, t0) for v in values]


def _parse_grid(text):
    try:
        parts = [p.strip() for p in text.split(",")]
        n = int(parts[0])
        hw = float(parts[1]) if len(parts) > 1 and parts[1] not in ("", "auto") else None
    except (ValueError, IndexError):
        raise ConfigError(f"invalid --grid {text!r}; expected N[,half_width]") from None
    return n, hw


def load_config(args):
    """Merge the JSON config file (if any) with command-line flags."""
    raw = {}
    if args.config:
        try:
            with open(args.config) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(raw) - CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    p = raw.get("params", {})
    if not isinstance(p, dict) or set(p) - {"mass", "hbar", "waist"}:
        raise ConfigError("params must be an object with mass, hbar, waist")
    for key, value in p.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"params.{key} must be a number")
    params = PhysicalParams(**{k: float(v) for k, v in p.items()})
    t0 = time_scale(params)

    try:
        mode = parse_mode(args.mode or raw.get("mode", "lg:1"))
        modes = None
        if args.mode:
            modes = [mode]
        elif "modes" in raw:
            modes = [parse_mode(m) for m in raw["modes"]]
    except (ValueError, TypeError, AttributeError) as exc:
        raise ConfigError(str(exc)) from None

    grid_n, half_width = 256, None
    g = raw.get("grid", {})
    if g:
        if not isinstance(g, dict) or set(g) - {"n", "half_width"}:
            raise ConfigError("grid must be an object with n and half_width")
        grid_n = g.get("n", 256)
        half_width = g.get("half_width")
        if not isinstance(grid_n, int) or not (half_width is None or isinstance(half_width, (int, float))):
            raise ConfigError("grid.n must be an integer and grid.half_width a number")
    if args.grid:
        grid_n, half_width = _parse_grid(args.grid)

    times_src = args.t if args.t is not None else raw.get("times", DEFAULT_TIMES[args.command])
    if not isinstance(times_src, (list, tuple, str)):
        raise ConfigError("times must be a list")
    times = _parse_times(times_src, t0)

    formats = raw.get("formats", FORMATS)
    if not isinstance(formats, (list, tuple)) or set(formats) - set(FORMATS):
        raise ConfigError(f"formats must be a subset of {FORMATS}")

    def number(name, default):
        value = getattr(args, name, None)
        if value is None:
            value = raw.get(name, default)
        if value is None:
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{name} must be a number")
        return float(value)

    return RunConfig(params=params, mode=mode, grid_n=grid_n,
                     half_width=None if half_width is None else float(half_width),
                     times=times, output_dir=args.out or raw.get("output_dir", "wavepacket_out"),
                     formats=tuple(f for f in FORMATS if f in formats), modes=modes,
                     threshold=number("threshold", 1e-8), x=number("x", 0.0),
                     y=number("y", 0.0), step=number("step", None))


def _out(cfg, name):
    return os.path.join(cfg.output_dir, name)


def _require_2d(mode):
    if isinstance(mode, HermiteGauss1D):
        raise ValueError(f"{mode} is one-dimensional; this command needs a 2D mode")


def cmd_eval(cfg, stdout):
    t = cfg.times[0] if cfg.times else 0.0
    psi = complex(evaluate(cfg.mode, cfg.params, cfg.x, cfg.y, t))
    # + 0.0 folds -0.0 into 0.0 for printing
    values = (psi.real + 0.0, psi.imag + 0.0, abs(psi), math.atan2(psi.imag, psi.real) + 0.0)
    print(" ".join(export.fmt(v) for v in values), file=stdout)
    return EXIT_OK


OBSERVABLE_COLUMNS = [
    "mode", "time", "time_over_t0", "norm", "mean_x", "mean_y",
    "r2", "r2_exact", "r2_relerr", "p2", "p2_exact", "p2_relerr",
    "energy", "energy_exact", "energy_relerr", "lz", "lz_exact", "lz_relerr",
    "continuity_residual_l2",
]


def _rel(measured, exact, scale):
    """Relative error, or error in units of ``scale`` when the exact value is 0."""
    if exact == 0:
        return abs(measured) / scale
    return abs(measured - exact) / abs(exact)


def observables_rows(cfg):
    _require_2d(cfg.mode)
    grid = cfg.grid()
    rows = []
    for t in cfg.times:
        rep = measure(sample(cfg.mode, cfg.params, grid, t))
        exact = closed_form_moments(cfg.mode, cfg.params, t)
        rows.append({
            "mode": str(cfg.mode), "time": t, "time_over_t0": t / cfg.t0,
            "norm": rep.norm, "mean_x": rep.mean_x, "mean_y": rep.mean_y,
            "r2": rep.r2, "r2_exact": exact.r2, "r2_relerr": _rel(rep.r2, exact.r2, 1.0),
            "p2": rep.p2, "p2_exact": exact.p2, "p2_relerr": _rel(rep.p2, exact.p2, 1.0),
            "energy": rep.energy, "energy_exact": exact.energy,
            "energy_relerr": _rel(rep.energy, exact.energy, 1.0),
            "lz": rep.lz, "lz_exact": exact.lz, "lz_relerr": _rel(rep.lz, exact.lz, cfg.params.hbar),
            "continuity_residual_l2": rep.continuity_residual_l2,
        })
    return rows


def cmd_observables(cfg, stdout):
    rows = observables_rows(cfg)
    text = export.csv_text(OBSERVABLE_COLUMNS, ([r[c] for c in OBSERVABLE_COLUMNS] for r in rows))
    if "csv" in cfg.formats:
        export.atomic_write(_out(cfg, "observables.csv"), text)
    if "json" in cfg.formats:
        export.atomic_write(_out(cfg, "observables.json"), export.json_text(rows))
    stdout.write(text)
    return EXIT_OK


def cmd_propagate_check(cfg, stdout):
    modes = cfg.modes or [parse_mode(m) for m in DEFAULT_CHECK_MODES]
    grid = cfg.grid()
    rows, failed = [], False
    for mode in modes:
        for t in cfg.times:
            err = oracle_compare(mode, cfg.params, grid, t)
            ok = err < cfg.threshold
            failed |= not ok
            rows.append([str(mode), t, t / cfg.t0, err, cfg.threshold, "pass" if ok else "FAIL"])
    header = ["mode", "time", "time_over_t0", "rel_l2_error", "threshold", "status"]
    comments = [f"grid_n={grid.nx}", f"half_width={export.fmt(grid.half_width)}"]
    text = export.csv_text(header, rows, comments)
    if "csv" in cfg.formats:
        export.atomic_write(_out(cfg, "propagate_check.csv"), text)
    if "json" in cfg.formats:
        export.atomic_write(_out(cfg, "propagate_check.json"),
                            export.json_text([dict(zip(header, r)) for r in rows]))
    stdout.write(text)
    if failed:
        raise ThresholdExceeded(f"oracle error above threshold {cfg.threshold:g}")
    return EXIT_OK


def cmd_snapshot(cfg, stdout):
    _require_2d(cfg.mode)
    grid = cfg.grid()
    index = []
    X, Y = grid.mesh()
    for i, t in enumerate(cfg.times):
        # closed-form density keeps frames at +t and -t bit-identical
        rho = np.asarray(eval_density(cfg.mode, cfg.params, X, Y, t))
        comments = [f"mode={cfg.mode}", f"time={export.fmt(t)}", f"frame={i}"]
        if "csv" in cfg.formats:
            export.atomic_write(_out(cfg, f"density_{i:03d}.csv"),
                                export.grid_csv_text(rho, grid.x, grid.y, comments))
        if "pgm" in cfg.formats:
            export.atomic_write(_out(cfg, f"density_{i:03d}.pgm"), export.pgm_bytes(rho))
        j, k = np.unravel_index(np.argmax(rho), rho.shape)
        index.append([i, t, t / cfg.t0, math.hypot(grid.x[k], grid.y[j]), float(rho.max())])
    header = ["frame", "time", "time_over_t0", "ring_radius", "max_density"]
    text = export.csv_text(header, index, [f"mode={cfg.mode}", f"grid_n={grid.nx}",
                                           f"half_width={export.fmt(grid.half_width)}"])
    if "csv" in cfg.formats:
        export.atomic_write(_out(cfg, "snapshot.csv"), text)
    stdout.write(text)
    return EXIT_OK


def section_raster(cfg):
    """Nodes ``x_k = (k - n/2) dx``, k = 0..n, so that x = 0 is sampled."""
    grid = cfg.grid()
    n = grid.nx
    x = (np.arange(n + 1) - n // 2) * grid.dx
    rows = []
    for t in cfg.times:
        rho = np.asarray(eval_density(cfg.mode, cfg.params, x, np.zeros_like(x), t))
        rows.extend([t, xv, rv] for xv, rv in zip(x, rho))
    return rows


def cmd_section(cfg, stdout):
    _require_2d(cfg.mode)
    rows = section_raster(cfg)
    text = export.csv_text(["time", "x", "density"], rows, [f"mode={cfg.mode}", "y=0"])
    if "csv" in cfg.formats:
        export.atomic_write(_out(cfg, "section.csv"), text)
    stdout.write(f"section: {len(cfg.times)} times x {len(rows) // max(len(cfg.times), 1)} points\n")
    return EXIT_OK


def cmd_streamlines(cfg, stdout):
    _require_2d(cfg.mode)
    grid = cfg.grid()
    summary = []
    for i, t in enumerate(cfg.times):
        vfield = current(sample(cfg.mode, cfg.params, grid, t))
        ring = packet_width(cfg.params, t) / math.sqrt(2.0)
        step = cfg.step if cfg.step else 0.02 * packet_width(cfg.params, t)
        max_steps = int(math.ceil(2.0 * math.pi * 1.5 * ring / step)) + 1
        hand = handedness(vfield, ring)
        lines, closed, stagnant = [], [], 0
        for seed in default_seeds(cfg.params, t):
            try:
                line = trace(vfield, seed, step, max_steps)
            except StagnationError:
                stagnant += 1
                continue
            if closure_error(line) < 2.0 * step:
                closed.append(len(lines))
            lines.append(line)
        comments = [f"mode={cfg.mode}", f"time={export.fmt(t)}", f"handedness={hand:+d}",
                    f"step={export.fmt(step)}"]
        if not lines:
            comments.append("notice=stagnation: current vanishes at every seed")
            print(f"streamlines: t={export.fmt(t)}: stagnation, no streamlines", file=sys.stderr)
        rows = [[k, s, x, y] for k, line in enumerate(lines) for s, (x, y) in enumerate(line.points)]
        if "csv" in cfg.formats:
            export.atomic_write(_out(cfg, f"streamlines_{i:03d}.csv"),
                                export.csv_text(["trace_id", "step_index", "x", "y"], rows, comments))
        if "svg" in cfg.formats:
            export.atomic_write(_out(cfg, f"streamlines_{i:03d}.svg"),
                                export.svg_text(lines, grid, closed=closed))
        summary.append([i, t, t / cfg.t0, hand, len(lines), len(closed), stagnant])
    header = ["frame", "time", "time_over_t0", "handedness", "n_traces", "n_closed", "n_stagnant"]
    text = export.csv_text(header, summary, [f"mode={cfg.mode}"])
    if "csv" in cfg.formats:
        export.atomic_write(_out(cfg, "streamlines.csv"), text)
    stdout.write(text)
    return EXIT_OK


HANDLERS = {
    "eval": cmd_eval,
    "observables": cmd_observables,
    "propagate-check": cmd_propagate_check,
    "snapshot": cmd_snapshot,
    "section": cmd_section,
    "streamlines": cmd_streamlines,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="wavepacket", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--mode", help="hg:MU,NU | lg:ELL | hg1d:N")
    parser.add_argument("--t", help="comma-separated times, e.g. -2t0,0,2t0")
    parser.add_argument("--grid", help="N[,half_width] (half_width 'auto' sizes to the times)")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--threshold", type=float, help="oracle error threshold")
    parser.add_argument("--x", type=float, help="x for eval")
    parser.add_argument("--y", type=float, help="y for eval")
    parser.add_argument("--step", type=float, help="streamline step length")
    return parser


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            cfg = load_config(args)
            code = HANDLERS[args.command](cfg, stdout)
        except ConfigError as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = EXIT_CONFIG
        except ThresholdExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = EXIT_THRESHOLD
        except ValueError as exc:
            print(f"error: invariant violated: {exc}", file=sys.stderr)
            code = EXIT_INVARIANT
    seen = set()
    for w in caught:
        msg = str(w.message)
        if msg not in seen:
            seen.add(msg)
            print(f"warning: {msg}", file=sys.stderr)
    return code


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
