"""Command-line front end: ``locbeam run | cdf | demo``."""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .config import ConfigError, SimConfig
from .harness import (
    emit_report,
    read_records,
    run_monte_carlo,
    summarize,
    trial_rng,
    write_cdf_files,
)
from .strategies import Scenario, draw_trial, run_trial

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 2, 3

# flag name -> SimConfig field
_FLAGS = {
    "trials": "trials",
    "seed": "seed",
    "n-bs": "n_bs",
    "n-ms": "n_ms",
    "grid-size": "grid_size",
    "beam-count-es": "beam_count_es",
    "beamwidth-deg": "beamwidth_deg",
    "max-loc-error": "max_loc_error_m",
    "snr-db": "snr_db",
    "rician-k": "rician_k",
    "paths": "num_paths",
    "area-side": "area_side_m",
    "switch-convention": "switch_convention",
    "cs-random-budget": "cs_random_budget",
    "localized-budget": "localized_budget",
}


def parse_config_file(path) -> dict:
    """Read ``key = value`` lines (``#`` comments) or a JSON object."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        data.pop("artifact_version", None)
        return data
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError([f"{path}:{lineno}: expected key=value, got {line!r}"])
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _add_config_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", help="key=value or JSON config file; flags override it")
    for flag in _FLAGS:
        p.add_argument(f"--{flag}", dest=_FLAGS[flag], default=None)


def build_config(args) -> SimConfig:
    data = parse_config_file(args.config) if getattr(args, "config", None) else {}
    for field_name in _FLAGS.values():
        value = getattr(args, field_name, None)
        if value is not None:
            data[field_name] = value
    return SimConfig.from_dict(data).validate()


def _cmd_run(args) -> int:
    config = build_config(args)
    records = run_monte_carlo(config, workers=args.workers)
    emit_report(records, args.format, args.out or "-", config)
    if args.cdf_dir:
        write_cdf_files(records, args.cdf_dir)
    if args.out:
        for name, s in summarize(records).items():
            print(f"{name:17s} mean gain {s['mean_gain']:7.3f}  median gain {s['median_gain']:7.3f}"
                  f"  mean switches {s['mean_switch_count']:8.2f}", file=sys.stderr)
    return EXIT_OK


def _cmd_cdf(args) -> int:
    records = read_records(args.records)
    out_dir = args.out or os.path.splitext(args.records)[0] + "_cdf"
    for name, path in write_cdf_files(records, out_dir).items():
        print(f"{name}: {path}")
    return EXIT_OK


def _cmd_demo(args) -> int:
    config = build_config(args).replace(trials=1)
    scenario = Scenario.from_config(config)
    results = run_trial(scenario, config, trial_rng(config.seed, args.trial))
    # same child streams as run_trial, so this is the draw the strategies saw
    geo, chan, _, _ = trial_rng(config.seed, args.trial).spawn(4)
    draw = draw_trial(scenario, config, geo, chan)
    deg = np.degrees
    print(f"BS true ({draw.bs_true.x:.2f}, {draw.bs_true.y:.2f}) est ({draw.bs_est.x:.2f}, {draw.bs_est.y:.2f})")
    print(f"MS true ({draw.ms_true.x:.2f}, {draw.ms_true.y:.2f}) est ({draw.ms_est.x:.2f}, {draw.ms_est.y:.2f})")
    for i, p in enumerate(draw.paths.paths):
        kind = "LOS " if p.is_los else "NLOS"
        print(f"path {i} {kind} |gain|^2={abs(p.gain) ** 2:.4f} AoD={deg(p.aod):7.2f} deg AoA={deg(p.aoa):7.2f} deg")
    step = 360.0 / scenario.grid.size
    for label, r in (("AoD", draw.tx_range), ("AoA", draw.rx_range)):
        print(f"localized {label} range: indices {r.lo}..{r.hi} ({r.count} points, "
              f"{r.lo * step:.1f} to {r.hi * step:.1f} deg)")
    for r in results:
        extra = ""
        if r.estimate is not None and r.estimate.support:
            n = scenario.grid.size
            pairs = [f"({deg(scenario.grid.angles[k // n]):.0f},{deg(scenario.grid.angles[k % n]):.0f})"
                     for k in r.estimate.support]
            extra = " support " + " ".join(pairs)
        print(f"{r.strategy.value:17s} gain {r.gain:7.3f}  switches {r.switches(config.switch_convention):5d}"
              f"{'  [fallback]' if r.fallback_used else ''}{extra}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="locbeam", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="full Monte-Carlo benchmark")
    _add_config_flags(run)
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    run.add_argument("--out", help="output file (default: stdout)")
    run.add_argument("--cdf-dir", help="also write per-strategy CDF files here")
    run.add_argument("--workers", type=int, default=1)
    run.set_defaults(func=_cmd_run)

    cdf = sub.add_parser("cdf", help="per-strategy gain CDFs from a records file")
    cdf.add_argument("records", help="CSV or JSON written by 'run'")
    cdf.add_argument("--out", help="output directory")
    cdf.set_defaults(func=_cmd_cdf)

    demo = sub.add_parser("demo", help="one verbose trial")
    _add_config_flags(demo)
    demo.add_argument("--trial", type=int, default=0)
    demo.set_defaults(func=_cmd_demo)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"locbeam: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"locbeam: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
