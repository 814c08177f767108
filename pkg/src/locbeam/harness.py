"""Monte-Carlo driver, empirical CDFs and result files."""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from . import __version__
from .config import SimConfig
from .strategies import Scenario, Strategy, run_trial

CSV_COLUMNS = ("trial", "strategy", "gain", "switch_count", "fallback_used", "seed")


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    strategy: str
    gain: float
    switch_count: int
    fallback_used: bool
    seed: int


@dataclass(frozen=True)
class CdfSeries:
    values: np.ndarray
    probabilities: np.ndarray

    def __len__(self):
        return len(self.values)

    def __call__(self, x):
        """Evaluate the step CDF at ``x``."""
        idx = np.searchsorted(self.values, x, side="right")
        p = np.concatenate([[0.0], self.probabilities])
        return p[idx]


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Stream for one trial, independent of execution order."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(trial)]))


@lru_cache(maxsize=4)
def _scenario(config: SimConfig) -> Scenario:
    return Scenario.from_config(config)


def _records_for(config: SimConfig, trial: int) -> list:
    results = run_trial(_scenario(config), config, trial_rng(config.seed, trial))
    return [
        TrialRecord(
            trial=trial,
            strategy=str(r.strategy),
            gain=r.gain,
            switch_count=r.switches(config.switch_convention),
            fallback_used=r.fallback_used,
            seed=config.seed,
        )
        for r in results
    ]


def _chunk(config: SimConfig, trials: list) -> list:
    return [(t, _records_for(config, t)) for t in trials]


def run_monte_carlo(config: SimConfig, workers: int = 1) -> list:
    """Run ``config.trials`` trials and return their records ordered by trial.

    Trials are seeded from ``(config.seed, trial index)`` so the output does
    not depend on ``workers``.
    """
    config.validate()
    indices = list(range(config.trials))
    if workers <= 1 or config.trials == 1:
        by_trial = dict(_chunk(config, indices))
    else:
        chunks = [indices[i::workers] for i in range(workers)]
        by_trial = {}
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_chunk, [config] * len(chunks), chunks):
                by_trial.update(part)
    return [rec for t in indices for rec in by_trial[t]]


def empirical_cdf(samples: Iterable[float]) -> CdfSeries:
    """Step CDF with ``F(x_(i)) = i / n``; tied samples collapse into one step."""
    x = np.sort(np.asarray(list(samples), dtype=float))
    if x.size == 0:
        raise ValueError("empirical_cdf needs at least one sample")
    values, counts = np.unique(x, return_counts=True)
    return CdfSeries(values=values, probabilities=np.cumsum(counts) / x.size)


def records_by_strategy(records) -> dict:
    out: dict = {}
    for r in records:
        out.setdefault(r.strategy, []).append(r)
    return out


def summarize(records) -> dict:
    summary = {}
    for name, recs in records_by_strategy(records).items():
        gains = np.array([r.gain for r in recs])
        switches = np.array([r.switch_count for r in recs])
        summary[name] = {
            "trials": len(recs),
            "mean_gain": float(gains.mean()),
            "median_gain": float(np.median(gains)),
            "mean_switch_count": float(switches.mean()),
            "fallback_rate": float(np.mean([r.fallback_used for r in recs])),
        }
    return summary


def _csv_text(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([r.trial, r.strategy, repr(float(r.gain)), r.switch_count,
                         "true" if r.fallback_used else "false", r.seed])
    return buf.getvalue()


def _config_echo(config: Optional[SimConfig]) -> dict:
    echo = config.to_dict() if config is not None else {}
    echo["artifact_version"] = __version__
    return echo


def _write(path, text: str):
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def emit_report(records, fmt: str, path, config: Optional[SimConfig] = None) -> None:
    """Write records as CSV or as a JSON report with config echo and summary."""
    records = list(records)
    if fmt == "csv":
        _write(path, _csv_text(records))
    elif fmt == "json":
        report = {
            "config": _config_echo(config),
            "records": [asdict(r) for r in records],
            "summary": summarize(records),
        }
        _write(path, json.dumps(report, indent=2) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}; expected 'csv' or 'json'")


def _parse_bool(s) -> bool:
    if isinstance(s, bool):
        return s
    return str(s).strip().lower() in ("true", "1", "yes")


def read_records(path) -> list:
    """Load records written by :func:`emit_report` (format picked from content)."""
    try:
        with open(path, newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc
    if text.lstrip().startswith("{"):
        rows = json.loads(text)["records"]
    else:
        rows = list(csv.DictReader(io.StringIO(text)))
    return [
        TrialRecord(
            trial=int(row["trial"]),
            strategy=str(row["strategy"]),
            gain=float(row["gain"]),
            switch_count=int(row["switch_count"]),
            fallback_used=_parse_bool(row["fallback_used"]),
            seed=int(row["seed"]),
        )
        for row in rows
    ]


def read_config_echo(path) -> dict:
    with open(path) as fh:
        return json.load(fh)["config"]


def write_cdf_files(records, out_dir) -> dict:
    """One ``value,probability`` file per strategy; returns ``{strategy: path}``."""
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create {out_dir}: {exc.strerror or exc}") from exc
    paths = {}
    for name, recs in records_by_strategy(records).items():
        cdf = empirical_cdf(r.gain for r in recs)
        lines = ["value,probability"] + [f"{v!r},{p!r}" for v, p in zip(cdf.values.tolist(), cdf.probabilities.tolist())]
        path = os.path.join(out_dir, f"cdf_{name}.csv")
        _write(path, "\n".join(lines) + "\n")
        paths[name] = path
    return paths


STRATEGY_NAMES = tuple(s.value for s in Strategy)
