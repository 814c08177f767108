"""Simulation configuration and its validation."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

SWITCH_CONVENTIONS = ("per-side", "pair")


class ConfigError(ValueError):
    """Raised with every violated field listed in ``errors``."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("invalid configuration:\n  " + "\n  ".join(self.errors))


@dataclass(frozen=True)
class SimConfig:
    """Parameters of one Monte-Carlo benchmark.

    ``grid_size`` and ``beam_count_es`` default to ``round(360 / beamwidth_deg)``.
    ``localized_budget=None`` lets the localized strategy size its probe set
    from the sector width; an integer forces that many probe pairs (budget
    parity with the random baseline).
    """

    n_bs: int = 8
    n_ms: int = 8
    element_spacing: float = 0.5
    beamwidth_deg: float = 5.0
    grid_size: Optional[int] = None
    beam_count_es: Optional[int] = None
    num_paths: int = 4
    rician_k: float = 6.0
    random_rician: bool = False
    nlos_profile: str = "equal"
    max_loc_error_m: float = 5.0
    one_sided_error: bool = True
    conservative_error_bound: bool = False
    area_side_m: float = 100.0
    min_separation_m: float = 10.0
    snr_db: float = 20.0
    tx_power: float = 1.0
    use_path_loss: bool = False
    path_loss_exponent: float = 2.0
    cs_random_budget: int = 50
    localized_budget: Optional[int] = None
    max_beams_per_side: Optional[int] = None
    omp_residual_tol: float = 1e-3
    trials: int = 1000
    seed: int = 0
    switch_convention: str = "per-side"
    # recorded for provenance only; no formula depends on them once d/lambda is fixed
    carrier_ghz: float = 28.0
    bandwidth_mhz: float = 100.0

    @property
    def grid_points(self) -> int:
        return self.grid_size if self.grid_size is not None else int(round(360.0 / self.beamwidth_deg))

    @property
    def es_beams(self) -> int:
        return self.beam_count_es if self.beam_count_es is not None else int(round(360.0 / self.beamwidth_deg))

    @property
    def indices_per_beam(self) -> int:
        return max(1, int(round(self.beamwidth_deg / (360.0 / self.grid_points))))

    @property
    def noise_sigma(self) -> float:
        return float(np.sqrt(self.tx_power / 10.0 ** (self.snr_db / 10.0)))

    def beam_cap(self, num_elements: int) -> int:
        return self.max_beams_per_side if self.max_beams_per_side is not None else num_elements

    def validation_errors(self) -> list:
        errs = []

        def need(cond, msg):
            if not cond:
                errs.append(msg)

        for name in ("n_bs", "n_ms"):
            v = getattr(self, name)
            need(isinstance(v, int) and v >= 4 and v % 4 == 0, f"{name}: must be a positive multiple of 4 (got {v!r})")
        need(self.element_spacing > 0, f"element_spacing: must be > 0 (got {self.element_spacing!r})")
        need(self.beamwidth_deg > 0, f"beamwidth_deg: must be > 0 (got {self.beamwidth_deg!r})")
        if self.beamwidth_deg > 0:
            ratio = 360.0 / self.beamwidth_deg
            need(abs(ratio - round(ratio)) < 1e-6 and round(ratio) >= 1,
                 f"beamwidth_deg: must divide 360 (got {self.beamwidth_deg!r})")
        need(isinstance(self.num_paths, int) and self.num_paths >= 1, f"num_paths: must be >= 1 (got {self.num_paths!r})")
        for name in ("grid_size", "beam_count_es", "localized_budget", "max_beams_per_side"):
            v = getattr(self, name)
            need(v is None or (isinstance(v, int) and v >= 1), f"{name}: must be >= 1 when set (got {v!r})")
        if self.beamwidth_deg > 0 and isinstance(self.num_paths, int):
            need(self.grid_points >= 4 * self.num_paths,
                 f"grid_size: must be >= 4 * num_paths = {4 * self.num_paths} (got {self.grid_points})")
        need(self.rician_k > 0, f"rician_k: must be > 0 (got {self.rician_k!r})")
        need(self.nlos_profile in ("equal", "exponential"), f"nlos_profile: must be 'equal' or 'exponential' (got {self.nlos_profile!r})")
        need(self.max_loc_error_m >= 0, f"max_loc_error_m: must be >= 0 (got {self.max_loc_error_m!r})")
        need(self.area_side_m > 0, f"area_side_m: must be > 0 (got {self.area_side_m!r})")
        need(0 <= self.min_separation_m < self.area_side_m,
             f"min_separation_m: must lie in [0, area_side_m) (got {self.min_separation_m!r})")
        need(np.isfinite(self.snr_db), f"snr_db: must be finite (got {self.snr_db!r})")
        need(self.tx_power > 0, f"tx_power: must be > 0 (got {self.tx_power!r})")
        need(self.path_loss_exponent > 0, f"path_loss_exponent: must be > 0 (got {self.path_loss_exponent!r})")
        need(isinstance(self.cs_random_budget, int) and self.cs_random_budget >= 1,
             f"cs_random_budget: must be >= 1 (got {self.cs_random_budget!r})")
        need(self.omp_residual_tol >= 0, f"omp_residual_tol: must be >= 0 (got {self.omp_residual_tol!r})")
        need(isinstance(self.trials, int) and self.trials >= 1, f"trials: must be >= 1 (got {self.trials!r})")
        need(isinstance(self.seed, int) and 0 <= self.seed < 2**64, f"seed: must be a 64-bit unsigned integer (got {self.seed!r})")
        need(self.switch_convention in SWITCH_CONVENTIONS,
             f"switch_convention: must be one of {SWITCH_CONVENTIONS} (got {self.switch_convention!r})")
        return errs

    def validate(self) -> "SimConfig":
        errs = self.validation_errors()
        if errs:
            raise ConfigError(errs)
        return self

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def replace(self, **changes) -> "SimConfig":
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_dict(cls, data: dict) -> "SimConfig":
        """Build from possibly string-valued entries (config files, CLI)."""
        known = {f.name: f for f in fields(cls)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise ConfigError([f"{k}: unknown configuration key" for k in unknown])
        errs, kwargs = [], {}
        for key, raw in data.items():
            try:
                kwargs[key] = _coerce(known[key].type, raw)
            except (TypeError, ValueError):
                errs.append(f"{key}: cannot interpret {raw!r} as {known[key].type}")
        if errs:
            raise ConfigError(errs)
        return cls(**kwargs)


_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _coerce(type_name, raw):
    type_name = str(type_name)
    optional = type_name.startswith("Optional[")
    base = type_name[len("Optional["):-1] if optional else type_name
    if isinstance(raw, str):
        s = raw.strip()
        if optional and s.lower() in ("", "none", "null"):
            return None
        if base == "bool":
            if s.lower() in _TRUE:
                return True
            if s.lower() in _FALSE:
                return False
            raise ValueError(raw)
        if base == "int":
            return int(s)
        if base == "float":
            return float(s)
        return s
    if raw is None:
        if optional:
            return None
        raise ValueError(raw)
    if base == "bool":
        if isinstance(raw, bool):
            return raw
        raise ValueError(raw)
    if base == "int":
        if isinstance(raw, bool) or int(raw) != raw:
            raise ValueError(raw)
        return int(raw)
    if base == "float":
        return float(raw)
    return raw


def split_budget(budget: int) -> tuple:
    """Near-square ``(M_tx, M_rx)`` with ``M_tx * M_rx == budget`` and ``M_tx <= M_rx``."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    m_tx = max(d for d in range(1, int(np.sqrt(budget)) + 1) if budget % d == 0)
    return m_tx, budget // m_tx
