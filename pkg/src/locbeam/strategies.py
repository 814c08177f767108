"""Beam-alignment strategies and the beamforming-gain metric."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .arrays import (
    ArrayConfig,
    PathSet,
    array_response,
    build_channel,
    free_space_path_loss,
    sample_paths,
)
from .beams import (
    MeasurementBeams,
    beams_for_budget,
    build_sector_beams,
    random_measurement_beams,
)
from .codebook import AngleGrid, Codebook, Dictionary, build_codebook, build_dictionary, quantized_grid
from .config import SimConfig, split_budget
from .cs import SparseEstimate, build_sensing_matrix, omp, simulate_measurements, support_to_angles
from .geometry import (
    AngleIndexRange,
    LocalizationError,
    Location,
    angular_range,
    combined_error,
    perturb_location,
)

# relative slack when deciding exhaustive-search ties between duplicate beams
_TIE_RTOL = 1e-12


class Strategy(str, enum.Enum):
    EXHAUSTIVE = "ExhaustiveSearch"
    CS_RANDOM = "CsRandom"
    CS_LOCALIZED = "CsLocalized"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class AlignmentResult:
    """Outcome of one strategy on one channel.

    ``switch_count`` counts TX/RX beam-pair probes. ``per_side_count`` is
    the codebook size for exhaustive search and the probe count for the
    CS strategies.
    """

    strategy: Strategy
    tx_beam: np.ndarray
    rx_beam: np.ndarray
    gain: float
    switch_count: int
    per_side_count: int
    fallback_used: bool = False
    estimate: Optional[SparseEstimate] = None
    beam_indices: Optional[tuple] = None  # (b_tx, b_rx) for codebook search

    def switches(self, convention: str = "pair") -> int:
        if convention == "pair":
            return self.switch_count
        if convention == "per-side":
            return self.per_side_count
        raise ValueError(f"unknown switch convention {convention!r}")


def bf_gain(H: np.ndarray, w_tx: np.ndarray, w_rx: np.ndarray) -> float:
    """``|w_rx^H H w_tx|^2 / ||H||_F^2``."""
    h_norm2 = float(np.sum(np.abs(H) ** 2))
    if h_norm2 == 0.0:
        raise ValueError("bf_gain is undefined for a zero channel")
    return float(np.abs(np.vdot(w_rx, H @ w_tx)) ** 2 / h_norm2)


def exhaustive_search(H: np.ndarray, tx_cb: Codebook, rx_cb: Codebook) -> AlignmentResult:
    """Try every TX/RX codebook pair and keep the strongest.

    Ties go to the lexicographically smallest ``(b_tx, b_rx)``.
    """
    wt, wr = tx_cb.weights, rx_cb.weights
    power = np.abs(wr.conj().T @ H @ wt).T ** 2  # B_tx x B_rx
    best = power.max()
    b_tx, b_rx = np.argwhere(power >= best * (1.0 - _TIE_RTOL))[0]
    return AlignmentResult(
        strategy=Strategy.EXHAUSTIVE,
        tx_beam=wt[:, b_tx],
        rx_beam=wr[:, b_rx],
        gain=bf_gain(H, wt[:, b_tx], wr[:, b_rx]),
        switch_count=wt.shape[1] * wr.shape[1],
        per_side_count=max(wt.shape[1], wr.shape[1]),
        beam_indices=(int(b_tx), int(b_rx)),
    )


def run_cs_strategy(
    H: np.ndarray,
    tx_beams: MeasurementBeams,
    rx_beams: MeasurementBeams,
    dictionary: Dictionary,
    L: int,
    rng: Optional[np.random.Generator],
    *,
    tx_power: float = 1.0,
    noise_sigma: float = 0.0,
    residual_tol: float = 1e-3,
    candidates: Optional[np.ndarray] = None,
    fallback: Optional[tuple] = None,
    strategy: Strategy = Strategy.CS_RANDOM,
) -> AlignmentResult:
    """Probe, recover the sparse path vector and steer at the dominant path.

    Data beams are steering vectors at the grid angles of the recovered
    atom with the largest gain. If OMP returns nothing the ``fallback``
    ``(w_tx, w_rx)`` pair is used and flagged.
    """
    y = simulate_measurements(H, tx_beams, rx_beams, tx_power, noise_sigma, rng)
    phi = build_sensing_matrix(tx_beams, rx_beams, dictionary, tx_power)
    est = omp(phi, y, L, residual_tol, candidates=candidates)
    probes = tx_beams.count * rx_beams.count

    if est.is_empty:
        if fallback is None:
            w_tx = np.ones(dictionary.bs.num_elements, complex)
            w_rx = np.ones(dictionary.ms.num_elements, complex)
        else:
            w_tx, w_rx = fallback
        used_fallback = True
    else:
        dominant = est.support[int(np.argmax(np.abs(est.gains)))]
        aod, aoa = support_to_angles(dominant, dictionary.grid)
        w_tx = array_response(aod, dictionary.bs)
        w_rx = array_response(aoa, dictionary.ms)
        used_fallback = False

    return AlignmentResult(
        strategy=strategy,
        tx_beam=w_tx,
        rx_beam=w_rx,
        gain=bf_gain(H, w_tx, w_rx),
        switch_count=probes,
        per_side_count=probes,
        fallback_used=used_fallback,
        estimate=est,
    )


@dataclass(frozen=True)
class Scenario:
    """Trial-invariant objects derived once from a :class:`SimConfig`."""

    bs: ArrayConfig
    ms: ArrayConfig
    grid: AngleGrid
    dictionary: Dictionary
    tx_codebook: Codebook
    rx_codebook: Codebook

    @classmethod
    def from_config(cls, config: SimConfig) -> "Scenario":
        config.validate()
        bs = ArrayConfig(config.n_bs, config.element_spacing)
        ms = ArrayConfig(config.n_ms, config.element_spacing)
        grid = quantized_grid(config.grid_points)
        return cls(
            bs=bs,
            ms=ms,
            grid=grid,
            dictionary=build_dictionary(grid, bs, ms),
            tx_codebook=build_codebook(config.n_bs, config.es_beams),
            rx_codebook=build_codebook(config.n_ms, config.es_beams),
        )


@dataclass(frozen=True)
class TrialDraw:
    """Geometry and channel shared by all strategies in one trial."""

    bs_true: Location
    ms_true: Location
    bs_est: Location
    ms_est: Location
    paths: PathSet
    H: np.ndarray
    tx_range: AngleIndexRange
    rx_range: AngleIndexRange


def place_nodes(config: SimConfig, rng: np.random.Generator) -> tuple:
    """Uniform BS/MS positions in the square, resampled until far enough apart."""
    side = config.area_side_m
    while True:
        bs = Location(*rng.uniform(0.0, side, size=2))
        ms = Location(*rng.uniform(0.0, side, size=2))
        if bs.distance_to(ms) >= config.min_separation_m and bs.distance_to(ms) > 0:
            return bs, ms


def draw_trial(scenario: Scenario, config: SimConfig, geo_rng, chan_rng) -> TrialDraw:
    bs, ms = place_nodes(config, geo_rng)
    err = LocalizationError(config.max_loc_error_m, one_sided=config.one_sided_error)
    bs_est = perturb_location(bs, err, geo_rng)
    ms_est = perturb_location(ms, err, geo_rng)

    gamma = free_space_path_loss(bs.distance_to(ms), config.path_loss_exponent) if config.use_path_loss else 1.0
    paths = sample_paths(
        chan_rng,
        config.num_paths,
        config.rician_k,
        los_angles=(bs.bearing_to(ms), ms.bearing_to(bs)),
        random_k=config.random_rician,
        nlos_profile=config.nlos_profile,
        path_loss=gamma,
    )
    H = build_channel(paths, scenario.bs, scenario.ms)

    tight = config.one_sided_error and not config.conservative_error_bound
    r = combined_error(err, err, one_sided=tight)
    tx_range = angular_range(bs_est, ms_est, r, scenario.grid)
    rx_range = angular_range(ms_est, bs_est, r, scenario.grid)
    return TrialDraw(bs, ms, bs_est, ms_est, paths, H, tx_range, rx_range)


def localized_beams(scenario: Scenario, config: SimConfig, tx_range, rx_range) -> tuple:
    """Sector measurement beams for both sides plus the admissible dictionary columns."""
    if config.localized_budget is None:
        m_tx = beams_for_budget(tx_range.count, config.indices_per_beam, config.beam_cap(config.n_bs))
        m_rx = beams_for_budget(rx_range.count, config.indices_per_beam, config.beam_cap(config.n_ms))
    else:
        m_tx, m_rx = split_budget(config.localized_budget)
        tx_range = tx_range.widened(m_tx)
        rx_range = rx_range.widened(m_rx)
    tx = build_sector_beams(tx_range, m_tx, scenario.grid, scenario.bs)
    rx = build_sector_beams(rx_range, m_rx, scenario.grid, scenario.ms)
    n = scenario.grid.size
    candidates = (tx_range.members()[:, None] * n + rx_range.members()[None, :]).ravel()
    return tx, rx, candidates


def run_trial(scenario: Scenario, config: SimConfig, rng: np.random.Generator) -> list:
    """Run all three strategies on one random placement and channel.

    Independent child streams drive geometry, channel, random beams and
    measurement noise, so changing one strategy's budget never changes the
    channel the others see.
    """
    geo_rng, chan_rng, beam_rng, noise_rng = rng.spawn(4)
    draw = draw_trial(scenario, config, geo_rng, chan_rng)
    H = draw.H
    fallback = (scenario.tx_codebook[0], scenario.rx_codebook[0])
    common = dict(
        tx_power=config.tx_power,
        noise_sigma=config.noise_sigma,
        residual_tol=config.omp_residual_tol,
        fallback=fallback,
    )
    rand_noise, loc_noise = noise_rng.spawn(2)

    es = exhaustive_search(H, scenario.tx_codebook, scenario.rx_codebook)

    m_tx, m_rx = split_budget(config.cs_random_budget)
    tx_rand = random_measurement_beams(m_tx, scenario.bs, beam_rng)
    rx_rand = random_measurement_beams(m_rx, scenario.ms, beam_rng)
    cs_rand = run_cs_strategy(
        H, tx_rand, rx_rand, scenario.dictionary, config.num_paths, rand_noise,
        strategy=Strategy.CS_RANDOM, **common,
    )

    tx_loc, rx_loc, candidates = localized_beams(scenario, config, draw.tx_range, draw.rx_range)
    cs_loc = run_cs_strategy(
        H, tx_loc, rx_loc, scenario.dictionary, config.num_paths, loc_noise,
        candidates=candidates, strategy=Strategy.CS_LOCALIZED, **common,
    )
    return [es, cs_rand, cs_loc]
