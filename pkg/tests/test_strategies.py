import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locbeam import (
    AngleIndexRange,
    ArrayConfig,
    Path,
    PathSet,
    Scenario,
    SimConfig,
    Strategy,
    array_response,
    bf_gain,
    build_channel,
    build_codebook,
    build_dictionary,
    build_sector_beams,
    exhaustive_search,
    quantized_grid,
    run_cs_strategy,
    run_trial,
    sample_paths,
)
from locbeam.codebook import Codebook
from locbeam.harness import trial_rng

ULA8 = ArrayConfig(8)
G72 = quantized_grid(72)


def rescan(H, tx_cb, rx_cb):
    """Independent double loop over all codebook pairs."""
    gains = np.empty((tx_cb.beam_count, rx_cb.beam_count))
    fro = sum(abs(h) ** 2 for h in H.ravel())
    for t in range(tx_cb.beam_count):
        for r in range(rx_cb.beam_count):
            wt, wr = tx_cb.weights[:, t], rx_cb.weights[:, r]
            acc = 0j
            for i in range(H.shape[0]):
                for j in range(H.shape[1]):
                    acc += wr[i].conjugate() * H[i, j] * wt[j]
            gains[t, r] = abs(acc) ** 2 / fro
    return gains


def rank_one(aod, aoa, mu=1.0):
    return build_channel(PathSet((Path(mu, aod, aoa, True),)), ULA8, ULA8)


def test_gain_rank_one_matched():
    H = rank_one(G72.angles[5], G72.angles[40], 0.3 + 0.4j)
    g = bf_gain(H, array_response(G72.angles[5], ULA8), array_response(G72.angles[40], ULA8))
    assert g == pytest.approx(64.0, abs=1e-6)


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_gain_bounded_by_array_product(seed):
    rng = np.random.default_rng(seed)
    H = build_channel(sample_paths(rng, 4, 6.0), ULA8, ArrayConfig(4))
    wt = np.exp(2j * np.pi * rng.uniform(size=8))
    wr = np.exp(2j * np.pi * rng.uniform(size=4))
    assert 0 <= bf_gain(H, wt, wr) <= 32 + 1e-6


def test_gain_zero_for_orthogonal_rx():
    H = rank_one(0.3, 1.1)
    p = array_response(1.1, ULA8)
    w_rx = np.zeros(8, complex)
    w_rx[0], w_rx[1] = p[1], -p[0]
    w_rx = np.conj(w_rx)  # w_rx^H p = 0
    assert bf_gain(H, np.ones(8), w_rx * 2) == pytest.approx(0.0, abs=1e-20)


def test_gain_zero_channel():
    with pytest.raises(ValueError):
        bf_gain(np.zeros((8, 8)), np.ones(8), np.ones(8))


def test_exhaustive_single_pair():
    cb = build_codebook(8, 1)
    res = exhaustive_search(rank_one(0.2, 0.4), cb, cb)
    assert res.switch_count == 1 and res.per_side_count == 1
    np.testing.assert_array_equal(res.tx_beam, cb.weights[:, 0])


def test_exhaustive_picks_beam_at_its_peak():
    cb = build_codebook(8, 72)
    fine = np.linspace(0, 2 * np.pi, 3601)[:-1]
    from locbeam import steering_matrix
    resp = np.abs(steering_matrix(fine, ULA8).conj().T @ cb.weights)
    b_tx, b_rx = 3, 6
    H = rank_one(fine[np.argmax(resp[:, b_tx])], fine[np.argmax(resp[:, b_rx])])
    res = exhaustive_search(H, cb, cb)
    np.testing.assert_array_equal(res.tx_beam, cb.weights[:, b_tx])
    np.testing.assert_array_equal(res.rx_beam, cb.weights[:, b_rx])


def test_exhaustive_switch_counts():
    cb = build_codebook(8, 72)
    res = exhaustive_search(rank_one(0.2, 0.4), cb, cb)
    assert res.switches("pair") == 5184
    assert res.switches("per-side") == 72
    with pytest.raises(ValueError):
        res.switches("bogus")


@pytest.mark.parametrize("seed", range(10))
def test_exhaustive_matches_rescan(seed):
    rng = np.random.default_rng(seed)
    cb_tx, cb_rx = build_codebook(8, 12), build_codebook(8, 16)
    H = build_channel(sample_paths(rng, 4, 6.0), ULA8, ULA8)
    res = exhaustive_search(H, cb_tx, cb_rx)
    ref = rescan(H, cb_tx, cb_rx)
    assert res.gain == pytest.approx(ref.max(), rel=1e-12)
    assert res.switch_count == 12 * 16


def test_exhaustive_tie_break_lexicographic():
    w = np.ones((4, 3), complex)
    cb = Codebook(weights=w)
    res = exhaustive_search(np.ones((4, 4)), cb, cb)
    assert res.tx_beam is not None
    power = np.abs(w.conj().T @ np.ones((4, 4)) @ w) ** 2
    assert np.all(power == power[0, 0])
    # all pairs tie; the first column on each side must be chosen
    np.testing.assert_array_equal(res.tx_beam, w[:, 0])


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1), st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3))
def test_exhaustive_scale_invariant(seed, c):
    cb = build_codebook(8, 72)
    H = build_channel(sample_paths(np.random.default_rng(seed), 4, 6.0), ULA8, ULA8)
    a, b = exhaustive_search(H, cb, cb), exhaustive_search(c * H, cb, cb)
    np.testing.assert_array_equal(a.tx_beam, b.tx_beam)
    np.testing.assert_array_equal(a.rx_beam, b.rx_beam)


@pytest.fixture(scope="module")
def d72():
    return build_dictionary(G72, ULA8, ULA8)


def test_cs_exact_recovery_gives_full_gain(d72):
    H = rank_one(G72.angles[4], G72.angles[30], 0.8j)
    tx = build_sector_beams(AngleIndexRange(1, 8, 72), 4, G72, ULA8)
    rx = build_sector_beams(AngleIndexRange(27, 34, 72), 4, G72, ULA8)
    res = run_cs_strategy(H, tx, rx, d72, 1, None, strategy=Strategy.CS_LOCALIZED)
    assert res.gain == pytest.approx(64.0, abs=1e-6)
    assert res.switch_count == 16 and res.per_side_count == 16
    assert not res.fallback_used and res.strategy is Strategy.CS_LOCALIZED


def test_cs_sector_missing_true_aod_loses(d72):
    # LOS at 5 deg (near broadside); both sectors steered ~60 deg away and the
    # dictionary search confined to them
    H = rank_one(G72.angles[1], G72.angles[1])
    tx_r, rx_r = AngleIndexRange(12, 15, 72), AngleIndexRange(12, 15, 72)
    tx = build_sector_beams(tx_r, 2, G72, ULA8)
    rx = build_sector_beams(rx_r, 2, G72, ULA8)
    cand = (tx_r.members()[:, None] * 72 + rx_r.members()[None, :]).ravel()
    res = run_cs_strategy(H, tx, rx, d72, 1, None, candidates=cand)
    cb = build_codebook(8, 72)
    assert res.gain < exhaustive_search(H, cb, cb).gain


def test_cs_fallback_on_empty_support(d72):
    H = rank_one(0.1, 0.2)
    cb = build_codebook(8, 72)
    tx = build_sector_beams(AngleIndexRange(0, 3, 72), 2, G72, ULA8)
    res = run_cs_strategy(H, tx, tx, d72, 4, None, tx_power=0.0, fallback=(cb[0], cb[0]))
    assert res.fallback_used
    np.testing.assert_array_equal(res.tx_beam, cb[0])


@pytest.mark.parametrize("u, v", [(2, 40), (5, 70), (33, 3), (0, 0)])
def test_steering_beats_codebook_on_grid(d72, u, v):
    H = rank_one(G72.angles[u], G72.angles[v])
    tx = build_sector_beams(AngleIndexRange((u - 2) % 72, (u + 2) % 72, 72), 5, G72, ULA8)
    rx = build_sector_beams(AngleIndexRange((v - 2) % 72, (v + 2) % 72, 72), 5, G72, ULA8)
    cs = run_cs_strategy(H, tx, rx, d72, 1, None)
    cb = build_codebook(8, 72)
    assert cs.gain == pytest.approx(64.0, abs=1e-6)
    assert exhaustive_search(H, cb, cb).gain <= cs.gain + 1e-9


@pytest.fixture(scope="module")
def scenario():
    return Scenario.from_config(SimConfig())


def test_trial_deterministic(scenario):
    cfg = SimConfig()
    a = run_trial(scenario, cfg, trial_rng(42, 3))
    b = run_trial(scenario, cfg, trial_rng(42, 3))
    assert [r.gain for r in a] == [r.gain for r in b]
    assert [r.strategy for r in a] == [Strategy.EXHAUSTIVE, Strategy.CS_RANDOM, Strategy.CS_LOCALIZED]


def test_trial_budget_parity(scenario):
    cfg = SimConfig(cs_random_budget=16, localized_budget=16)
    for t in range(5):
        es, rnd, loc = run_trial(scenario, cfg, trial_rng(1, t))
        assert rnd.switch_count == loc.switch_count == 16


def test_trial_localized_far_below_pairs(scenario):
    cfg = SimConfig()
    counts = [run_trial(scenario, cfg, trial_rng(7, t))[2].switch_count for t in range(30)]
    assert np.mean(counts) < 0.05 * 72 * 72
    assert max(counts) <= 64  # at most 8 beams per side


def test_trial_gains_within_ceiling(scenario):
    cfg = SimConfig()
    for t in range(10):
        for r in run_trial(scenario, cfg, trial_rng(11, t)):
            assert 0 <= r.gain <= 64 + 1e-6


def test_budget_change_keeps_channel(scenario):
    a = run_trial(scenario, SimConfig(), trial_rng(3, 0))
    b = run_trial(scenario, SimConfig(cs_random_budget=16, localized_budget=16), trial_rng(3, 0))
    assert a[0].gain == b[0].gain
