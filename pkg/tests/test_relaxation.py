import math
import sys
from pathlib import Path

import numpy as np
import pytest

from tmyag import geometry, relaxation, zeeman
from tmyag.constants import load_constants
from tmyag.errors import (NonpositiveInput, NonpositiveTemperature,
                          NonPositiveRateEstimate)

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "oracle"))
import rate_arithmetic as oracle  # noqa: E402

PARAMS = relaxation.REFERENCE_RELAX_PARAMS
GAMMA = oracle.GAMMA


def test_rate_matches_independent_arithmetic_at_reference_points():
    for b, t in oracle.POINTS:
        expected = oracle.total_rate(b, t)
        got = relaxation.rate(b, t, GAMMA, PARAMS, check_regime=False)
        assert abs(got / expected - 1.0) < 1e-9, (b, t)


def test_rate_terms_match_independent_arithmetic():
    for b, t in oracle.POINTS:
        residual, direct, orb = relaxation.rate_terms(b, t, GAMMA, PARAMS,
                                                      check_regime=False)
        assert residual == oracle.R0
        if b > 0:
            assert abs(direct / oracle.direct_term(b, t) - 1.0) < 1e-9
        else:
            assert direct == 0.0
        assert abs(orb / oracle.orbach_term(b, t) - 1.0) < 1e-9


def test_high_field_low_temperature_point_is_direct_dominated():
    residual, direct, orb = relaxation.rate_terms(6.0, 1.6, GAMMA, PARAMS,
                                                  check_regime=False)
    total = residual + direct + orb
    assert abs(total / 4.9e-4 - 1.0) < 0.02
    assert direct > residual and direct > orb
    # term-by-term arithmetic: 1.2e-24 * (4e8)^2 * 6^4 * 1.6
    assert abs(direct / (1.2e-24 * 1.6e17 * 1296.0 * 1.6) - 1.0) < 1e-12


def test_orbach_dominates_at_3T_4K():
    residual, direct, orb = relaxation.rate_terms(3.0, 4.0, GAMMA, PARAMS,
                                                  check_regime=False)
    assert orb > 10.0 * (residual + direct)


def test_zero_field_zero_temperature_limit_is_residual():
    # at B=0 the direct term vanishes and the Orbach term dies as T -> 0
    assert relaxation.rate_terms(0.0, 1.6, GAMMA, PARAMS)[1] == 0.0
    for t in (1.0, 0.5, 0.25):
        _, _, orb = relaxation.rate_terms(0.0, t, GAMMA, PARAMS,
                                          check_regime=False)
        assert orb < 1e-8
    assert abs(relaxation.rate(0.0, 0.25, GAMMA, PARAMS, check_regime=False)
               / PARAMS.R0 - 1.0) < 1e-6


def test_rate_monotone_in_temperature():
    for b in np.linspace(0.0, 6.0, 7):
        rates = [relaxation.rate(b, t, GAMMA, PARAMS, check_regime=False)
                 for t in np.linspace(1.6, 4.5, 30)]
        assert np.all(np.diff(rates) >= 0.0)


def test_direct_term_follows_exact_B4_law():
    bs = np.linspace(3.0, 6.0, 7)
    direct = np.array([
        relaxation.rate(b, 1.6, GAMMA, PARAMS, check_regime=False)
        - PARAMS.R0
        - relaxation.rate_terms(b, 1.6, GAMMA, PARAMS, check_regime=False)[2]
        for b in bs])
    slopes = np.diff(np.log(direct)) / np.diff(np.log(bs))
    assert np.max(np.abs(slopes - 4.0)) < 1e-9


def test_rate_ratio_approaches_16_when_direct_dominates():
    pure_direct = relaxation.RelaxParams(0.0, PARAMS.alpha_D, 0.0, 0.0,
                                         PARAMS.delta_CF0, PARAMS.gamma_CF)
    r1 = relaxation.rate(3.0, 1.6, GAMMA, pure_direct, check_regime=False)
    r2 = relaxation.rate(6.0, 1.6, GAMMA, pure_direct, check_regime=False)
    assert r2 == 16.0 * r1
    full_ratio = (relaxation.rate(6.0, 1.6, GAMMA, PARAMS, check_regime=False)
                  / relaxation.rate(3.0, 1.6, GAMMA, PARAMS, check_regime=False))
    assert 1.0 < full_ratio < 16.0


def test_orbach_term_rises_then_falls_at_4K():
    bs = np.linspace(0.0, 6.0, 61)
    orb = np.array([relaxation.rate_terms(b, 4.0, GAMMA, PARAMS,
                                          check_regime=False)[2] for b in bs])
    peak = int(np.argmax(orb))
    assert 0 < peak < bs.size - 1
    assert np.all(np.diff(orb[:peak + 1]) > 0.0)
    assert np.all(np.diff(orb[peak:]) < 0.0)
    assert orb[-1] < orb[peak]


def test_dominance_map_regions():
    grid = relaxation.dominance_map([0.0, 3.0, 6.0], [1.6, 4.0], GAMMA, PARAMS)
    assert grid[2, 0] == "direct"    # 6 T, 1.6 K
    assert grid[1, 1] == "orbach"    # 3 T, 4 K
    assert grid[0, 0] == "residual"  # 0 T, 1.6 K


def test_bleaney_estimate_matches_oracle_and_scalings():
    consts = load_constants()
    est = relaxation.bleaney_alpha_d(4.0e8, consts.rho, consts.v_l, consts.v_t)
    assert abs(est / oracle.bleaney_estimate() - 1.0) < 1e-9
    assert 0.5e-26 <= est <= 5e-26
    assert relaxation.bleaney_alpha_d(8.0e8, 4564.0, 8600.0, 5000.0) == 4.0 * \
        relaxation.bleaney_alpha_d(4.0e8, 4564.0, 8600.0, 5000.0)
    assert relaxation.bleaney_alpha_d(4.0e8, 4564.0, 4300.0, 2500.0) == 32.0 * \
        relaxation.bleaney_alpha_d(4.0e8, 4564.0, 8600.0, 5000.0)
    with pytest.raises(NonpositiveInput):
        relaxation.bleaney_alpha_d(4.0e8, 0.0, 8600.0, 5000.0)


def test_direct_gamma_is_orientation_aware():
    # the [111] configuration feeds ~400 MHz/T into the direct term
    consts = load_constants()
    gamma = zeeman.hyperfine_splitting(1, geometry.U_111, "ground", consts)
    assert abs(gamma / 4.0e8 - 1.0) < 0.05


def test_nonpositive_temperature_rejected():
    with pytest.raises(NonpositiveTemperature):
        relaxation.rate(3.0, 0.0, GAMMA, PARAMS)


def test_regime_warning_when_splitting_comparable_to_thermal_energy():
    with pytest.warns(UserWarning):
        relaxation.rate(6.0, 0.05, GAMMA, PARAMS)


def test_hole_decay_simulation_basics():
    rate_hz = 2.5e-4
    times = np.linspace(0.0, 3.0 / rate_hz, 10)
    series = relaxation.simulate_hole_decay(rate_hz, times, area0=7.0)
    assert series.areas[0] == 7.0
    idx = np.searchsorted(times, 1.0 / rate_hz)
    exact = 7.0 * math.exp(-rate_hz * times[idx])
    assert abs(series.areas[idx] - exact) < 1e-12 * exact


def test_hole_decay_noise_is_deterministic_per_seed():
    times = np.linspace(0.0, 2000.0, 12)
    s1 = relaxation.simulate_hole_decay(1e-3, times, noise_sigma=0.05, seed=3)
    s2 = relaxation.simulate_hole_decay(1e-3, times, noise_sigma=0.05, seed=3)
    s3 = relaxation.simulate_hole_decay(1e-3, times, noise_sigma=0.05, seed=4)
    assert np.array_equal(s1.areas, s2.areas)
    assert not np.array_equal(s1.areas, s3.areas)


def test_half_life_at_reference_high_field_point():
    total = relaxation.rate(6.0, 1.6, GAMMA, PARAMS, check_regime=False)
    t_half = math.log(2.0) / total
    assert abs(t_half / (math.log(2.0) / oracle.total_rate(6.0, 1.6)) - 1.0) < 1e-9
    assert 20.0 < t_half / 60.0 < 25.0  # ~23 minutes


def test_extract_T1_inverts_noiseless_simulation():
    rate_hz = 1e-3
    times = np.linspace(0.0, 3.0 * math.log(2.0) / rate_hz, 12)
    series = relaxation.simulate_hole_decay(rate_hz, times)
    t1, sigma_t1 = relaxation.extract_T1(series)
    assert abs(t1 * rate_hz - 1.0) < 1e-9
    assert sigma_t1 >= 0.0


def test_extract_T1_rejects_growing_series():
    times = np.linspace(0.0, 10.0, 8)
    series = relaxation.HoleDecay(times=times, areas=np.exp(0.2 * times))
    with pytest.raises(NonPositiveRateEstimate):
        relaxation.extract_T1(series)


def test_extract_T1_requires_enough_positive_points():
    with pytest.raises(ValueError):
        relaxation.extract_T1(relaxation.HoleDecay(times=np.array([0.0, 1.0, 2.0]),
                                                   areas=np.array([1.0, 0.9, 0.8])))
    with pytest.raises(ValueError):
        relaxation.extract_T1(relaxation.HoleDecay(
            times=np.array([0.0, 1.0, 2.0, 3.0]),
            areas=np.array([1.0, 0.9, -0.1, 0.8])))


def test_rate_dataset_validation():
    good = relaxation.RateDataset(B=[0.0, 3.0], T=[1.6, 4.0],
                                  rate=[1e-4, 1.0], sigma=[1e-5, 0.1])
    assert good.B.size == 2
    with pytest.raises(ValueError):
        relaxation.RateDataset(B=[7.0], T=[1.6], rate=[1e-4], sigma=[1e-5])
    with pytest.raises(ValueError):
        relaxation.RateDataset(B=[3.0], T=[6.0], rate=[1e-4], sigma=[1e-5])
    with pytest.raises(ValueError):
        relaxation.RateDataset(B=[3.0], T=[1.6], rate=[0.0], sigma=[1e-5])
    with pytest.raises(ValueError):
        relaxation.RateDataset(B=[3.0], T=[1.6], rate=[1e-4], sigma=[0.0])


def test_relax_params_validation():
    PARAMS.validate(GAMMA)
    with pytest.raises(ValueError):
        relaxation.RelaxParams(-1e-5, 1.2e-24, 3e4, 1.3e4, 8.3e11, 8e9).validate()
    with pytest.raises(ValueError):
        relaxation.RelaxParams(9.5e-5, 1.2e-24, 3e4, 1.3e4, 0.0, 8e9).validate()


def test_site2_channels_are_explicitly_unmodeled():
    assert relaxation.site2_relaxation_model() == "unmodeled"
