import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mediumband.channel import (
    BandClass,
    DelayProfile,
    MultipathComponent,
    ProfileSpec,
    SystemPoint,
    classify,
    generate_nlos_profile,
    max_excess_delay,
    pds,
    rms_delay_spread,
    sample_profile_arrays,
)

US = 1e-6


def profile_from(delays, gains=None):
    if gains is None:
        gains = [1.0] * len(delays)
    return DelayProfile(tuple(
        MultipathComponent(complex(g), d) for g, d in zip(gains, delays)
    ))


class TestInvariants:
    def test_negative_delay_rejected(self):
        with pytest.raises(ValueError):
            MultipathComponent(1.0, -1e-9)

    def test_nonfinite_gain_rejected(self):
        with pytest.raises(ValueError):
            MultipathComponent(complex(math.inf, 0.0), 0.0)
        with pytest.raises(ValueError):
            MultipathComponent(complex(0.0, math.nan), 0.0)

    def test_empty_profile_rejected(self):
        with pytest.raises(ValueError):
            DelayProfile(())

    def test_unsorted_delays_rejected(self):
        with pytest.raises(ValueError):
            profile_from([0.0, 2 * US, 1 * US])

    def test_system_point_validation(self):
        with pytest.raises(ValueError):
            SystemPoint(t_m=1 * US, t_s=0.0)
        with pytest.raises(ValueError):
            SystemPoint(t_m=1 * US, t_s=1 * US, lam=1.0)
        with pytest.raises(ValueError):
            SystemPoint(t_m=-1 * US, t_s=1 * US)


class TestMaxExcessDelay:
    def test_single_component(self):
        assert max_excess_delay(profile_from([0.0])) == 0.0

    def test_three_components(self):
        assert max_excess_delay(profile_from([0.0, 0.4 * US, 1.0 * US])) == 1.0 * US

    def test_matches_exhaustive_scan(self):
        rng = np.random.default_rng(5)
        delays = np.sort(rng.uniform(0.0, US, 8))
        delays[0] = 0.0
        profile = profile_from(delays)
        # brute force: scan every pair difference
        oracle = max(
            b - a for a in profile.delays for b in profile.delays
        )
        assert max_excess_delay(profile) == oracle


class TestRmsDelaySpread:
    def test_single_component(self):
        assert rms_delay_spread(profile_from([0.0])) == 0.0

    def test_two_equal_power(self):
        got = rms_delay_spread(profile_from([0.0, 1.0 * US]))
        assert got == pytest.approx(0.5 * US)

    def test_matches_two_pass_oracle(self):
        rng = np.random.default_rng(11)
        delays = np.sort(rng.uniform(0.0, US, 6))
        gains = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        profile = profile_from(delays, gains)
        w = [abs(g) ** 2 for g in gains]
        mean = sum(wi * d for wi, d in zip(w, delays)) / sum(w)
        var = sum(wi * (d - mean) ** 2 for wi, d in zip(w, delays)) / sum(w)
        assert rms_delay_spread(profile) == pytest.approx(math.sqrt(var), rel=1e-12)


class TestClassify:
    def test_paper_mediumband_example(self):
        assert classify(SystemPoint(1 * US, 2.5 * US)) is BandClass.MEDIUMBAND

    def test_narrowband(self):
        assert classify(SystemPoint(1 * US, 15 * US)) is BandClass.NARROWBAND

    def test_broadband(self):
        # delay spread 1.2x the symbol period
        assert classify(SystemPoint(1.2 * US, 1.0 * US)) is BandClass.BROADBAND

    def test_boundary_ties(self):
        assert classify(SystemPoint(1 * US, 1 * US)) is BandClass.BROADBAND
        assert classify(SystemPoint(1 * US, 10 * US)) is BandClass.NARROWBAND

    def test_pds_examples(self):
        assert pds(SystemPoint(1 * US, 2.5 * US)) == pytest.approx(40.0)
        assert pds(SystemPoint(1 * US, 1.67 * US)) == pytest.approx(60.0, rel=0.005)
        assert pds(SystemPoint(0.0, 3 * US)) == 0.0

    def test_pds_threshold_matches_classification(self):
        # pds > 10% iff the point is mediumband or broadband when lam=10
        rng = np.random.default_rng(123)
        for _ in range(10_000):
            point = SystemPoint(
                t_m=rng.uniform(1e-9, 1e-5), t_s=rng.uniform(1e-9, 1e-5)
            )
            above = pds(point) > 10.0
            in_upper = classify(point) in (BandClass.MEDIUMBAND, BandClass.BROADBAND)
            assert above == in_upper

    @given(
        t_m=st.floats(min_value=1e-9, max_value=1e-3),
        t_s=st.floats(min_value=1e-9, max_value=1e-3),
        lam=st.floats(min_value=1.5, max_value=100.0),
    )
    def test_classify_total(self, t_m, t_s, lam):
        assert classify(SystemPoint(t_m, t_s, lam)) in BandClass


class TestGenerateNlos:
    def test_invalid_spec_rejected(self):
        with pytest.raises(ValueError):
            ProfileSpec(n_paths=0, t_m=US)
        with pytest.raises(ValueError):
            ProfileSpec(n_paths=4, t_m=0.0)

    def test_single_path_unit_power(self):
        profile = generate_nlos_profile(ProfileSpec(n_paths=1, t_m=0.0), rng_seed=9)
        assert len(profile.components) == 1
        assert profile.components[0].delay == 0.0
        assert abs(profile.components[0].gain) ** 2 == pytest.approx(1.0)

    def test_deterministic_under_seed(self):
        spec = ProfileSpec(n_paths=8, t_m=US)
        a = generate_nlos_profile(spec, rng_seed=21)
        b = generate_nlos_profile(spec, rng_seed=21)
        assert a == b

    def test_endpoints_pinned(self):
        spec = ProfileSpec(n_paths=8, t_m=US)
        for seed in range(20):
            profile = generate_nlos_profile(spec, seed)
            assert profile.components[0].delay == 0.0
            assert profile.components[-1].delay == US
            assert max_excess_delay(profile) == US

    def test_mean_total_power_is_unity(self):
        rng = np.random.default_rng(31)
        _, gains = sample_profile_arrays(ProfileSpec(8, US), rng, 100_000)
        mean_power = np.mean(np.sum(np.abs(gains) ** 2, axis=1))
        assert mean_power == pytest.approx(1.0, rel=0.01)

    def test_exponential_envelope_weights_early_paths(self):
        rng = np.random.default_rng(7)
        _, gains = sample_profile_arrays(
            ProfileSpec(8, US, decay=0.2 * US), rng, 20_000
        )
        powers = np.mean(np.abs(gains) ** 2, axis=0)
        assert powers[0] > powers[-1]

    @given(extra=st.floats(min_value=1e-9, max_value=1e-3))
    @settings(max_examples=30)
    def test_adding_later_component_lengthens(self, extra):
        profile = profile_from([0.0, 0.4 * US, US])
        longer = profile.with_component(MultipathComponent(0.5 + 0j, US + extra))
        assert max_excess_delay(longer) > max_excess_delay(profile)


class TestSerialization:
    def test_json_round_trip(self):
        rng = np.random.default_rng(2)
        delays = np.sort(rng.uniform(0.0, US, 5))
        delays[0] = 0.0
        gains = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        profile = profile_from(delays, gains)
        assert DelayProfile.from_json(profile.to_json()) == profile
