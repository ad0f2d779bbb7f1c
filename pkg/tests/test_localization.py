"""Time-averaged probability estimates and localization verdicts."""

import math

import pytest

from qwalk.errors import InvalidParameterError, PreconditionError
from qwalk.localization import (
    DeltaIntensityEstimate,
    localization_verdict,
    time_averaged_probability_1d,
    time_averaged_probability_2d,
)
from qwalk.walk1d import QubitState
from qwalk.walk2d import QuditState

R = 1 / math.sqrt(2)


class TestEstimates1D:
    def test_origin_average_decays(self):
        est = time_averaged_probability_1d(
            QubitState(1.0, 0.0), 0.5, 0, (64, 128, 256)
        )
        assert est.horizons == (64, 128, 256)
        assert est.decaying
        assert all(0.0 <= v <= 1.0 for v in est.averages)

    def test_balanced_state_also_decays(self):
        est = time_averaged_probability_1d(
            QubitState(R, R * 1j), 0.25, 0, (64, 128, 256)
        )
        assert est.decaying

    def test_site_outside_first_horizon(self):
        est = time_averaged_probability_1d(
            QubitState(1.0, 0.0), 0.5, 40, (32, 64, 128)
        )
        assert est.averages[0] == 0.0
        assert all(v < 0.01 for v in est.averages)

    def test_ladder_validation(self):
        th = QubitState(1.0, 0.0)
        with pytest.raises(InvalidParameterError):
            time_averaged_probability_1d(th, 0.5, 0, (4, 8))      # horizon < 8
        with pytest.raises(InvalidParameterError):
            time_averaged_probability_1d(th, 0.5, 0, (16, 16))    # not increasing

    def test_halving_ratio_band(self):
        est = time_averaged_probability_1d(
            QubitState(1.0, 0.0), 0.5, 0, (64, 128, 256)
        )
        for a, b in zip(est.averages, est.averages[1:]):
            assert 0.3 <= b / a <= 0.8


class TestEstimates2D:
    def test_origin_average_decays(self):
        est = time_averaged_probability_2d(
            QuditState(1, 0, 0, 0), 0.5, (0, 0), (32, 64, 128)
        )
        assert est.decaying
        assert all(0.0 <= v <= 1.0 for v in est.averages)

    def test_balanced_state_decays(self):
        est = time_averaged_probability_2d(
            QuditState(0.5, 0.5j, 0.5j, -0.5), 0.5, (0, 0), (32, 64, 128)
        )
        assert est.decaying

    def test_off_origin_site_in_range(self):
        est = time_averaged_probability_2d(
            QuditState(1, 0, 0, 0), 0.5, (1, 0), (32, 64, 128)
        )
        assert all(0.0 <= v <= 1.0 for v in est.averages)


class TestVerdict:
    def test_decaying_never_localized(self):
        est = DeltaIntensityEstimate(
            site=0, horizons=(8, 16, 32), averages=(0.5, 0.4, 0.3)
        )
        assert est.decaying
        assert not localization_verdict(est)

    def test_persistent_average_is_localized(self):
        est = DeltaIntensityEstimate(
            site=0, horizons=(8, 16, 32), averages=(0.2, 0.2, 0.2)
        )
        assert not est.decaying
        assert localization_verdict(est)

    def test_small_persistent_average_below_threshold(self):
        est = DeltaIntensityEstimate(
            site=0, horizons=(8, 16, 32), averages=(0.001, 0.001, 0.001)
        )
        assert not localization_verdict(est)
        assert localization_verdict(est, epsilon=0.0005)

    def test_line_walk_not_localized(self):
        est = time_averaged_probability_1d(
            QubitState(1.0, 0.0), 0.5, 0, (64, 128, 256)
        )
        assert not localization_verdict(est)

    def test_lattice_walk_not_localized(self):
        est = time_averaged_probability_2d(
            QuditState(1, 0, 0, 0), 0.5, (0, 0), (32, 64, 128)
        )
        assert not localization_verdict(est)

    def test_needs_three_horizons(self):
        est = DeltaIntensityEstimate(site=0, horizons=(8, 16), averages=(0.5, 0.4))
        with pytest.raises(PreconditionError):
            localization_verdict(est)

    def test_epsilon_validation(self):
        est = DeltaIntensityEstimate(
            site=0, horizons=(8, 16, 32), averages=(0.5, 0.4, 0.3)
        )
        with pytest.raises(InvalidParameterError):
            localization_verdict(est, epsilon=0.0)
