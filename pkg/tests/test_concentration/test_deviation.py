"""Tests for the sorted-point deviation experiment."""

import numpy as np
import pytest
from pydantic import ValidationError

from rgg_spectra.concentration.deviation import DeviationReport, deviation_experiment
from rgg_spectra.errors import InvalidArgumentError


def test_single_point():
    report = deviation_experiment(1, 1, trials=1, seed=1)
    assert report.threshold == 1.0
    assert report.max_deviation[0] <= 1.0
    assert report.pass_fraction == 1.0


def test_large_one_dimensional_sample_always_passes():
    report = deviation_experiment(100_000, 1, trials=50, seed=1, threads=2)
    assert report.pass_fraction == 1.0
    assert len(report.max_deviation) == 50


def test_two_dimensional_report_shape():
    report = deviation_experiment(4096, 2, trials=3, seed=1)
    assert report.threshold == pytest.approx(4096 ** (-1 / 6))
    assert 0.0 <= report.pass_fraction <= 1.0
    assert all(dev > 0 for dev in report.max_deviation)


def test_thread_count_does_not_change_result():
    a = deviation_experiment(1000, 1, trials=4, seed=9, threads=1)
    b = deviation_experiment(1000, 1, trials=4, seed=9, threads=3)
    assert a == b


def test_rejects_non_power():
    with pytest.raises(InvalidArgumentError):
        deviation_experiment(4000, 2, trials=1, seed=1)


def test_rejects_zero_trials():
    with pytest.raises(InvalidArgumentError):
        deviation_experiment(100, 1, trials=0, seed=1)


def test_report_validates_fraction():
    with pytest.raises(ValidationError):
        DeviationReport(
            n=1, d=1, trials=1, seed=1, max_deviation=[0.1], threshold=1.0, pass_fraction=1.5
        )


def test_report_json_round_trip():
    report = deviation_experiment(27, 3, trials=2, seed=4)
    assert DeviationReport.model_validate_json(report.model_dump_json()) == report


@pytest.mark.slow
def test_cell_membership_hundred_trials_on_the_line():
    report = deviation_experiment(4096, 1, trials=100, seed=1)
    assert report.threshold == pytest.approx(4096 ** (-1 / 3))
    assert report.pass_fraction >= 0.99


@pytest.mark.slow
def test_cell_membership_in_the_square_is_reported():
    coarse = deviation_experiment(1024, 2, trials=100, seed=1)
    fine = deviation_experiment(4096, 2, trials=100, seed=1)
    assert len(fine.max_deviation) == 100
    assert 0.0 <= fine.pass_fraction <= 1.0
    assert np.mean(fine.max_deviation) < np.mean(coarse.max_deviation)
