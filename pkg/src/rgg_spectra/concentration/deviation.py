"""Empirical deviation of sorted points from their expected cell positions."""

from __future__ import annotations

import logging

import numpy as np
from pydantic import BaseModel, Field

from rgg_spectra.concentration.order_stats import expected_positions
from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.geometry.sampling import sample_uniform_cube, trial_seed
from rgg_spectra.ordering.grid import coordinate_sort, side_count
from rgg_spectra.parallel import map_trials

logger = logging.getLogger(__name__)


class DeviationReport(BaseModel):
    """Per-trial sup_i ||X^(i) - E X^(i)||_inf against the threshold n^(-1/(3d))."""

    n: int
    d: int
    trials: int
    seed: int
    max_deviation: list[float]
    threshold: float
    pass_fraction: float = Field(ge=0.0, le=1.0)


def trial_deviation(n: int, d: int, seed: int, expected: np.ndarray | None = None) -> float:
    m = side_count(n, d)
    grid = coordinate_sort(sample_uniform_cube(n, d, seed=seed), m)
    expected = expected_positions(m, d) if expected is None else expected
    return float(np.max(np.abs(grid.sorted_points - expected)))


def deviation_experiment(
    n: int,
    d: int,
    trials: int,
    seed: int,
    threads: int | None = None,
) -> DeviationReport:
    if trials < 1:
        raise InvalidArgumentError(f"trials must be >= 1, got {trials}")
    m = side_count(n, d)
    expected = expected_positions(m, d)
    threshold = n ** (-1.0 / (3 * d))
    logger.info("[concentrate] n=%d d=%d trials=%d threshold=%.4g", n, d, trials, threshold)
    deviations = map_trials(
        lambda t: trial_deviation(n, d, trial_seed(seed, t), expected),
        range(trials),
        threads,
    )
    passed = sum(dev <= threshold for dev in deviations)
    return DeviationReport(
        n=n,
        d=d,
        trials=trials,
        seed=seed,
        max_deviation=deviations,
        threshold=threshold,
        pass_fraction=passed / trials,
    )
