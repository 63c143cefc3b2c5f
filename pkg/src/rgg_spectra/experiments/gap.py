"""Spectral-gap sweeps over the connection radius."""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, field_validator

from rgg_spectra.config import experiment_config
from rgg_spectra.eigen.solver import symmetric_eigenvalues
from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.geometry.sampling import Radius, sample_uniform_cube, trial_seed
from rgg_spectra.graph.operators import build_graph_operators
from rgg_spectra.parallel import map_trials

logger = logging.getLogger(__name__)

Regime = Literal["sparse", "critical", "dense"]


class GapReport(BaseModel):
    """Per-trial gamma_2 = 1 - lambda_2(W) at one radius."""

    r: float
    d: int
    n: int
    trials: int
    seed: int
    gamma2_samples: list[float]
    regime: Regime
    expected_low: float
    expected_high: float
    mean: float = 0.0
    min: float = 0.0
    max: float = 0.0
    in_regime: bool = False

    @field_validator("gamma2_samples")
    @classmethod
    def _laplacian_range(cls, samples: list[float]) -> list[float]:
        tol = 1e-9
        if any(not -tol <= g <= 2.0 + tol for g in samples):
            raise ValueError("gamma_2 samples must lie in [0, 2]")
        return samples

    def model_post_init(self, __context) -> None:
        samples = np.asarray(self.gamma2_samples, dtype=float)
        if samples.size:
            self.mean = float(samples.mean())
            self.min = float(samples.min())
            self.max = float(samples.max())
            self.in_regime = bool(
                np.all((samples > self.expected_low) & (samples < self.expected_high))
            )


class RegimeRange(BaseModel):
    regime: Regime
    low: float = Field(ge=0.0)
    high: float = Field(le=2.0)


def regime_of(r: float) -> RegimeRange:
    """Where gamma_2 is expected to sit for large n.

    r < 1: below 1/2; r = 1: near 1/2 (finite-n window from config); r > 1: in (1/2, 1).
    """
    r = Radius(r).scalar
    if r == 1.0:
        low, high = experiment_config.gap_window
        return RegimeRange(regime="critical", low=low, high=high)
    if r > 1.0:
        return RegimeRange(regime="dense", low=0.5, high=1.0)
    return RegimeRange(regime="sparse", low=0.0, high=0.5)


def trial_gap(n: int, d: int, r: float, seed: int) -> float:
    ops = build_graph_operators(sample_uniform_cube(n, d, seed), r)
    spec = symmetric_eigenvalues(ops.w_matrix)
    if spec.order < 2:
        raise InvalidArgumentError("gamma_2 needs at least two vertices")
    return 1.0 - spec[1]


def gap_sweep(
    d: int,
    n: int,
    r_values: list[float],
    trials: int,
    seed: int,
    threads: int | None = None,
) -> list[GapReport]:
    """gamma_2 distribution for every r; trial t uses the same cloud at every radius."""
    if trials < 1:
        raise InvalidArgumentError(f"trials must be >= 1, got {trials}")
    if not r_values:
        raise InvalidArgumentError("r_values must not be empty")
    regimes = [regime_of(r) for r in r_values]
    jobs = [(r, t) for r in r_values for t in range(trials)]
    logger.info("[gap] d=%d n=%d radii=%d trials=%d", d, n, len(r_values), trials)
    gammas = map_trials(
        lambda job: trial_gap(n, d, job[0], trial_seed(seed, job[1])), jobs, threads
    )

    reports = []
    for i, (r, regime) in enumerate(zip(r_values, regimes, strict=True)):
        samples = gammas[i * trials : (i + 1) * trials]
        report = GapReport(
            r=r,
            d=d,
            n=n,
            trials=trials,
            seed=seed,
            gamma2_samples=samples,
            regime=regime.regime,
            expected_low=regime.low,
            expected_high=regime.high,
        )
        logger.info(
            "[gap] r=%.3g mean=%.4f regime=%s ok=%s",
            r,
            report.mean,
            regime.regime,
            report.in_regime,
        )
        reports.append(report)
    return reports


def gap_frame(reports: list[GapReport]) -> pd.DataFrame:
    """One summary row per radius."""
    return pd.DataFrame(
        [
            {
                "r": rep.r,
                "d": rep.d,
                "n": rep.n,
                "trials": rep.trials,
                "mean": rep.mean,
                "min": rep.min,
                "max": rep.max,
                "regime": rep.regime,
                "in_regime": rep.in_regime,
            }
            for rep in reports
        ]
    )
