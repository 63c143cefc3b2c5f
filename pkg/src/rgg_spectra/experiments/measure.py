"""Empirical spectral measure of W_{n,r}: interval counts and multiplicity profiles."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb

import numpy as np
import pandas as pd

from rgg_spectra.config import kernel_config
from rgg_spectra.eigen.solver import Spectrum, symmetric_eigenvalues
from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.geometry.sampling import PointCloud, sample_uniform_cube
from rgg_spectra.graph.operators import build_graph_operators
from rgg_spectra.kernel.nystrom import nystrom_spectrum
from rgg_spectra.kernel.tensor import tensor_spectrum

logger = logging.getLogger(__name__)

# Beyond the top eigenvalue and the 1/2 packet, the r = 1 limit keeps |lambda| below this
BULK_EDGE = 0.3


def _check_interval(interval: tuple[float, float]) -> tuple[float, float]:
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise InvalidArgumentError(f"interval ({lo}, {hi}) is empty")
    return lo, hi


def measure_count(spec: Spectrum, interval: tuple[float, float]) -> int:
    """Number of eigenvalues strictly inside the open interval."""
    lo, hi = _check_interval(interval)
    return int(np.sum((spec.values > lo) & (spec.values < hi)))


@dataclass(frozen=True)
class SpectralMeasure:
    """mu_n = sum_i delta_{lambda_i} for one W spectrum."""

    spectrum: Spectrum

    def count(self, interval: tuple[float, float]) -> int:
        return measure_count(self.spectrum, interval)

    def histogram(self, edges: np.ndarray) -> np.ndarray:
        """Counts over the half-open bins of ``edges`` (the last bin closed)."""
        counts, _ = np.histogram(self.spectrum.values, bins=edges)
        return counts


def multiplicity_windows(d: int, delta: float) -> list[tuple[float, float]]:
    """I_{k,delta} = (2^-k - delta, 2^-k + delta) for k = 0..d; must be disjoint."""
    if delta <= 0:
        raise InvalidArgumentError(f"delta must be positive, got {delta}")
    if d >= 1 and delta >= 2.0 ** -(d + 1):
        raise InvalidArgumentError(
            f"delta={delta} makes the windows around 2^-k overlap for d={d} "
            f"(need delta < {2.0 ** -(d + 1):g})"
        )
    return [(2.0**-k - delta, 2.0**-k + delta) for k in range(d + 1)]


@dataclass
class MultiplicityProfile:
    """Counts of W eigenvalues near 2^-k, plus the ones outside every window and the bulk."""

    d: int
    n: int
    delta: float
    counts: list[int]
    outside: int
    expected: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.expected:
            self.expected = [comb(self.d, k) for k in range(self.d + 1)]

    @property
    def meets_lower_bounds(self) -> bool:
        return all(c >= e for c, e in zip(self.counts, self.expected, strict=True))

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "delta": self.delta,
            "counts": self.counts,
            "expected_at_least": self.expected,
            "outside": self.outside,
            "meets_lower_bounds": self.meets_lower_bounds,
        }


def profile_from_spectrum(spec: Spectrum, d: int, delta: float) -> MultiplicityProfile:
    windows = multiplicity_windows(d, delta)
    values = spec.values
    counts = [measure_count(spec, w) for w in windows]
    in_window = np.zeros(values.size, dtype=bool)
    for lo, hi in windows:
        in_window |= (values > lo) & (values < hi)
    in_bulk = np.abs(values) <= BULK_EDGE + delta
    outside = int(np.sum(~in_window & ~in_bulk))
    return MultiplicityProfile(d=d, n=spec.order, delta=delta, counts=counts, outside=outside)


def multiplicity_profile(
    cloud: PointCloud,
    r: float = 1.0,
    delta: float | None = None,
) -> MultiplicityProfile:
    """mu_n(I_{k,delta}) for k = 0..d at r = 1."""
    if r != 1.0:
        raise InvalidArgumentError(f"multiplicity profile is defined at r = 1, got r = {r}")
    delta = kernel_config.delta if delta is None else delta
    multiplicity_windows(cloud.d, delta)
    spec = symmetric_eigenvalues(build_graph_operators(cloud, r).w_matrix)
    profile = profile_from_spectrum(spec, cloud.d, delta)
    logger.info("[measure] n=%d d=%d counts=%s", cloud.n, cloud.d, profile.counts)
    return profile


def empty_window_count(spec: Spectrum, delta: float | None = None) -> int:
    """Eigenvalues in (0.3 + delta, 1/2 - delta), (1/2 + delta, 1 - delta) or (1 + delta, inf).

    At r = 1 and large n these gaps empty out; the 1/2 packet and the top eigenvalue stay.
    A passing spectrum returns 0.
    """
    delta = kernel_config.delta if delta is None else delta
    windows = [
        (BULK_EDGE + delta, 0.5 - delta),
        (0.5 + delta, 1.0 - delta),
        (1.0 + delta, np.inf),
    ]
    return sum(measure_count(spec, w) for w in windows if w[0] < w[1])


def nystrom_graph_agreement(
    d: int,
    n: int,
    seed: int,
    mquad: int | None = None,
) -> pd.DataFrame:
    """Top 1 + d + C(d, 2) eigenvalues of W_{n,1} next to the limiting operator's.

    Columns: rank, graph, kernel, diff.
    """
    mquad = kernel_config.mquad if mquad is None else mquad
    count = 1 + d + comb(d, 2)
    graph = symmetric_eigenvalues(
        build_graph_operators(sample_uniform_cube(n, d, seed=seed), 1.0).w_matrix
    ).values[:count]
    kernel = tensor_spectrum(nystrom_spectrum(1.0, mquad), d=d, top_k=max(64, 4 * count))
    limit = kernel.values[:count]
    return pd.DataFrame(
        {
            "rank": np.arange(1, count + 1),
            "graph": graph,
            "kernel": limit,
            "diff": np.abs(graph - limit),
        }
    )


def multiplicity_trial(n: int, d: int, seed: int, delta: float | None = None) -> dict:
    """Profile plus empty-window count for one seeded r = 1 cloud."""
    delta = kernel_config.delta if delta is None else delta
    ops = build_graph_operators(sample_uniform_cube(n, d, seed), 1.0)
    spec = symmetric_eigenvalues(ops.w_matrix)
    profile = profile_from_spectrum(spec, d, delta)
    return {
        "seed": seed,
        **profile.to_dict(),
        "lambda_1": spec[0],
        "lambda_2": spec[1] if spec.order > 1 else None,
        "window_violations": empty_window_count(spec, delta),
    }
