"""Classification of cell pairs by their distance to the connection threshold."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from rgg_spectra.config import experiment_config
from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.geometry.metric import RadiusLike, pairwise_indicator
from rgg_spectra.geometry.sampling import Radius
from rgg_spectra.ordering.grid import SortedGrid


@dataclass
class GoodsetReport:
    """Counts of cell pairs (ordered, diagonal included) in each class."""

    eps: float
    n: int
    inside: int  # every point pair of the two cells closer than r - eps
    outside: int  # every point pair farther than r + eps
    boundary: int
    violations_inside: int  # inside pairs whose assigned points are not connected
    violations_outside: int  # outside pairs whose assigned points are connected
    bound: float  # 2 eps sum_k (2 - r_k), i.e. 2 d (2 - r) eps for a scalar radius

    @property
    def boundary_fraction(self) -> float:
        return self.boundary / self.n**2

    @property
    def violations(self) -> int:
        return self.violations_inside + self.violations_outside

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "n": self.n,
            "inside": self.inside,
            "outside": self.outside,
            "boundary": self.boundary,
            "boundary_fraction": self.boundary_fraction,
            "violations": self.violations,
            "bound": self.bound,
        }


def goodset_classification(grid: SortedGrid, r: RadiusLike, eps: float) -> GoodsetReport:
    radius = Radius.coerce(r)
    radii = radius.per_axis(grid.d)
    if eps <= 0 or np.any(eps >= radii) or np.any(eps >= 2.0 - radii):
        raise InvalidArgumentError(f"eps must satisfy 0 < eps < r and eps < 2 - r, got {eps}")

    w = 2.0 / grid.m
    index = grid.multi_indices()
    adjacency = pairwise_indicator(grid.sorted_points, radius)
    inside = outside = violations_in = violations_out = 0
    chunk = experiment_config.pair_chunk
    for start in range(0, grid.n, chunk):
        stop = min(start + chunk, grid.n)
        # per-axis centre distance of the cell pair, then the range of point distances
        gap = np.abs(index[start:stop, None, :] - index[None, :, :]) * w
        max_excess = np.max(gap + w - radii, axis=-1)
        min_excess = np.max(np.maximum(gap - w, 0.0) - radii, axis=-1)
        is_in = max_excess < -eps
        is_out = min_excess > eps
        connected = adjacency[start:stop] > 0
        inside += int(is_in.sum())
        outside += int(is_out.sum())
        violations_in += int(np.sum(is_in & ~connected))
        violations_out += int(np.sum(is_out & connected))
    return GoodsetReport(
        eps=eps,
        n=grid.n,
        inside=inside,
        outside=outside,
        boundary=grid.n**2 - inside - outside,
        violations_inside=violations_in,
        violations_outside=violations_out,
        bound=float(2.0 * eps * np.sum(2.0 - radii)),
    )
