"""Step kernels built from the sorted sample and their distance to the limiting kernel."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from rgg_spectra.config import experiment_config
from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.geometry.metric import RadiusLike, pairwise_indicator
from rgg_spectra.geometry.sampling import PointCloud, Radius
from rgg_spectra.graph.operators import SymmetricMatrix, build_graph_operators
from rgg_spectra.kernel.degree import H_r_multidim, H_r_vector
from rgg_spectra.ordering.grid import SortedGrid, cell_bounds

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StepKernel:
    """W-matrix of the sorted points.

    K_{n,r}(x, y) = n * matrix_form[cell(x), cell(y)] on the cell partition.
    """

    grid: SortedGrid
    radius: Radius
    matrix_form: SymmetricMatrix

    def value(self, a: int, b: int) -> float:
        """Kernel value on the cell pair at flat positions (a, b)."""
        return self.grid.n * float(self.matrix_form[a, b])


def sorting_permutation(grid: SortedGrid) -> np.ndarray:
    """perm with sorted position p holding original point perm[p]."""
    return grid.order.copy()


def step_w_matrix(grid: SortedGrid, r: RadiusLike) -> StepKernel:
    radius = Radius.coerce(r)
    sorted_cloud = PointCloud(points=grid.sorted_points, seed=grid.cloud.seed)
    ops = build_graph_operators(sorted_cloud, radius)
    return StepKernel(grid=grid, radius=radius, matrix_form=ops.w_matrix)


def empirical_H(grid: SortedGrid, r: RadiusLike) -> np.ndarray:
    """H_{n,r} on each cell (flat position order): degree of X^(i) divided by n."""
    adjacency = pairwise_indicator(grid.sorted_points, r)
    return adjacency.sum(axis=1) / grid.n


def sup_H_distance(grid: SortedGrid, r: RadiusLike) -> float:
    """sup_x |H_{n,r}(x) - H_r(x)|, exact per cell.

    H_r decreases in each |x_k|, so over a cell it ranges between its values at the
    smallest and largest |x_k| of the cell (the smallest is 0 when the cell meets 0).
    """
    radius = Radius.coerce(r)
    radii = radius.per_axis(grid.d)
    constants = empirical_H(grid, radius)
    lo, hi = cell_bounds(grid.multi_indices(), grid.m)
    near = np.where(lo * hi <= 0.0, 0.0, np.minimum(np.abs(lo), np.abs(hi)))
    far = np.maximum(np.abs(lo), np.abs(hi))
    h_max = np.ones(grid.n)
    h_min = np.ones(grid.n)
    for k, rk in enumerate(radii):
        h_max *= H_r_vector(near[:, k], rk)
        h_min *= H_r_vector(far[:, k], rk)
    return float(np.max(np.maximum(np.abs(constants - h_max), np.abs(constants - h_min))))


def _quadrature_points(grid: SortedGrid, sub: int) -> tuple[np.ndarray, np.ndarray]:
    """sub^d midpoint nodes per cell and the flat cell position of each node."""
    lo, _ = cell_bounds(grid.multi_indices(), grid.m)
    w = 2.0 / grid.m
    offsets_1d = (2.0 * np.arange(sub) + 1.0) / (2.0 * sub) * w
    offsets = np.stack(np.meshgrid(*([offsets_1d] * grid.d), indexing="ij"), axis=-1)
    offsets = offsets.reshape(-1, grid.d)
    points = (lo[:, None, :] + offsets[None, :, :]).reshape(-1, grid.d)
    cells = np.repeat(np.arange(grid.n), offsets.shape[0])
    return points, cells


def l1_kernel_distance(
    grid: SortedGrid,
    r: RadiusLike,
    sub: int | None = None,
    step: StepKernel | None = None,
) -> float:
    """int int |K_{n,r} - K_r^d| dnu dnu by midpoint quadrature (sub nodes per cell per axis).

    Upper-bounds the cut-norm distance.
    """
    sub = experiment_config.l1_sub if sub is None else sub
    if sub < 1:
        raise InvalidArgumentError(f"sub must be >= 1, got {sub}")
    radius = Radius.coerce(r)
    radii = radius.per_axis(grid.d)
    step = step or step_w_matrix(grid, radius)
    scaled = grid.n * np.asarray(step.matrix_form)

    points, cells = _quadrature_points(grid, sub)
    inv_sqrt_h = 1.0 / np.sqrt(H_r_multidim(points, radius))
    total = 0.0
    chunk = experiment_config.pair_chunk
    for start in range(0, points.shape[0], chunk):
        stop = min(start + chunk, points.shape[0])
        within = np.ones((stop - start, points.shape[0]), dtype=bool)
        for k in range(grid.d):
            within &= np.abs(points[start:stop, k, None] - points[None, :, k]) <= radii[k]
        limit = within * np.outer(inv_sqrt_h[start:stop], inv_sqrt_h)
        total += float(np.abs(scaled[np.ix_(cells[start:stop], cells)] - limit).sum())
    logger.debug("[order] l1 distance n=%d sub=%d", grid.n, sub)
    return total / points.shape[0] ** 2
