"""Coordinate-wise block ordering of n = m^d points and the cell partition of the cube.

Step 1 sorts all points by the first coordinate and cuts them into m blocks of
m^(d-1); step k sorts every block left by step k-1 by coordinate k and cuts it
into m sub-blocks.  The flat position p of a point after the last step unravels
(C order, shape (m,)*d) into its multi-index.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.geometry.sampling import PointCloud


def side_count(n: int, d: int) -> int:
    """m with m^d == n, or invalid-argument if n is not a perfect d-th power."""
    if n < 1 or d < 1:
        raise InvalidArgumentError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    m = round(n ** (1.0 / d))
    for cand in (m - 1, m, m + 1):
        if cand >= 1 and cand**d == n:
            return cand
    raise InvalidArgumentError(f"n={n} is not a perfect {d}-th power")


@dataclass(frozen=True)
class SortedGrid:
    """Result of the d-step ordering.

    ``order[p]`` is the index (into the cloud) of the point assigned to flat
    position p; positions are C-ordered multi-indices of shape (m,)*d.
    """

    cloud: PointCloud
    m: int
    order: np.ndarray

    @property
    def d(self) -> int:
        return self.cloud.d

    @property
    def n(self) -> int:
        return self.cloud.n

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.m,) * self.d

    @property
    def sorted_points(self) -> np.ndarray:
        return self.cloud.points[self.order]

    def multi_indices(self) -> np.ndarray:
        """(n, d) array of 1-based multi-indices, row p for flat position p."""
        return np.stack(np.unravel_index(np.arange(self.n), self.shape), axis=1) + 1

    def position(self, index: Sequence[int]) -> int:
        """Flat position of a 1-based multi-index."""
        idx = tuple(int(i) - 1 for i in index)
        if len(idx) != self.d or any(not 0 <= i < self.m for i in idx):
            raise InvalidArgumentError(f"multi-index {tuple(index)} out of range for m={self.m}")
        return int(np.ravel_multi_index(idx, self.shape))

    def assigned_point(self, index: Sequence[int]) -> np.ndarray:
        """X^(i) for a 1-based multi-index i."""
        return self.sorted_points[self.position(index)]


def coordinate_sort(cloud: PointCloud, m: int) -> SortedGrid:
    """Run the d sorting steps; ties are broken by original point index."""
    d = cloud.d
    if m < 1 or m**d != cloud.n:
        raise InvalidArgumentError(f"cloud has {cloud.n} points, expected m^d = {m}^{d}")
    order = np.arange(cloud.n)
    for k in range(d):
        block = m ** (d - k)
        blocks = order.reshape(-1, block)
        coords = cloud.points[blocks, k]
        perm = np.lexsort((blocks, coords), axis=-1)
        order = np.take_along_axis(blocks, perm, axis=1).ravel()
    return SortedGrid(cloud=cloud, m=m, order=order)


def cell_of(x, m: int) -> tuple[int, ...]:
    """1-based multi-index of the cell containing x; the last cell is closed at 1."""
    pts = np.atleast_1d(np.asarray(x, dtype=float))
    if m < 1:
        raise InvalidArgumentError(f"m must be >= 1, got {m}")
    if np.any(np.abs(pts) > 1.0):
        raise InvalidArgumentError("every coordinate must lie in [-1, 1]")
    idx = np.floor((pts + 1.0) * m / 2.0).astype(int) + 1
    return tuple(int(i) for i in np.minimum(idx, m))


def cell_bounds(index: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Lower and upper cell edges for 1-based indices (any shape)."""
    idx = np.asarray(index, dtype=float)
    return -1.0 + 2.0 * (idx - 1.0) / m, -1.0 + 2.0 * idx / m


def cell_center(index: np.ndarray, m: int) -> np.ndarray:
    idx = np.asarray(index, dtype=float)
    return -1.0 + (2.0 * idx - 1.0) / m
