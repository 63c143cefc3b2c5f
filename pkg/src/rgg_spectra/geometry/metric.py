"""L-infinity distance and the connection indicator h_r."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.geometry.sampling import Radius

RadiusLike = Radius | float | Sequence[float]


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    a = np.atleast_1d(np.asarray(x, dtype=float))
    b = np.atleast_1d(np.asarray(y, dtype=float))
    if a.shape != b.shape or a.ndim != 1:
        raise InvalidArgumentError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def linf_distance(x, y) -> float:
    """max_i |x_i - y_i|."""
    a, b = _pair(x, y)
    return float(np.max(np.abs(a - b)))


def indicator_h(x, y, r: RadiusLike) -> int:
    """1 iff |x_i - y_i| <= r_i on every coordinate (distance exactly r counts)."""
    a, b = _pair(x, y)
    radii = Radius.coerce(r).per_axis(a.size)
    return int(np.all(np.abs(a - b) <= radii))


def pairwise_indicator(points: np.ndarray, r: RadiusLike) -> np.ndarray:
    """n x n matrix of h_r over all pairs of rows of ``points`` (float 0/1, diagonal 1)."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    radii = Radius.coerce(r).per_axis(pts.shape[1])
    within = np.ones((pts.shape[0], pts.shape[0]), dtype=bool)
    for k in range(pts.shape[1]):
        col = pts[:, k]
        # |a - b| == |b - a| bitwise, so the result is exactly symmetric
        within &= np.abs(col[:, None] - col[None, :]) <= radii[k]
    return within.astype(float)
