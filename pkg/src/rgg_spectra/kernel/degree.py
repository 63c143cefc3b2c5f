"""Closed-form degree profile H_r of the cube: half the length of [x - r, x + r] within [-1, 1]."""

from __future__ import annotations

import numpy as np

from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.geometry.metric import RadiusLike
from rgg_spectra.geometry.sampling import Radius


def _check_r(r: float) -> float:
    r = float(r)
    if not 0.0 < r < 2.0:
        raise InvalidArgumentError(f"r must lie in (0, 2), got {r}")
    return r


def H_r(x: float, r: float) -> float:
    """H_r(x) for a scalar x in [-1, 1].

    r <= 1: (1 + r - |x|)/2 when |x| >= 1 - r, else r.
    r >= 1: (1 + r - |x|)/2 when |x| >= r - 1, else 1.
    """
    r = _check_r(r)
    ax = abs(float(x))
    if ax > 1.0:
        raise InvalidArgumentError(f"x must lie in [-1, 1], got {x}")
    if r <= 1.0:
        return (1.0 + r - ax) / 2.0 if ax >= 1.0 - r else r
    return (1.0 + r - ax) / 2.0 if ax >= r - 1.0 else 1.0


def H_r_vector(x: np.ndarray, r: float) -> np.ndarray:
    """Vectorized H_r; same branches as :func:`H_r`."""
    r = _check_r(r)
    ax = np.abs(np.asarray(x, dtype=float))
    if np.any(ax > 1.0):
        raise InvalidArgumentError("x must lie in [-1, 1]")
    return np.minimum(min(r, 1.0), (1.0 + r - ax) / 2.0)


def H_r_multidim(x, r: RadiusLike) -> float | np.ndarray:
    """prod_k H_{r_k}(x_k) for one point (shape (d,)) or many (shape (n, d))."""
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    radii = Radius.coerce(r).per_axis(pts.shape[1])
    out = np.ones(pts.shape[0])
    for k, rk in enumerate(radii):
        out *= H_r_vector(pts[:, k], rk)
    return float(out[0]) if single else out
