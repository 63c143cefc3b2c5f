"""Point clouds in the cube [-1, 1]^d and connection radii."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from rgg_spectra.errors import InvalidArgumentError


@dataclass(frozen=True)
class Radius:
    """Connection radius: a scalar, or one radius per coordinate (box neighbourhood)."""

    value: float | tuple[float, ...]

    def __post_init__(self) -> None:
        if isinstance(self.value, (Sequence, np.ndarray)):
            radii = tuple(float(v) for v in self.value)
            if not radii:
                raise InvalidArgumentError("radius vector must not be empty")
            object.__setattr__(self, "value", radii)
        else:
            radii = (float(self.value),)
            object.__setattr__(self, "value", radii[0])
        for r in radii:
            # r >= 2 connects every pair of the cube
            if not 0.0 < r < 2.0:
                raise InvalidArgumentError(f"radius must lie in (0, 2), got {r}")

    @classmethod
    def coerce(cls, value: Radius | float | Sequence[float]) -> Radius:
        return value if isinstance(value, Radius) else cls(value)

    @property
    def isotropic(self) -> bool:
        return not isinstance(self.value, tuple)

    @property
    def scalar(self) -> float:
        """The isotropic radius; anisotropic radii raise."""
        if not self.isotropic:
            raise InvalidArgumentError("operation requires an isotropic radius")
        return float(self.value)  # type: ignore[arg-type]

    def per_axis(self, d: int) -> np.ndarray:
        """Radius for each of the d coordinates."""
        if self.isotropic:
            return np.full(d, float(self.value))  # type: ignore[arg-type]
        radii = np.asarray(self.value, dtype=float)
        if radii.size != d:
            raise InvalidArgumentError(
                f"radius vector has {radii.size} entries but points have dimension {d}"
            )
        return radii

    def __str__(self) -> str:
        if self.isotropic:
            return f"{self.value:g}"
        return "(" + ",".join(f"{v:g}" for v in self.value) + ")"  # type: ignore[union-attr]


@dataclass(frozen=True)
class PointCloud:
    """n points of [-1, 1]^d, stored as an (n, d) read-only array."""

    points: np.ndarray
    seed: int | None = None

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise InvalidArgumentError(f"points must be a non-empty (n, d) array, got {pts.shape}")
        if np.any(np.abs(pts) > 1.0) or not np.all(np.isfinite(pts)):
            raise InvalidArgumentError("every coordinate must lie in [-1, 1]")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    @property
    def d(self) -> int:
        return int(self.points.shape[1])

    def subset(self, indices: Sequence[int] | np.ndarray) -> PointCloud:
        """Cloud made of the given rows, in the given order."""
        idx = np.asarray(indices, dtype=int)
        if idx.size == 0:
            raise InvalidArgumentError("subset must keep at least one point")
        return PointCloud(points=self.points[idx], seed=self.seed)


def sample_uniform_cube(n: int, d: int, seed: int) -> PointCloud:
    """Draw n i.i.d. uniform points of [-1, 1]^d.

    Identical (n, d, seed) triples reproduce bit-identical clouds (PCG64 stream).
    """
    if n < 1 or d < 1:
        raise InvalidArgumentError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    rng = np.random.default_rng(seed)
    points = 2.0 * rng.random((n, d)) - 1.0
    return PointCloud(points=points, seed=seed)


def trial_seed(seed: int, trial: int) -> int:
    """Per-trial seed derived from the run seed."""
    return seed + trial
