"""Dense symmetric eigensolver shared by every other module."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd
import scipy.linalg

from rgg_spectra.config import run_config
from rgg_spectra.errors import InvalidArgumentError, NumericalFailureError

logger = logging.getLogger(__name__)

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted non-increasing, with the absolute accuracy achieved."""

    values: np.ndarray
    tol: float = 0.0

    def __post_init__(self) -> None:
        vals = np.array(self.values, dtype=float).ravel()
        if vals.size and np.any(np.diff(vals) > 0):
            raise InvalidArgumentError("spectrum values must be sorted non-increasing")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def order(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.order

    def __getitem__(self, i: int) -> float:
        return float(self.values[i])

    def truncated(self, threshold: float) -> Spectrum:
        """Only the eigenvalues with |lambda| > threshold."""
        return Spectrum(values=self.values[np.abs(self.values) > threshold], tol=self.tol)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"rank": np.arange(1, self.order + 1), "value": self.values})

    @classmethod
    def from_unsorted(cls, values: np.ndarray, tol: float = 0.0) -> Spectrum:
        return cls(values=np.sort(np.asarray(values, dtype=float).ravel())[::-1], tol=tol)


def _check_square(matrix: np.ndarray) -> np.ndarray:
    mat = np.asarray(matrix, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] == 0:
        raise InvalidArgumentError(f"expected a non-empty square matrix, got shape {mat.shape}")
    return mat


def _achieved_tol(values: np.ndarray, n: int) -> float:
    norm2 = float(np.max(np.abs(values))) if values.size else 0.0
    return n * _EPS * max(norm2, 1.0)


def _solve(mat: np.ndarray, tol: float, vectors: bool):
    if tol <= 0:
        raise InvalidArgumentError(f"tol must be positive, got {tol}")
    try:
        if vectors:
            values, vecs = scipy.linalg.eigh(mat, check_finite=True)
        else:
            values, vecs = scipy.linalg.eigvalsh(mat, check_finite=True), None
    except scipy.linalg.LinAlgError as exc:
        match = re.search(r"\d+", str(exc))
        raise NumericalFailureError(
            f"eigensolver failed to converge: {exc}",
            iterations=int(match.group()) if match else 0,
        ) from exc
    except ValueError as exc:
        # non-finite entries
        raise InvalidArgumentError(str(exc)) from exc

    achieved = _achieved_tol(values, mat.shape[0])
    if achieved > tol * max(float(np.max(np.abs(values))), 1.0):
        logger.warning(
            "[eigen] n=%d: achievable accuracy %.3g is coarser than requested tol %.3g",
            mat.shape[0],
            achieved,
            tol,
        )
    return values, vecs, achieved


def symmetric_eigenvalues(matrix: np.ndarray, tol: float | None = None) -> Spectrum:
    """All eigenvalues of a dense real symmetric matrix, sorted descending.

    Uses LAPACK (``scipy.linalg.eigvalsh``); only the lower triangle is read.
    """
    mat = _check_square(matrix)
    values, _, achieved = _solve(mat, run_config.tol if tol is None else tol, vectors=False)
    return Spectrum(values=values[::-1], tol=achieved)


def symmetric_eigh(matrix: np.ndarray, tol: float | None = None) -> tuple[Spectrum, np.ndarray]:
    """Eigenvalues (descending) and matching unit eigenvectors as columns."""
    mat = _check_square(matrix)
    values, vecs, achieved = _solve(mat, run_config.tol if tol is None else tol, vectors=True)
    return Spectrum(values=values[::-1], tol=achieved), vecs[:, ::-1]


def rayleigh_quotient(matrix: np.ndarray, v: np.ndarray) -> float:
    """(v^T M v) / (v^T v)."""
    mat = _check_square(matrix)
    vec = np.asarray(v, dtype=float).ravel()
    if vec.size != mat.shape[0]:
        raise InvalidArgumentError(f"vector length {vec.size} != matrix order {mat.shape[0]}")
    norm_sq = float(vec @ vec)
    if norm_sq == 0.0:
        raise InvalidArgumentError("rayleigh quotient of the zero vector is undefined")
    return float(vec @ (mat @ vec)) / norm_sq


def trace_residual(matrix: np.ndarray, spectrum: Spectrum) -> float:
    """|sum(lambda) - trace(M)|."""
    return abs(float(spectrum.values.sum()) - float(np.trace(matrix)))


def frobenius_residual(matrix: np.ndarray, spectrum: Spectrum) -> float:
    """|sum(lambda^2) - ||M||_F^2|."""
    mat = np.asarray(matrix, dtype=float)
    return abs(float(np.sum(spectrum.values**2)) - float(np.sum(mat * mat)))


def export_spectrum_csv(spectrum: Spectrum, path: Path | str) -> Path:
    """One row per eigenvalue, columns (rank, value)."""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    spectrum.to_frame().to_csv(out, index=False, float_format="%.17g")
    return out
