"""Nyström discretization of the 1-D limiting operator on a uniform midpoint grid.

Node i (0-based) sits at x_i = -1 + (2i + 1)/m and carries weight 1/m (probability
measure on [-1, 1]).  Two ways of sampling the indicator are offered:

- ``midpoint`` (default): h_r(x_i, x_j) at the nodes.
- ``cell_average``: the exact fraction of the cell square [x_i +- 1/m] x [x_j +- 1/m]
  on which |x - y| <= r.  The kernel jump along |x - y| = r then costs O(1/m^2)
  instead of O(1/m) in the eigenvalues.

Both depend on |i - j| only, so the indicator part is a symmetric Toeplitz matrix.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np
import pandas as pd
import scipy.linalg

from rgg_spectra.config import kernel_config
from rgg_spectra.eigen.solver import Spectrum, symmetric_eigenvalues, symmetric_eigh
from rgg_spectra.errors import InvalidArgumentError, UnsupportedKernelError
from rgg_spectra.kernel.degree import H_r_vector
from rgg_spectra.kernel.kernels import KernelSpec

logger = logging.getLogger(__name__)

Quadrature = Literal["midpoint", "cell_average"]

# Node spacing is 2/m exactly, so ties sit on integer multiples of the spacing
_TIE_TOL = 1e-9


@dataclass(frozen=True)
class NystromGrid:
    """m midpoint nodes of [-1, 1] with equal weight 1/m."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise InvalidArgumentError(f"m must be >= 1, got {self.m}")

    @property
    def nodes(self) -> np.ndarray:
        # integer numerator keeps x_{m-1-i} == -x_i bitwise
        return (2.0 * np.arange(self.m) + 1.0 - self.m) / self.m

    @property
    def weight(self) -> float:
        return 1.0 / self.m

    @property
    def spacing(self) -> float:
        return 2.0 / self.m


def _triangular_cdf(z: np.ndarray) -> np.ndarray:
    """CDF of the difference of two independent U(-1/2, 1/2), evaluated at z."""
    z = np.clip(z, -1.0, 1.0)
    return np.where(z <= 0.0, 0.5 * (1.0 + z) ** 2, 1.0 - 0.5 * (1.0 - z) ** 2)


def indicator_profile(r: float, m: int, quadrature: Quadrature = "midpoint") -> np.ndarray:
    """h-weights as a function of the index offset k = |i - j|, k = 0..m-1."""
    k = np.arange(m, dtype=float)
    rho = r * m / 2.0  # radius in units of node spacing
    if quadrature == "midpoint":
        return (k <= rho + _TIE_TOL).astype(float)
    if quadrature == "cell_average":
        return _triangular_cdf(rho - k) - _triangular_cdf(-rho - k)
    raise InvalidArgumentError(f"unknown quadrature {quadrature!r}")


def _spec_radius(spec: KernelSpec) -> float:
    if spec.d != 1:
        raise InvalidArgumentError(f"Nyström discretization needs d = 1, got d = {spec.d}")
    return spec.radius.scalar


def indicator_matrix(r: float, grid: NystromGrid, quadrature: Quadrature) -> np.ndarray:
    return scipy.linalg.toeplitz(indicator_profile(r, grid.m, quadrature))


def nystrom_matrix(
    spec: KernelSpec,
    grid: NystromGrid,
    quadrature: Quadrature | None = None,
) -> np.ndarray:
    """Symmetric m x m matrix (1/m) K_r(x_i, x_j) of the normalized kernel."""
    if spec.variant != "normalized":
        raise UnsupportedKernelError(
            "the auxiliary kernel is not symmetric; use auxiliary_collocation_matrix"
        )
    r = _spec_radius(spec)
    quadrature = quadrature or kernel_config.quadrature
    s = 1.0 / np.sqrt(H_r_vector(grid.nodes, r))
    return indicator_matrix(r, grid, quadrature) * np.outer(s, s) * grid.weight


def auxiliary_collocation_matrix(
    r: float,
    grid: NystromGrid,
    quadrature: Quadrature | None = None,
) -> np.ndarray:
    """Nonsymmetric matrix (1/m) h_r(x_i, x_j) / H_r(x_i) of the auxiliary kernel."""
    quadrature = quadrature or kernel_config.quadrature
    h = H_r_vector(grid.nodes, r)
    return indicator_matrix(r, grid, quadrature) / h[:, None] * grid.weight


@lru_cache(maxsize=32)
def nystrom_spectrum(r: float, m: int, quadrature: Quadrature | None = None) -> Spectrum:
    """Full spectrum of the Nyström matrix of K_r^1 (cached per (r, m, quadrature))."""
    quadrature = quadrature or kernel_config.quadrature
    logger.info("[kernel] Nyström spectrum r=%g m=%d (%s)", r, m, quadrature)
    mat = nystrom_matrix(KernelSpec.one_dimensional(r), NystromGrid(m), quadrature)
    return symmetric_eigenvalues(mat)


def auxiliary_spectrum_gap(r: float, m: int = 1000) -> float:
    """Max |difference| between the sorted eigenvalues of the K'_r and K_r^1 matrices.

    The two matrices are similar through diag(sqrt(H_r(x_i))).
    """
    grid = NystromGrid(m)
    aux = np.linalg.eigvals(auxiliary_collocation_matrix(r, grid))
    if np.max(np.abs(aux.imag)) > 1e-8:
        logger.warning(
            "[kernel] auxiliary spectrum has imaginary parts up to %.3g", np.max(np.abs(aux.imag))
        )
    aux_sorted = np.sort(aux.real)[::-1]
    sym = symmetric_eigenvalues(nystrom_matrix(KernelSpec.one_dimensional(r), grid)).values
    return float(np.max(np.abs(aux_sorted - sym)))


@dataclass
class ConvergenceResult:
    """Leading eigenvalues across grid refinements."""

    r: float
    table: pd.DataFrame  # columns: m, rank, value
    drift: float  # max change of the leading eigenvalues between the last two m
    tolerance: float

    @property
    def converged(self) -> bool:
        return self.drift < self.tolerance


def convergence_check(
    r: float,
    ms: Sequence[int] | None = None,
    top: int = 5,
    tolerance: float | None = None,
) -> ConvergenceResult:
    """Refine the grid through ``ms`` and measure the drift of the top eigenvalues."""
    ms = list(ms or kernel_config.convergence_ms)
    if len(ms) < 2:
        raise InvalidArgumentError("convergence check needs at least two grid sizes")
    tolerance = kernel_config.convergence_drift if tolerance is None else tolerance
    rows = []
    leading: list[np.ndarray] = []
    for m in ms:
        values = nystrom_spectrum(r, m).values[:top]
        leading.append(values)
        rows.extend({"m": m, "rank": k + 1, "value": v} for k, v in enumerate(values))
    k = min(leading[-1].size, leading[-2].size)
    drift = float(np.max(np.abs(leading[-1][:k] - leading[-2][:k])))
    return ConvergenceResult(r=r, table=pd.DataFrame(rows), drift=drift, tolerance=tolerance)


def eigenfunction_residual(
    spec: KernelSpec,
    f: Callable[[np.ndarray], np.ndarray],
    lam: float,
    grid: NystromGrid,
) -> float:
    """max_i |(K f)(x_i) - lam f(x_i)| with K applied by the Nyström quadrature."""
    values = np.asarray(f(grid.nodes), dtype=float)
    applied = nystrom_matrix(spec, grid) @ values
    return float(np.max(np.abs(applied - lam * values)))


def parity_split(r: float, m: int, top: int = 10) -> pd.DataFrame:
    """Parity of the leading eigenvectors under x -> -x.

    The kernel is even, so each eigenvector of a simple eigenvalue is even or odd.
    """
    spec, vecs = symmetric_eigh(nystrom_matrix(KernelSpec.one_dimensional(r), NystromGrid(m)))
    rows = []
    for k in range(min(top, spec.order)):
        v = vecs[:, k]
        overlap = float(v @ v[::-1])
        parity = "even" if overlap > 0.5 else "odd" if overlap < -0.5 else "mixed"
        rows.append({"rank": k + 1, "value": spec[k], "overlap": overlap, "parity": parity})
    return pd.DataFrame(rows)
