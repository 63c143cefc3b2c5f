"""Cauchy interlacing and the bridge from perfect d-th powers to general n."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from rgg_spectra.eigen.solver import Spectrum, symmetric_eigenvalues
from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.geometry.sampling import sample_uniform_cube
from rgg_spectra.graph.operators import build_graph_operators, principal_submatrix

logger = logging.getLogger(__name__)

BRIDGE_THRESHOLDS = (0.35, 0.45)


def interlacing_check(
    parent: Spectrum,
    child: Spectrum,
    n: int | None = None,
    m: int | None = None,
    tol: float = 1e-9,
) -> tuple[bool, float]:
    """alpha_{k+n-m} - tol <= beta_k <= alpha_k + tol for k = 1..m.

    Returns (holds, worst violation); the violation is 0 when every inequality holds exactly.
    """
    n = parent.order if n is None else n
    m = child.order if m is None else m
    if n != parent.order or m != child.order:
        raise InvalidArgumentError(
            f"sizes ({n}, {m}) do not match spectra of order ({parent.order}, {child.order})"
        )
    if m > n:
        raise InvalidArgumentError(f"child order {m} exceeds parent order {n}")
    alpha, beta = parent.values, child.values
    upper = beta - alpha[:m]
    lower = alpha[n - m :] - beta
    worst = float(max(0.0, upper.max(initial=0.0), lower.max(initial=0.0)))
    return worst <= tol, worst


def random_principal_interlacing(
    matrix: np.ndarray,
    keep: int,
    seed: int,
    tol: float = 1e-9,
) -> tuple[bool, float]:
    """Interlacing of ``matrix`` against a random principal submatrix of order ``keep``."""
    n = matrix.shape[0]
    if not 1 <= keep <= n:
        raise InvalidArgumentError(f"keep must lie in [1, {n}], got {keep}")
    rng = np.random.default_rng(seed)
    rows = np.sort(rng.choice(n, size=keep, replace=False))
    parent = symmetric_eigenvalues(matrix)
    child = symmetric_eigenvalues(principal_submatrix(matrix, rows))
    return interlacing_check(parent, child, tol=tol)


def threshold_count(spec: Spectrum, lam: float) -> int:
    """#{j : |lambda_j| > lam}."""
    return int(np.sum(np.abs(spec.values) > lam))


@dataclass
class BridgeReport:
    """Threshold counts at (m-1)^d, n and m^d from nested subsets of one m^d cloud.

    ``subset_counts`` come from the graphs on the nested subsets; ``principal_counts``
    from principal submatrices of the m^d matrix, where interlacing applies literally.
    """

    n: int
    d: int
    r: float
    seed: int
    sizes: tuple[int, int, int] | None = None
    subset_counts: dict[float, tuple[int, int, int]] = field(default_factory=dict)
    principal_counts: dict[float, tuple[int, int, int]] = field(default_factory=dict)
    interlacing_violation: float = 0.0
    degenerate: bool = False

    @staticmethod
    def _sandwiched(counts: tuple[int, int, int]) -> bool:
        low, mid, high = counts
        return low <= mid <= high

    @property
    def subset_sandwich(self) -> bool:
        return all(self._sandwiched(c) for c in self.subset_counts.values())

    @property
    def principal_sandwich(self) -> bool:
        return all(self._sandwiched(c) for c in self.principal_counts.values())

    @property
    def passed(self) -> bool:
        exact = self.interlacing_violation <= 1e-9
        return self.subset_sandwich and self.principal_sandwich and exact

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "r": self.r,
            "seed": self.seed,
            "sizes": list(self.sizes) if self.sizes else None,
            "subset_counts": {f"{k:g}": list(v) for k, v in self.subset_counts.items()},
            "principal_counts": {f"{k:g}": list(v) for k, v in self.principal_counts.items()},
            "interlacing_violation": self.interlacing_violation,
            "degenerate": self.degenerate,
            "pass": self.passed,
        }


def bracketing_sides(n: int, d: int) -> tuple[int, int] | None:
    """(m - 1, m) with (m-1)^d < n < m^d, or None when no such m exists.

    That covers every perfect d-th power and every n < 2.
    """
    if d < 1:
        raise InvalidArgumentError(f"need d >= 1, got d={d}")
    if n < 2:
        return None
    m = 1
    while m**d < n:
        m += 1
    if m**d == n:
        return None
    return m - 1, m


def bridge_general_n(
    n: int,
    d: int,
    r: float = 1.0,
    seed: int = 1,
    thresholds: tuple[float, ...] = BRIDGE_THRESHOLDS,
) -> BridgeReport:
    sides = bracketing_sides(n, d)
    if sides is None:
        # d = 1, n < 2, or n already a perfect power: nothing to bridge
        return BridgeReport(n=n, d=d, r=r, seed=seed, degenerate=True)
    low, high = sides[0] ** d, sides[1] ** d
    sizes = (low, n, high)
    cloud = sample_uniform_cube(high, d, seed)
    parent_w = build_graph_operators(cloud, r).w_matrix

    subset_spectra = [
        symmetric_eigenvalues(build_graph_operators(cloud.subset(np.arange(k)), r).w_matrix)
        for k in (low, n)
    ]
    parent = symmetric_eigenvalues(parent_w)
    subset_spectra.append(parent)
    principal_spectra = [
        symmetric_eigenvalues(principal_submatrix(parent_w, np.arange(k))) for k in (low, n)
    ]
    principal_spectra.append(parent)

    violation = max(interlacing_check(parent, child)[1] for child in principal_spectra[:2])
    report = BridgeReport(
        n=n,
        d=d,
        r=r,
        seed=seed,
        sizes=sizes,
        subset_counts={
            lam: tuple(threshold_count(s, lam) for s in subset_spectra) for lam in thresholds
        },
        principal_counts={
            lam: tuple(threshold_count(s, lam) for s in principal_spectra) for lam in thresholds
        },
        interlacing_violation=violation,
    )
    logger.info("[bridge] n=%d sizes=%s pass=%s", n, sizes, report.passed)
    return report
