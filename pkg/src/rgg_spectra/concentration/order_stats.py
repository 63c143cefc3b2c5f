"""Order-statistic means and variances, and Beta sub-Gaussian tail bounds."""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
import pandas as pd

from rgg_spectra.errors import InvalidArgumentError


def order_stat_expectation(k: int, n: int) -> float:
    """E[X^(k)] = -1 + 2k / (n + 1) for n uniform points of [-1, 1]."""
    if n < 1 or not 1 <= k <= n:
        raise InvalidArgumentError(f"need 1 <= k <= n, got k={k}, n={n}")
    return -1.0 + 2.0 * k / (n + 1)


def order_stat_variance(k: int, n: int) -> float:
    """Var[X^(k)] = 4 k (n - k + 1) / ((n + 1)^2 (n + 2))  (Beta(k, n - k + 1) scaled by 2)."""
    if n < 1 or not 1 <= k <= n:
        raise InvalidArgumentError(f"need 1 <= k <= n, got k={k}, n={n}")
    return 4.0 * k * (n - k + 1) / ((n + 1) ** 2 * (n + 2))


def multiindex_expectation(index: Sequence[int], k: int, m: int, d: int) -> float:
    """E[X_k^(i)] = -1 + (2 i_k m^(d-k) - m^(d-k) + 1) / (m^(d-k+1) + 1); k is 1-based."""
    idx = tuple(int(i) for i in np.atleast_1d(index))
    if m < 1 or d < 1 or not 1 <= k <= d:
        raise InvalidArgumentError(f"need m >= 1 and 1 <= k <= d, got m={m}, k={k}, d={d}")
    if len(idx) != d or any(not 1 <= i <= m for i in idx):
        raise InvalidArgumentError(f"multi-index {idx} out of range for m={m}, d={d}")
    block = m ** (d - k)
    return -1.0 + (2 * idx[k - 1] * block - block + 1) / (m ** (d - k + 1) + 1)


def expected_positions(m: int, d: int) -> np.ndarray:
    """(m^d, d) array of E[X^(i)] in flat (C-order) position order."""
    idx = np.stack(np.unravel_index(np.arange(m**d), (m,) * d), axis=1) + 1
    out = np.empty(idx.shape)
    for k in range(1, d + 1):
        block = m ** (d - k)
        out[:, k - 1] = -1.0 + (2 * idx[:, k - 1] * block - block + 1) / (m ** (d - k + 1) + 1)
    return out


def beta_proxy_variance(alpha: float, beta: float) -> float:
    """Sub-Gaussian proxy variance 1 / (4 (alpha + beta + 1)) of Beta(alpha, beta)."""
    if alpha <= 0 or beta <= 0:
        raise InvalidArgumentError(f"alpha and beta must be positive, got {alpha}, {beta}")
    return 1.0 / (4.0 * (alpha + beta + 1.0))


def beta_subgaussian_tail(alpha: float, beta: float, t: float) -> float:
    """Bound on P(|B - E B| > t): min(1, 2 exp(-t^2 / (2 sigma^2)))."""
    if t <= 0:
        raise InvalidArgumentError(f"t must be positive, got {t}")
    sigma_sq = beta_proxy_variance(alpha, beta)
    return min(1.0, 2.0 * math.exp(-(t * t) / (2.0 * sigma_sq)))


def union_bound(n: int) -> float:
    """2 n exp(-n^(1/3) / 2): chance that some X^(k) strays more than n^(-1/3) (d = 1)."""
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    return min(1.0, 2.0 * n * math.exp(-(n ** (1.0 / 3.0)) / 2.0))


def empirical_order_stat_means(n: int, trials: int, seed: int) -> pd.DataFrame:
    """Monte Carlo means of X^(1..n) against the closed form.

    Columns: k, mean, expected, stderr (exact), z.
    """
    if n < 1 or trials < 1:
        raise InvalidArgumentError(f"need n >= 1 and trials >= 1, got n={n}, trials={trials}")
    rng = np.random.default_rng(seed)
    samples = np.sort(2.0 * rng.random((trials, n)) - 1.0, axis=1)
    ks = np.arange(1, n + 1)
    expected = np.array([order_stat_expectation(k, n) for k in ks])
    stderr = np.sqrt([order_stat_variance(k, n) / trials for k in ks])
    mean = samples.mean(axis=0)
    return pd.DataFrame(
        {
            "k": ks,
            "mean": mean,
            "expected": expected,
            "stderr": stderr,
            "z": (mean - expected) / stderr,
        }
    )
