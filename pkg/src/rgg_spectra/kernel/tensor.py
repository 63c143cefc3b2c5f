"""Spectra of product kernels from their 1-D factors.

The eigenvalues of K(x, y) = prod_k K_k(x_k, y_k) are all products
lambda_{1, i_1} * ... * lambda_{d, i_d} of the factors' eigenvalues.
"""

from __future__ import annotations

import heapq
import itertools
from collections.abc import Sequence

import numpy as np

from rgg_spectra.config import kernel_config
from rgg_spectra.eigen.solver import Spectrum
from rgg_spectra.errors import InvalidArgumentError


def _factor_lists(
    eigs_1d: Spectrum | Sequence[Spectrum],
    d: int | None,
    truncation: float,
) -> list[np.ndarray]:
    if isinstance(eigs_1d, Spectrum):
        if d is None or d < 1:
            raise InvalidArgumentError("d >= 1 is required with a single 1-D spectrum")
        factors = [eigs_1d] * d
    else:
        factors = list(eigs_1d)
        if d is not None and d != len(factors):
            raise InvalidArgumentError(f"got {len(factors)} factor spectra for d = {d}")
    if not factors:
        raise InvalidArgumentError("at least one factor spectrum is required")
    lists = []
    for spec in factors:
        vals = spec.values[np.abs(spec.values) > truncation]
        if vals.size == 0:
            raise InvalidArgumentError("a factor spectrum is empty after truncation")
        # by magnitude, so products shrink along every index
        lists.append(vals[np.argsort(-np.abs(vals), kind="stable")])
    return lists


def tensor_spectrum(
    eigs_1d: Spectrum | Sequence[Spectrum],
    d: int | None = None,
    top_k: int = 8,
    truncation: float | None = None,
) -> Spectrum:
    """The ``top_k`` largest-magnitude d-fold products, sorted descending by value.

    ``eigs_1d`` is either one spectrum reused on every axis (isotropic kernel) or a
    list with one spectrum per axis (box kernel with radii r_1..r_d).
    Only 1-D eigenvalues with |lambda| > ``truncation`` take part.
    """
    truncation = kernel_config.truncation if truncation is None else truncation
    lists = _factor_lists(eigs_1d, d, truncation)
    total = int(np.prod([len(v) for v in lists], dtype=float))
    if top_k < 1 or top_k > total:
        raise InvalidArgumentError(f"top_k must lie in [1, {total}], got {top_k}")

    mags = [np.abs(v) for v in lists]

    def magnitude(idx: tuple[int, ...]) -> float:
        return float(np.prod([mags[k][i] for k, i in enumerate(idx)]))

    start = (0,) * len(lists)
    heap = [(-magnitude(start), start)]
    seen = {start}
    picked: list[float] = []
    while heap and len(picked) < top_k:
        _, idx = heapq.heappop(heap)
        picked.append(float(np.prod([lists[k][i] for k, i in enumerate(idx)])))
        for k in range(len(idx)):
            if idx[k] + 1 < len(lists[k]):
                nxt = idx[:k] + (idx[k] + 1,) + idx[k + 1 :]
                if nxt not in seen:
                    seen.add(nxt)
                    heapq.heappush(heap, (-magnitude(nxt), nxt))

    tol = max(s.tol for s in ([eigs_1d] if isinstance(eigs_1d, Spectrum) else eigs_1d))
    return Spectrum.from_unsorted(np.array(picked), tol=tol)


def exhaustive_tensor_spectrum(
    eigs_1d: Spectrum | Sequence[Spectrum],
    d: int | None = None,
    top_k: int = 8,
    truncation: float = 0.0,
) -> Spectrum:
    """Reference enumeration of every product; only practical for short factor lists."""
    lists = _factor_lists(eigs_1d, d, truncation)
    products = np.array([float(np.prod(c)) for c in itertools.product(*lists)])
    order = np.argsort(-np.abs(products), kind="stable")[:top_k]
    return Spectrum.from_unsorted(products[order])


def multiplicity_counts(values: np.ndarray, d: int, delta: float) -> list[int]:
    """Number of values within delta of 2^-k, for k = 0..d."""
    vals = np.asarray(values, dtype=float)
    return [int(np.sum(np.abs(vals - 2.0**-k) < delta)) for k in range(d + 1)]
