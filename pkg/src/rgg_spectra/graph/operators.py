"""Adjacency, degree, W = D^-1/2 A D^-1/2 and normalized Laplacian of G(n, r)."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.geometry.metric import RadiusLike, pairwise_indicator
from rgg_spectra.geometry.sampling import PointCloud, Radius

logger = logging.getLogger(__name__)

# Dense real symmetric n x n matrices are plain float64 ndarrays.
SymmetricMatrix = np.ndarray


@dataclass(frozen=True)
class GraphOperators:
    """The four dense operators of one random geometric graph.

    The adjacency diagonal is 1 (self-loops), so every degree is at least 1.
    """

    adjacency: SymmetricMatrix
    degrees: np.ndarray
    w_matrix: SymmetricMatrix
    laplacian: SymmetricMatrix

    @property
    def n(self) -> int:
        return int(self.degrees.size)

    def sqrt_degree_vector(self) -> np.ndarray:
        """(sqrt d_1, ..., sqrt d_n), the eigenvector of W for eigenvalue 1."""
        return np.sqrt(self.degrees)


def operators_from_adjacency(adjacency: np.ndarray) -> GraphOperators:
    adjacency = np.asarray(adjacency, dtype=float)
    degrees = adjacency.sum(axis=1)
    inv_sqrt = 1.0 / np.sqrt(degrees)
    # Scaling by the outer product keeps w[i, j] == w[j, i] bitwise
    w = adjacency * np.outer(inv_sqrt, inv_sqrt)
    laplacian = np.eye(adjacency.shape[0]) - w
    for arr in (adjacency, degrees, w, laplacian):
        arr.flags.writeable = False
    return GraphOperators(adjacency=adjacency, degrees=degrees, w_matrix=w, laplacian=laplacian)


def build_graph_operators(cloud: PointCloud, r: RadiusLike) -> GraphOperators:
    """Build A, D, W and the normalized Laplacian of the graph on ``cloud`` at radius r."""
    radius = Radius.coerce(r)
    logger.debug("[graph] n=%d d=%d r=%s", cloud.n, cloud.d, radius)
    return operators_from_adjacency(pairwise_indicator(cloud.points, radius))


def principal_submatrix(matrix: np.ndarray, keep: Sequence[int] | np.ndarray) -> SymmetricMatrix:
    """Rows and columns ``keep`` of ``matrix``, in the given order."""
    mat = np.asarray(matrix)
    idx = np.asarray(keep, dtype=int).ravel()
    n = mat.shape[0]
    if idx.size == 0:
        raise InvalidArgumentError("keep must be non-empty")
    if idx.min() < 0 or idx.max() >= n:
        raise InvalidArgumentError(f"keep indices must lie in [0, {n})")
    if np.unique(idx).size != idx.size:
        raise InvalidArgumentError("keep indices must be distinct")
    return mat[np.ix_(idx, idx)]


def permute(ops: GraphOperators, perm: Sequence[int] | np.ndarray) -> GraphOperators:
    """Operators of the same graph with vertices relabelled so that new i = old perm[i]."""
    idx = np.asarray(perm, dtype=int)
    if not np.array_equal(np.sort(idx), np.arange(ops.n)):
        raise InvalidArgumentError("perm must be a permutation of range(n)")
    return operators_from_adjacency(principal_submatrix(ops.adjacency, idx))
