"""Tests for graph operator construction."""

import numpy as np
import pytest

from rgg_spectra.eigen.solver import symmetric_eigenvalues
from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.geometry.sampling import PointCloud, sample_uniform_cube
from rgg_spectra.graph.operators import (
    build_graph_operators,
    permute,
    principal_submatrix,
)


@pytest.fixture
def ops():
    return build_graph_operators(sample_uniform_cube(150, 2, seed=11), 0.8)


# ---------------------------------------------------------------------------
# build_graph_operators
# ---------------------------------------------------------------------------


def test_near_complete_graph():
    cloud = sample_uniform_cube(20, 1, seed=3)
    result = build_graph_operators(cloud, 2 - 1e-9)
    assert np.all(result.adjacency == 1.0)
    assert np.allclose(result.w_matrix, np.full((20, 20), 1 / 20))
    spec = symmetric_eigenvalues(result.w_matrix)
    assert spec[0] == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(spec.values[1:], 0.0, atol=1e-12)


def test_disconnected_pair():
    cloud = PointCloud(points=np.array([[-0.9], [0.9]]))
    result = build_graph_operators(cloud, 1.0)
    assert np.array_equal(result.adjacency, np.eye(2))
    assert np.array_equal(result.w_matrix, np.eye(2))
    assert np.array_equal(result.laplacian, np.zeros((2, 2)))


def test_three_collinear_points():
    cloud = PointCloud(points=np.array([[-0.2], [0.0], [0.2]]))
    result = build_graph_operators(cloud, 0.5)
    assert np.allclose(result.w_matrix, 1 / 3)


def test_invariants(ops):
    assert np.all(np.diag(ops.adjacency) == 1.0)
    assert np.array_equal(ops.degrees, ops.adjacency.sum(axis=1))
    assert np.all(ops.degrees >= 1)
    assert np.array_equal(ops.w_matrix, ops.w_matrix.T)
    expected = ops.adjacency / np.sqrt(np.outer(ops.degrees, ops.degrees))
    assert np.allclose(ops.w_matrix, expected, rtol=0, atol=1e-15)
    assert np.allclose(ops.laplacian, np.eye(ops.n) - ops.w_matrix, rtol=0, atol=0)


def test_sqrt_degree_eigenvector(ops):
    v = ops.sqrt_degree_vector()
    assert np.max(np.abs(ops.w_matrix @ v - v)) <= 1e-12 * ops.n


def test_spectrum_in_unit_interval(ops):
    spec = symmetric_eigenvalues(ops.w_matrix)
    assert spec[0] == pytest.approx(1.0, abs=1e-9)
    assert spec.values[-1] >= -1 - 1e-9


def test_anisotropic_radius():
    cloud = PointCloud(points=np.array([[0.0, 0.0], [0.4, 0.95], [0.6, 0.0]]))
    result = build_graph_operators(cloud, (0.5, 1.2))
    assert result.adjacency[0, 1] == 1.0
    assert result.adjacency[0, 2] == 0.0


def test_operators_read_only(ops):
    with pytest.raises(ValueError):
        ops.w_matrix[0, 0] = 2.0


# ---------------------------------------------------------------------------
# principal_submatrix / permute
# ---------------------------------------------------------------------------


def test_principal_submatrix_examples():
    assert np.array_equal(principal_submatrix(np.eye(3), [0, 2]), np.eye(2))
    assert np.array_equal(principal_submatrix(np.array([[1, 2], [2, 3]]), [1]), [[3]])


@pytest.mark.parametrize("keep", [[], [0, 5], [1, 1], [-1]])
def test_principal_submatrix_invalid(keep):
    with pytest.raises(InvalidArgumentError):
        principal_submatrix(np.eye(3), keep)


def test_principal_submatrix_interlaces():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((5, 5))
    sym = (a + a.T) / 2
    alpha = symmetric_eigenvalues(sym).values
    beta = symmetric_eigenvalues(principal_submatrix(sym, [0, 1, 2, 3])).values
    for k in range(4):
        assert alpha[k + 1] - 1e-12 <= beta[k] <= alpha[k] + 1e-12


def test_permutation_preserves_spectrum(ops):
    perm = np.random.default_rng(5).permutation(ops.n)
    relabelled = permute(ops, perm)
    a = symmetric_eigenvalues(ops.w_matrix).values
    b = symmetric_eigenvalues(relabelled.w_matrix).values
    assert np.max(np.abs(a - b)) < 1e-10
    assert np.array_equal(relabelled.degrees, ops.degrees[perm])


def test_permute_rejects_non_permutation(ops):
    with pytest.raises(InvalidArgumentError):
        permute(ops, np.zeros(ops.n, dtype=int))
