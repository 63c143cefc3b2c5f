"""Tests for step kernels, H_{n,r} and the L1 distance to the limiting kernel."""

import numpy as np
import pytest

from rgg_spectra.eigen.solver import symmetric_eigenvalues
from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.geometry.sampling import PointCloud, sample_uniform_cube
from rgg_spectra.graph.operators import build_graph_operators
from rgg_spectra.ordering.grid import coordinate_sort
from rgg_spectra.ordering.step_kernel import (
    empirical_H,
    l1_kernel_distance,
    sorting_permutation,
    step_w_matrix,
    sup_H_distance,
)


def _grid(n, d, m, seed):
    return coordinate_sort(sample_uniform_cube(n, d, seed=seed), m)


# ---------------------------------------------------------------------------
# step_w_matrix
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("d,m,r", [(1, 300, 1.0), (2, 15, 0.8), (3, 6, 1.3)])
def test_spectrum_equals_graph_spectrum(d, m, r):
    grid = _grid(m**d, d, m, seed=m)
    step = step_w_matrix(grid, r)
    graph = build_graph_operators(grid.cloud, r)
    a = symmetric_eigenvalues(step.matrix_form).values
    b = symmetric_eigenvalues(graph.w_matrix).values
    assert np.max(np.abs(a - b)) <= 1e-10


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(1, 11))
@pytest.mark.parametrize("d,m", [(1, 1000), (2, 30)])
def test_spectrum_equality_desk_scale(d, m, seed):
    grid = _grid(m**d, d, m, seed=seed)
    a = symmetric_eigenvalues(step_w_matrix(grid, 1.0).matrix_form).values
    b = symmetric_eigenvalues(build_graph_operators(grid.cloud, 1.0).w_matrix).values
    assert np.max(np.abs(a - b)) <= 1e-10


def test_matrix_is_permuted_w():
    grid = _grid(64, 2, 8, seed=2)
    step = step_w_matrix(grid, 0.9)
    perm = sorting_permutation(grid)
    w = build_graph_operators(grid.cloud, 0.9).w_matrix
    assert np.array_equal(step.matrix_form, w[np.ix_(perm, perm)])


def test_complete_pair():
    grid = coordinate_sort(PointCloud(points=np.array([[0.3], [-0.2]])), 2)
    step = step_w_matrix(grid, 1.0)
    assert np.allclose(step.matrix_form, 0.5)
    assert step.value(0, 1) == pytest.approx(1.0)


def test_near_complete_is_uniform():
    grid = _grid(30, 1, 30, seed=4)
    step = step_w_matrix(grid, 2 - 1e-9)
    assert np.allclose(step.matrix_form, 1 / 30)


# ---------------------------------------------------------------------------
# H_{n,r}
# ---------------------------------------------------------------------------


def test_empirical_h_range():
    values = empirical_H(_grid(100, 2, 10, seed=1), 0.7)
    assert np.all((values > 0) & (values <= 1))


def test_sup_h_small_for_large_n():
    assert sup_H_distance(_grid(4000, 1, 4000, seed=1), 1.0) <= 0.1


def test_sup_h_decreases_with_n():
    def mean_sup(n):
        return np.mean([sup_H_distance(_grid(n, 1, n, seed=s), 1.0) for s in range(10)])

    assert mean_sup(4000) < mean_sup(250)


def test_sup_h_single_cell():
    grid = coordinate_sort(PointCloud(points=np.array([[0.2]])), 1)
    assert sup_H_distance(grid, 0.6) == pytest.approx(1 - 0.3)
    assert sup_H_distance(grid, 0.6) <= 1.0


def test_sup_h_anisotropic_runs():
    value = sup_H_distance(_grid(400, 2, 20, seed=3), (0.5, 1.5))
    assert 0.0 <= value <= 1.0


# ---------------------------------------------------------------------------
# l1_kernel_distance
# ---------------------------------------------------------------------------


def test_l1_distance_bounded_at_moderate_n():
    value = l1_kernel_distance(_grid(2000, 1, 2000, seed=1), 1.0, sub=2)
    assert 0.0 < value <= 0.2


def test_l1_distance_decreases_with_n():
    def mean_l1(n):
        return np.mean([l1_kernel_distance(_grid(n, 1, n, seed=s), 1.0) for s in range(5)])

    assert mean_l1(2000) < mean_l1(125)


def test_l1_distance_near_complete_graph():
    pts = np.array([[-0.9], [-0.3], [0.3], [0.9]])
    grid = coordinate_sort(PointCloud(points=pts), 4)
    assert l1_kernel_distance(grid, 1.99, sub=4) <= 0.05


def test_l1_distance_two_dimensions():
    value = l1_kernel_distance(_grid(400, 2, 20, seed=2), 1.0, sub=1)
    assert 0.0 < value < 1.0


def test_l1_rejects_bad_sub():
    with pytest.raises(InvalidArgumentError):
        l1_kernel_distance(_grid(4, 1, 4, seed=1), 1.0, sub=0)
