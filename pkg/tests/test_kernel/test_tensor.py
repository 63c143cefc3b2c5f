"""Tests for product-kernel spectra."""

from math import comb

import numpy as np
import pytest

from rgg_spectra.eigen.solver import Spectrum
from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.kernel.nystrom import nystrom_spectrum
from rgg_spectra.kernel.tensor import (
    exhaustive_tensor_spectrum,
    multiplicity_counts,
    tensor_spectrum,
)


def _spec(*values):
    return Spectrum.from_unsorted(np.array(values, dtype=float))


@pytest.fixture(scope="module")
def spectrum_r1():
    return nystrom_spectrum(1.0, 2000)


# ---------------------------------------------------------------------------
# small exact cases
# ---------------------------------------------------------------------------


def test_two_values_squared():
    result = tensor_spectrum(_spec(1.0, 0.5), d=2, top_k=4)
    assert np.allclose(result.values, [1.0, 0.5, 0.5, 0.25])


def test_single_value_cubed():
    assert list(tensor_spectrum(_spec(1.0), d=3, top_k=1).values) == [1.0]


def test_negative_values_sorted_by_value():
    result = tensor_spectrum(_spec(1.0, -0.6, 0.3), d=2, top_k=4)
    # magnitudes 1, .6, .6, .36 -> values sorted descending
    assert np.allclose(result.values, [1.0, 0.36, -0.6, -0.6])


def test_truncation_drops_small_values():
    result = tensor_spectrum(_spec(1.0, 0.5, 1e-6), d=2, top_k=4, truncation=1e-4)
    assert np.allclose(result.values, [1.0, 0.5, 0.5, 0.25])
    with pytest.raises(InvalidArgumentError):
        tensor_spectrum(_spec(1.0, 0.5, 1e-6), d=2, top_k=5, truncation=1e-4)


def test_anisotropic_factors():
    result = tensor_spectrum([_spec(1.0, 0.8), _spec(1.0, 0.3)], top_k=4)
    assert np.allclose(result.values, [1.0, 0.8, 0.3, 0.24])


def test_invalid_arguments():
    with pytest.raises(InvalidArgumentError):
        tensor_spectrum(_spec(1.0), top_k=1)
    with pytest.raises(InvalidArgumentError):
        tensor_spectrum([_spec(1.0), _spec(1.0)], d=3, top_k=1)
    with pytest.raises(InvalidArgumentError):
        tensor_spectrum(_spec(1.0, 0.5), d=2, top_k=0)


def test_heap_matches_exhaustive():
    rng = np.random.default_rng(7)
    spec = Spectrum.from_unsorted(rng.uniform(-1, 1, 12))
    for d in (1, 2, 3):
        for top_k in (1, 5, 10):
            fast = tensor_spectrum(spec, d=d, top_k=top_k, truncation=0.0)
            slow = exhaustive_tensor_spectrum(spec, d=d, top_k=top_k)
            assert np.allclose(fast.values, slow.values)


# ---------------------------------------------------------------------------
# r = 1 limiting operator
# ---------------------------------------------------------------------------


def test_heap_matches_exhaustive_on_nystrom(spectrum_r1):
    head = Spectrum(values=spectrum_r1.values[:50])
    fast = tensor_spectrum(head, d=3, top_k=8, truncation=0.0)
    slow = exhaustive_tensor_spectrum(head, d=3, top_k=8)
    assert np.allclose(fast.values, slow.values)


@pytest.mark.parametrize("d", [2, 3])
def test_leading_products(spectrum_r1, d):
    result = tensor_spectrum(spectrum_r1, d=d, top_k=1 + d)
    assert np.allclose(result.values, [1.0] + [0.5] * d, atol=5e-3)


@pytest.mark.parametrize("d", [2, 3])
def test_binomial_multiplicities(spectrum_r1, d):
    result = tensor_spectrum(spectrum_r1, d=d, top_k=64)
    counts = multiplicity_counts(result.values, d, delta=5e-3)
    for k in range(d + 1):
        assert counts[k] >= comb(d, k)


def test_anisotropic_sparse_axis_lifts_second_eigenvalue():
    result = tensor_spectrum([nystrom_spectrum(0.5, 2000), nystrom_spectrum(1.5, 2000)], top_k=4)
    assert result[0] == pytest.approx(1.0, abs=1e-3)
    assert result[1] > 0.5


def test_anisotropic_dense_axes_keep_gap():
    result = tensor_spectrum([nystrom_spectrum(1.2, 2000), nystrom_spectrum(1.5, 2000)], top_k=50)
    assert result[0] == pytest.approx(1.0, abs=1e-3)
    assert np.all(np.abs(result.values[1:]) < 0.5)


def test_multiplicity_counts():
    assert multiplicity_counts(np.array([1.0, 0.51, 0.49, 0.26, 0.1]), 2, 0.05) == [1, 2, 1]
