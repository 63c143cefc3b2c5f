"""Tests for kernel values."""

import numpy as np
import pytest

from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.geometry.sampling import Radius
from rgg_spectra.kernel.kernels import KernelSpec, kernel_value


@pytest.fixture
def k1():
    return KernelSpec.one_dimensional(1.0)


def test_examples(k1):
    assert kernel_value(k1, 0.0, 0.0) == pytest.approx(1.0)
    assert kernel_value(k1, 1.0, 1.0) == pytest.approx(2.0)
    assert kernel_value(k1, -1.0, 1.0) == 0.0


def test_symmetric_and_bounded():
    rng = np.random.default_rng(0)
    for r in (0.3, 1.0, 1.6):
        spec = KernelSpec(d=2, radius=Radius(r))
        for _ in range(200):
            x, y = 2 * rng.random((2, 2)) - 1
            v = kernel_value(spec, x, y)
            assert v == kernel_value(spec, y, x)
            assert 0.0 <= v <= spec.bound + 1e-12


def test_product_form():
    spec = KernelSpec(d=2, radius=Radius((0.6, 1.4)))
    x, y = np.array([0.2, -0.7]), np.array([0.5, 0.4])
    factors = [
        kernel_value(KernelSpec.one_dimensional(r), x[k], y[k])
        for k, r in enumerate((0.6, 1.4))
    ]
    assert kernel_value(spec, x, y) == pytest.approx(factors[0] * factors[1])


def test_auxiliary_variant_not_symmetric():
    spec = KernelSpec.one_dimensional(1.0, variant="auxiliary")
    assert kernel_value(spec, 1.0, 0.2) == pytest.approx(2.0)
    assert kernel_value(spec, 0.2, 1.0) == pytest.approx(1 / 0.9)


def test_auxiliary_needs_one_dimension():
    with pytest.raises(InvalidArgumentError):
        KernelSpec(d=2, radius=Radius(1.0), variant="auxiliary")


def test_dimension_mismatch(k1):
    with pytest.raises(InvalidArgumentError):
        kernel_value(k1, (0.0, 0.0), (0.0, 0.0))


def test_radius_vector_length_checked():
    with pytest.raises(InvalidArgumentError):
        KernelSpec(d=3, radius=Radius((0.5, 1.0)))


def test_axis_specs():
    specs = KernelSpec(d=2, radius=Radius((0.5, 1.5))).axis_specs()
    assert [s.radius.scalar for s in specs] == [0.5, 1.5]
    assert all(s.d == 1 for s in specs)
