"""Tests for the analytic constants of the 1-D limiting operator."""

import numpy as np
import pytest

from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.kernel.constants import (
    hs_norm_squared_2d,
    hs_norm_squared_K1,
    rayleigh_lower_bound_r_lt_1,
    witness_integrals,
)
from rgg_spectra.kernel.kernels import KernelSpec
from rgg_spectra.kernel.nystrom import NystromGrid, nystrom_matrix, nystrom_spectrum

# ---------------------------------------------------------------------------
# Hilbert-Schmidt norm
# ---------------------------------------------------------------------------


def test_hs_constant():
    assert hs_norm_squared_K1() == pytest.approx(1.33299, abs=1e-4)


def test_hs_constant_two_dimensional_quadrature():
    assert hs_norm_squared_2d(4000) == pytest.approx(hs_norm_squared_K1(), abs=2e-3)


def test_hs_constant_matches_nystrom_frobenius():
    mat = nystrom_matrix(KernelSpec.one_dimensional(1.0), NystromGrid(2000))
    assert np.sum(mat * mat) == pytest.approx(hs_norm_squared_K1(), abs=2e-3)


def test_hs_constant_matches_eigenvalue_squares():
    values = nystrom_spectrum(1.0, 2000).values
    assert np.sum(values**2) == pytest.approx(hs_norm_squared_K1(), abs=2e-3)


# ---------------------------------------------------------------------------
# Rayleigh witness
# ---------------------------------------------------------------------------


def test_witness_at_half_radius():
    kff, ff = witness_integrals(0.5)
    assert kff == pytest.approx(0.1054688, abs=1e-6)
    assert ff == pytest.approx(0.1223958, abs=1e-6)
    assert rayleigh_lower_bound_r_lt_1(0.5) == pytest.approx(0.8617, abs=1e-3)


def test_witness_at_unit_radius_is_exactly_half():
    kff, ff = witness_integrals(1.0)
    assert kff == pytest.approx(5 / 48, abs=1e-10)
    assert ff == pytest.approx(5 / 24, abs=1e-10)


@pytest.mark.parametrize("r", [round(0.1 * k, 1) for k in range(1, 10)])
def test_quotient_exceeds_half(r):
    assert rayleigh_lower_bound_r_lt_1(r, m=4000) > 0.5


def test_quotient_tends_to_half():
    value = rayleigh_lower_bound_r_lt_1(0.999, m=4000)
    assert 0.5 < value < 0.51


@pytest.mark.parametrize("r", [0.2, 0.5, 0.8])
def test_midpoint_matches_adaptive(r):
    assert rayleigh_lower_bound_r_lt_1(r, m=4000) == pytest.approx(
        rayleigh_lower_bound_r_lt_1(r), abs=1e-6
    )


def test_quotient_bounds_second_nystrom_eigenvalue():
    assert nystrom_spectrum(0.5, 2000)[1] >= rayleigh_lower_bound_r_lt_1(0.5) - 1e-4


@pytest.mark.parametrize("r", [0.0, 1.0, 1.5])
def test_quotient_rejects_radius(r):
    with pytest.raises(InvalidArgumentError):
        rayleigh_lower_bound_r_lt_1(r)
