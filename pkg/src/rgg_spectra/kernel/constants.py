"""Analytic constants of the 1-D limiting operator."""

from __future__ import annotations

import math

import numpy as np
import scipy.integrate

from rgg_spectra.config import kernel_config
from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.kernel.degree import H_r_vector
from rgg_spectra.kernel.nystrom import NystromGrid, indicator_profile


def hs_norm_squared_K1(abs_tol: float | None = None) -> float:
    """||K_1^1||_HS^2 = 4 log(2)^2 - 2 int_0^1 log(1 + x) / (2 - x) dx  (about 1.33299)."""
    abs_tol = kernel_config.hs_abs_tol if abs_tol is None else abs_tol
    integral, _ = scipy.integrate.quad(
        lambda x: math.log1p(x) / (2.0 - x), 0.0, 1.0, epsabs=abs_tol, epsrel=0.0, limit=200
    )
    return 4.0 * math.log(2.0) ** 2 - 2.0 * integral


def hs_norm_squared_2d(m: int = 4000) -> float:
    """Same constant by 2-D quadrature of K_1^1(x, y)^2 on an m x m cell grid.

    h^2 = h, so each cell contributes its exact indicator area times 1 / (H(x_i) H(x_j)).
    """
    grid = NystromGrid(m)
    profile = indicator_profile(1.0, m, "cell_average")
    g = 1.0 / H_r_vector(grid.nodes, 1.0)
    # (T g)_i = sum_j profile[|i - j|] g_j as a full convolution
    kernel = np.concatenate([profile[:0:-1], profile])
    tg = np.convolve(g, kernel, mode="full")[m - 1 : 2 * m - 1]
    return float(g @ tg) / m**2


def _inner_integral(x: np.ndarray, r: float) -> np.ndarray:
    """int y dy over [x - r, x + r] intersected with [-1, 1]."""
    a = np.maximum(-1.0, x - r)
    b = np.minimum(1.0, x + r)
    return (b * b - a * a) / 2.0


def witness_integrals(r: float, m: int | None = None) -> tuple[float, float]:
    """(<K f, f>, <f, f>) for the odd witness f(x) = x sqrt(H_r(x)).

    <K f, f> = 1/4 int int x y h_r(x, y) dx dy and <f, f> = 1/2 int x^2 H_r(x) dx.
    The inner integral is closed-form; the outer one uses m midpoint nodes, or
    adaptive quadrature when m is None.
    """
    if not 0.0 < r < 2.0:
        raise InvalidArgumentError(f"r must lie in (0, 2), got {r}")

    def kff_integrand(x):
        return x * _inner_integral(np.asarray(x, dtype=float), r)

    def ff_integrand(x):
        return x * x * H_r_vector(np.asarray(x, dtype=float), r)

    if m is None:
        kinks = sorted({-abs(1.0 - r), abs(1.0 - r)})
        kff, _ = scipy.integrate.quad(kff_integrand, -1.0, 1.0, points=kinks, epsabs=1e-13)
        ff, _ = scipy.integrate.quad(ff_integrand, -1.0, 1.0, points=kinks, epsabs=1e-13)
    else:
        nodes = NystromGrid(m).nodes
        kff = float(np.sum(kff_integrand(nodes))) * 2.0 / m
        ff = float(np.sum(ff_integrand(nodes))) * 2.0 / m
    return kff / 4.0, ff / 2.0


def rayleigh_lower_bound_r_lt_1(r: float, m: int | None = None) -> float:
    """<K f, f> / <f, f> for f = x sqrt(H_r); exceeds 1/2 for every r in (0, 1)."""
    if not 0.0 < r < 1.0:
        raise InvalidArgumentError(f"r must lie in (0, 1), got {r}")
    kff, ff = witness_integrals(r, m=m)
    return kff / ff
