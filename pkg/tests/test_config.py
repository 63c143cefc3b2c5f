"""Tests for the settings singletons."""

from rgg_spectra.config import ExperimentConfig, KernelConfig


def test_default_sizes_per_dimension():
    cfg = ExperimentConfig(d2_m=45, d3_m=12, d1_n=2000)
    assert cfg.default_n(1) == 2000
    assert cfg.default_n(2) == 2025
    assert cfg.default_n(3) == 1728
    assert cfg.default_n(4) == 2000


def test_nystrom_defaults():
    cfg = KernelConfig()
    assert cfg.quadrature == "midpoint"
    assert cfg.convergence_ms == [500, 1000, 2000]
    assert cfg.convergence_drift == 1e-3
