"""Configuration via pydantic-settings (reads from .env or environment variables)."""

from __future__ import annotations

import os
from pathlib import Path
from typing import ClassVar, Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Project root = two levels up from this file (src/rgg_spectra/config.py)
_ROOT = Path(__file__).parent.parent.parent


class RunConfig(BaseSettings):
    """Execution parameters shared by every command."""

    model_config: ClassVar[SettingsConfigDict] = SettingsConfigDict(
        env_file=_ROOT / ".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # <= 0 means "all available cores"
    threads: int = Field(default=0, alias="RGG_SPECTRA_THREADS")
    tol: float = Field(default=1e-10, alias="RGG_SPECTRA_TOL")
    seed: int = Field(default=1, alias="RGG_SPECTRA_SEED")

    def resolved_threads(self, override: int | None = None) -> int:
        """Worker count: explicit override, then env/config, then core count."""
        n = override if override is not None and override > 0 else self.threads
        if n <= 0:
            n = os.cpu_count() or 1
        return n


class KernelConfig(BaseSettings):
    """Limiting-operator discretization parameters."""

    model_config: ClassVar[SettingsConfigDict] = SettingsConfigDict(
        env_file=_ROOT / ".env",
        env_file_encoding="utf-8",
        extra="ignore",
        env_prefix="KERNEL_",
    )

    mquad: int = 2000
    truncation: float = 1e-4  # 1-D eigenvalues kept for tensor products
    delta: float = 0.05  # half-width of the 2^-k multiplicity windows
    quadrature: Literal["midpoint", "cell_average"] = "midpoint"
    convergence_ms: list[int] = Field(default=[500, 1000, 2000])
    convergence_drift: float = 1e-3
    rayleigh_m: int = 4000
    hs_abs_tol: float = 1e-10


class ExperimentConfig(BaseSettings):
    """Desk-scale defaults for the sampled-graph experiments."""

    model_config: ClassVar[SettingsConfigDict] = SettingsConfigDict(
        env_file=_ROOT / ".env",
        env_file_encoding="utf-8",
        extra="ignore",
        env_prefix="RGG_",
    )

    d1_n: int = 2000
    d2_m: int = 45
    d3_m: int = 12
    eigen_trials: int = 5
    cheap_trials: int = 50
    l1_sub: int = 2
    goodset_eps: float = 0.1
    gap_window: tuple[float, float] = (0.45, 0.55)
    # Chunk of rows processed at once by the O(n^2) cell-pair loops
    pair_chunk: int = 256

    def default_n(self, d: int) -> int:
        """Desk-scale vertex count for dimension d (a perfect d-th power for d = 2, 3)."""
        if d == 2:
            return self.d2_m**2
        if d == 3:
            return self.d3_m**3
        return self.d1_n


# Singleton instances (import these in application code)
run_config = RunConfig()
kernel_config = KernelConfig()
experiment_config = ExperimentConfig()
