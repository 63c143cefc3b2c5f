"""Limiting kernels K_r^d(x, y) = h_r(x, y) / sqrt(H_r(x) H_r(y)) and K'_r(x, y) = h_r / H_r(x)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from rgg_spectra.errors import InvalidArgumentError
from rgg_spectra.geometry.metric import RadiusLike, indicator_h
from rgg_spectra.geometry.sampling import Radius
from rgg_spectra.kernel.degree import H_r_multidim

Variant = Literal["normalized", "auxiliary"]


@dataclass(frozen=True)
class KernelSpec:
    """Dimension, radius (scalar or per-axis) and kernel variant."""

    d: int
    radius: Radius
    variant: Variant = "normalized"

    def __post_init__(self) -> None:
        if self.d < 1:
            raise InvalidArgumentError(f"d must be >= 1, got {self.d}")
        object.__setattr__(self, "radius", Radius.coerce(self.radius))
        self.radius.per_axis(self.d)
        if self.variant not in ("normalized", "auxiliary"):
            raise InvalidArgumentError(f"unknown kernel variant {self.variant!r}")
        if self.variant == "auxiliary" and self.d != 1:
            raise InvalidArgumentError("the auxiliary kernel is only defined for d = 1")

    @classmethod
    def one_dimensional(cls, r: RadiusLike, variant: Variant = "normalized") -> KernelSpec:
        return cls(d=1, radius=Radius.coerce(r), variant=variant)

    def axis_specs(self) -> list[KernelSpec]:
        """The 1-D factors of the product kernel."""
        return [KernelSpec.one_dimensional(float(r)) for r in self.radius.per_axis(self.d)]

    @property
    def bound(self) -> float:
        """sup K <= prod_k 2 / r_k."""
        return float(np.prod(2.0 / self.radius.per_axis(self.d)))


def kernel_value(spec: KernelSpec, x, y) -> float:
    a = np.atleast_1d(np.asarray(x, dtype=float))
    b = np.atleast_1d(np.asarray(y, dtype=float))
    if a.shape != (spec.d,) or b.shape != (spec.d,):
        raise InvalidArgumentError(
            f"points must have dimension {spec.d}, got {a.shape} and {b.shape}"
        )
    h = indicator_h(a, b, spec.radius)
    if h == 0:
        return 0.0
    hx = H_r_multidim(a, spec.radius)
    if spec.variant == "auxiliary":
        return 1.0 / hx
    return 1.0 / float(np.sqrt(hx * H_r_multidim(b, spec.radius)))
