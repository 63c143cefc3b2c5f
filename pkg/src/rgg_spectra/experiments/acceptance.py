"""Quick numerical checks of the limiting operator and the finite graphs.

Each check returns one row: name, measured value, target and a pass flag.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from math import comb

import numpy as np

from rgg_spectra.config import kernel_config
from rgg_spectra.eigen.solver import symmetric_eigenvalues
from rgg_spectra.experiments.interlacing import random_principal_interlacing
from rgg_spectra.geometry.sampling import sample_uniform_cube
from rgg_spectra.graph.operators import build_graph_operators
from rgg_spectra.kernel.constants import hs_norm_squared_K1, rayleigh_lower_bound_r_lt_1
from rgg_spectra.kernel.nystrom import convergence_check, nystrom_spectrum
from rgg_spectra.kernel.tensor import multiplicity_counts, tensor_spectrum
from rgg_spectra.ordering.grid import coordinate_sort
from rgg_spectra.ordering.step_kernel import step_w_matrix

logger = logging.getLogger(__name__)

HS_CONSTANT = 1.33299
TAIL_SQUARES = 0.0829


def _row(check: str, value: float, target: str, passed: bool) -> dict:
    return {"check": check, "value": float(value), "target": target, "pass": bool(passed)}


def check_complete_graph(seed: int, mquad: int) -> list[dict]:
    # r=1.99 leaves a gap of width 0.01 at the corners; redraw until every pair connects
    for attempt in range(20):
        ops = build_graph_operators(sample_uniform_cube(50, 1, seed + attempt), 1.99)
        if ops.adjacency.all():
            break
        logger.info("[verify] seed %d: graph not complete, redrawing", seed + attempt)
    values = symmetric_eigenvalues(ops.w_matrix).values
    target = np.zeros(50)
    target[0] = 1.0
    err = float(np.max(np.abs(values - target)))
    return [_row("complete-graph", err, "<= 1e-8", err <= 1e-8)]


def check_limit_spectrum(seed: int, mquad: int) -> list[dict]:
    values = nystrom_spectrum(1.0, mquad).values
    tail = values[2:]
    refinement = convergence_check(1.0, ms=[max(mquad // 4, 1), max(mquad // 2, 1), mquad])
    return [
        _row(
            "limit-drift",
            refinement.drift,
            f"< {refinement.tolerance:g}",
            refinement.converged,
        ),
        _row("limit-lambda-1", values[0], "1 +- 1e-3", abs(values[0] - 1.0) <= 1e-3),
        _row("limit-lambda-2", values[1], "0.5 +- 1e-3", abs(values[1] - 0.5) <= 1e-3),
        _row(
            "limit-tail-squares",
            np.sum(tail**2),
            f"{TAIL_SQUARES} +- 5e-3",
            abs(np.sum(tail**2) - TAIL_SQUARES) <= 5e-3,
        ),
        _row("limit-tail-max", np.max(np.abs(tail)), "< 0.3", np.max(np.abs(tail)) < 0.3),
    ]


def check_hs_constant(seed: int, mquad: int) -> list[dict]:
    hs = hs_norm_squared_K1()
    frobenius = float(np.sum(nystrom_spectrum(1.0, mquad).values ** 2))
    return [
        _row("hs-constant", hs, f"{HS_CONSTANT} +- 1e-4", abs(hs - HS_CONSTANT) <= 1e-4),
        _row("hs-vs-nystrom", abs(hs - frobenius), "<= 2e-3", abs(hs - frobenius) <= 2e-3),
    ]


def check_tensor_multiplicities(seed: int, mquad: int) -> list[dict]:
    spec = nystrom_spectrum(1.0, mquad)
    rows = []
    for d in (2, 3):
        counts = multiplicity_counts(tensor_spectrum(spec, d=d, top_k=64).values, d, 5e-3)
        expected = [comb(d, k) for k in range(d + 1)]
        ok = all(c >= e for c, e in zip(counts, expected, strict=True))
        rows.append(_row(f"tensor-d{d}", min(counts), f"counts >= {expected}", ok))
    return rows


def check_kernel_regimes(seed: int, mquad: int) -> list[dict]:
    rows = []
    for r in (1.1, 1.5, 1.9):
        rest = float(np.max(np.abs(nystrom_spectrum(r, mquad).values[1:])))
        rows.append(_row(f"dense-r{r:g}", rest, "non-top |lambda| < 0.5", rest < 0.5))
    for r in (0.3, 0.5, 0.7, 0.9):
        lam2 = nystrom_spectrum(r, mquad)[1]
        rows.append(_row(f"sparse-r{r:g}", lam2, "0.5 < lambda_2 < 1", 0.5 < lam2 < 1.0))
    return rows


def check_rayleigh_witness(seed: int, mquad: int) -> list[dict]:
    rows = []
    for k in range(1, 10):
        r = round(0.1 * k, 1)
        q = rayleigh_lower_bound_r_lt_1(r, m=kernel_config.rayleigh_m)
        rows.append(_row(f"witness-r{r:g}", q, "> 0.5", q > 0.5))
    return rows


def check_step_equality(seed: int, mquad: int) -> list[dict]:
    rows = []
    for n, d, m in ((200, 1, 200), (225, 2, 15)):
        cloud = sample_uniform_cube(n, d, seed)
        step = step_w_matrix(coordinate_sort(cloud, m), 1.0)
        a = symmetric_eigenvalues(step.matrix_form).values
        b = symmetric_eigenvalues(build_graph_operators(cloud, 1.0).w_matrix).values
        err = float(np.max(np.abs(a - b)))
        rows.append(_row(f"step-equality-d{d}", err, "<= 1e-10", err <= 1e-10))
    return rows


def check_interlacing(seed: int, mquad: int) -> list[dict]:
    w = build_graph_operators(sample_uniform_cube(200, 1, seed), 1.0).w_matrix
    rng = np.random.default_rng(seed)
    worst = 0.0
    for instance in range(20):
        keep = int(rng.integers(1, 200))
        worst = max(worst, random_principal_interlacing(w, keep, seed + instance)[1])
    return [_row("raw-interlacing", worst, "<= 1e-9", worst <= 1e-9)]


def check_anisotropic(seed: int, mquad: int) -> list[dict]:
    sparse = tensor_spectrum([nystrom_spectrum(0.5, mquad), nystrom_spectrum(1.5, mquad)], top_k=4)
    dense = tensor_spectrum([nystrom_spectrum(1.2, mquad), nystrom_spectrum(1.5, mquad)], top_k=50)
    rest = float(np.max(np.abs(dense.values[1:])))
    return [
        _row("anisotropic-sparse", sparse[1], "lambda_2 > 0.5", sparse[1] > 0.5),
        _row("anisotropic-dense", rest, "non-top |lambda| < 0.5", rest < 0.5),
    ]


CHECKS: dict[str, Callable[[int, int], list[dict]]] = {
    "complete-graph": check_complete_graph,
    "limit-spectrum": check_limit_spectrum,
    "hs-constant": check_hs_constant,
    "tensor": check_tensor_multiplicities,
    "kernel-regimes": check_kernel_regimes,
    "witness": check_rayleigh_witness,
    "step-equality": check_step_equality,
    "interlacing": check_interlacing,
    "anisotropic": check_anisotropic,
}


def run_checks(names: list[str] | None, seed: int, mquad: int | None = None) -> list[dict]:
    mquad = kernel_config.mquad if mquad is None else mquad
    rows = []
    for name in names or list(CHECKS):
        logger.info("[verify] %s", name)
        rows.extend(CHECKS[name](seed, mquad))
    return rows
