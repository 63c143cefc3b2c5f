"""Step-kernel convergence sweeps: sup_H, L1 distance and good-set statistics per n."""

from __future__ import annotations

import logging

import pandas as pd

from rgg_spectra.config import experiment_config
from rgg_spectra.geometry.metric import RadiusLike
from rgg_spectra.geometry.sampling import PointCloud, Radius, sample_uniform_cube, trial_seed
from rgg_spectra.ordering.goodset import goodset_classification
from rgg_spectra.ordering.grid import coordinate_sort, side_count
from rgg_spectra.ordering.step_kernel import l1_kernel_distance, step_w_matrix, sup_H_distance
from rgg_spectra.parallel import map_trials

logger = logging.getLogger(__name__)

COLUMNS = ["seed", "d", "r", "n", "sup_H", "l1_dist", "boundary_fraction", "bound", "violations"]


def convergence_row(
    cloud: PointCloud,
    m: int,
    r: RadiusLike,
    eps: float | None = None,
    sub: int | None = None,
) -> dict:
    eps = experiment_config.goodset_eps if eps is None else eps
    radius = Radius.coerce(r)
    grid = coordinate_sort(cloud, m)
    step = step_w_matrix(grid, radius)
    goodset = goodset_classification(grid, radius, eps)
    return {
        "seed": cloud.seed,
        "d": cloud.d,
        "r": str(radius),
        "n": cloud.n,
        "sup_H": sup_H_distance(grid, radius),
        "l1_dist": l1_kernel_distance(grid, radius, sub=sub, step=step),
        "boundary_fraction": goodset.boundary_fraction,
        "bound": goodset.bound,
        "violations": goodset.violations,
    }


def convergence_sweep(
    d: int,
    r: RadiusLike,
    ns: list[int],
    trials: int,
    seed: int,
    eps: float | None = None,
    sub: int | None = None,
    threads: int | None = None,
) -> pd.DataFrame:
    """One row per (n, trial); every n must be a perfect d-th power."""
    sides = [side_count(n, d) for n in ns]
    jobs = [(n, m, t) for n, m in zip(ns, sides, strict=True) for t in range(trials)]
    logger.info("[converge] d=%d r=%s ns=%s trials=%d", d, r, ns, trials)

    def run(job: tuple[int, int, int]) -> dict:
        n, m, t = job
        return convergence_row(sample_uniform_cube(n, d, trial_seed(seed, t)), m, r, eps, sub)

    return pd.DataFrame(map_trials(run, jobs, threads), columns=COLUMNS)


def convergence_means(frame: pd.DataFrame) -> pd.DataFrame:
    """Per-n averages of sup_H and l1_dist plus the worst violation count."""
    grouped = frame.groupby("n", sort=True)
    return pd.DataFrame(
        {
            "sup_H": grouped["sup_H"].mean(),
            "l1_dist": grouped["l1_dist"].mean(),
            "boundary_fraction": grouped["boundary_fraction"].max(),
            "violations": grouped["violations"].max(),
        }
    ).reset_index()
