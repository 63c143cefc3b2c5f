"""Thread-pool fan-out over independent trials."""

from __future__ import annotations

from collections.abc import Callable, Iterable
from typing import TypeVar

from joblib import Parallel, delayed

from rgg_spectra.config import run_config

T = TypeVar("T")
R = TypeVar("R")


def map_trials(fn: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> list[R]:
    """Apply ``fn`` to every item; results come back in submission order.

    NumPy and LAPACK release the GIL, so threads are enough here.
    """
    items = list(items)
    n_jobs = min(run_config.resolved_threads(threads), max(len(items), 1))
    if n_jobs == 1:
        return [fn(item) for item in items]
    return Parallel(n_jobs=n_jobs, prefer="threads")(delayed(fn)(item) for item in items)
