"""Click CLI: spectrum | kernel-spectrum | converge | gap-sweep | multiplicity | bridge | ..."""

from __future__ import annotations

import logging
import sys
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any

import click
import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, ValidationError, field_validator

from rgg_spectra.config import experiment_config, kernel_config, run_config
from rgg_spectra.errors import InvalidArgumentError, NumericalFailureError
from rgg_spectra.experiments.reports import (
    CSV_FLOAT_FORMAT,
    ExperimentReport,
    failure_payload,
    write_report,
)

# ---------------------------------------------------------------------------
# Parameter parsing
# ---------------------------------------------------------------------------


class FloatListParam(click.ParamType):
    """``a:b:step`` (inclusive) or a comma-separated list of floats."""

    name = "floats"

    def convert(self, value: Any, param, ctx) -> list[float]:
        if isinstance(value, list):
            return value
        text = str(value).strip()
        try:
            if ":" in text:
                start, stop, step = (float(part) for part in text.split(":"))
                if step <= 0 or stop < start:
                    self.fail(f"bad range {text!r}: need start <= stop and step > 0", param, ctx)
                count = int(np.floor((stop - start) / step + 1e-9)) + 1
                return [round(start + i * step, 12) for i in range(count)]
            return [float(part) for part in text.split(",") if part.strip()]
        except ValueError:
            self.fail(f"{text!r} is not a float, list or a:b:step range", param, ctx)


class IntListParam(click.ParamType):
    """Comma-separated list of integers."""

    name = "ints"

    def convert(self, value: Any, param, ctx) -> list[int]:
        if isinstance(value, list):
            return value
        try:
            return [int(part) for part in str(value).split(",") if part.strip()]
        except ValueError:
            self.fail(f"{value!r} is not a comma-separated list of integers", param, ctx)


FLOATS = FloatListParam()
INTS = IntListParam()


class CommandConfig(BaseModel):
    """Validated command parameters; every field feeds a library precondition."""

    command: str
    d: int = Field(default=1, ge=1)
    n: list[int] = Field(default_factory=list)
    r: list[float] = Field(default_factory=lambda: [1.0])
    trials: int = Field(default=1, ge=1)
    seed: int = 1
    delta: float = Field(default=kernel_config.delta, gt=0.0)
    tol: float = Field(default=run_config.tol, gt=0.0)
    threads: int | None = None
    mquad: int = Field(default=kernel_config.mquad, ge=2)
    topk: int = Field(default=8, ge=1)
    out: Path | None = None
    fmt: str = "json"

    @field_validator("n")
    @classmethod
    def _positive_sizes(cls, n: list[int]) -> list[int]:
        if any(v < 1 for v in n):
            raise ValueError("every n must be >= 1")
        return n

    @field_validator("r")
    @classmethod
    def _radius_range(cls, r: list[float]) -> list[float]:
        if not r:
            raise ValueError("at least one radius is required")
        bad = [v for v in r if not 0.0 < v < 2.0]
        if bad:
            raise ValueError(f"radius must lie in (0, 2), got {bad}")
        return r

    def radius(self) -> float | tuple[float, ...]:
        """One isotropic radius, or one radius per axis."""
        if len(self.r) == 1:
            return self.r[0]
        if len(self.r) != self.d:
            raise InvalidArgumentError(f"got {len(self.r)} radii for d = {self.d}")
        return tuple(self.r)

    def params(self) -> dict[str, Any]:
        return self.model_dump(mode="json", exclude={"command", "out", "fmt", "threads"})


def _config(command: str, **kwargs: Any) -> CommandConfig:
    try:
        return CommandConfig(command=command, **kwargs)
    except ValidationError as exc:
        messages = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()
        )
        raise click.UsageError(messages) from exc


@contextmanager
def _library_errors() -> Iterator[None]:
    """Invalid arguments become usage errors (exit 2); numerical failures exit 1."""
    try:
        yield
    except InvalidArgumentError as exc:
        raise click.UsageError(str(exc)) from exc
    except NumericalFailureError as exc:
        click.echo(f"Eigensolver failed: {exc}", err=True)
        sys.exit(1)


def _emit(
    report: ExperimentReport,
    cfg: CommandConfig,
    frame: pd.DataFrame | None,
    check: bool,
    table: pd.DataFrame | None = None,
) -> None:
    """Write the report (file or stdout), then exit 1 if requested assertions failed.

    With --out, ``table`` is also printed as a console summary.
    """
    if cfg.out is not None:
        path = write_report(report, cfg.out, cfg.fmt, frame)
        click.echo(f"Saved: {path}")
        if table is not None and not table.empty:
            click.echo(table.to_markdown(index=False))
    elif cfg.fmt == "csv":
        table = frame if frame is not None else pd.DataFrame(report.per_trial)
        click.echo(
            table.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n"),
            nl=False,
        )
    else:
        click.echo(report.to_json(), nl=False)
    if check and not report.passed:
        click.echo(failure_payload(report), err=True)
        sys.exit(1)


def _output_options(fn: Callable) -> Callable:
    fn = click.option(
        "--check/--no-check", default=False, help="Assert the expected behaviour; exit 1 on failure"
    )(fn)
    fn = click.option(
        "--format",
        "fmt",
        type=click.Choice(["json", "csv"]),
        default="json",
        show_default=True,
        help="Output format",
    )(fn)
    fn = click.option(
        "--out",
        "-o",
        type=click.Path(dir_okay=False),
        default=None,
        help="Output file (default: stdout)",
    )(fn)
    return fn


_seed_option = click.option("--seed", default=run_config.seed, show_default=True, type=int)
_threads_option = click.option(
    "--threads",
    type=int,
    default=None,
    help="Worker threads (default: RGG_SPECTRA_THREADS or all cores)",
)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


@click.group()
@click.option("--verbose", "-v", is_flag=True, default=False, help="Log progress to stderr")
def cli(verbose: bool) -> None:
    """Spectra of dense random geometric graphs on the cube [-1, 1]^d."""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@click.option("--d", "d", default=1, show_default=True, type=int, help="Dimension")
@click.option("--n", "n", required=True, type=int, help="Number of points")
@click.option("--r", "r", default="1.0", type=FLOATS, help="Radius, or one radius per axis")
@_seed_option
@click.option("--tol", default=run_config.tol, show_default=True, type=float)
@_output_options
def spectrum(d, n, r, seed, tol, out, fmt, check) -> None:
    """Full W-spectrum of one sampled graph, plus gamma_2."""
    from rgg_spectra.eigen.solver import symmetric_eigenvalues
    from rgg_spectra.geometry.sampling import sample_uniform_cube
    from rgg_spectra.graph.operators import build_graph_operators

    cfg = _config("spectrum", d=d, n=[n], r=r, seed=seed, tol=tol, out=out, fmt=fmt)
    with _library_errors():
        ops = build_graph_operators(sample_uniform_cube(n, d, seed), cfg.radius())
        spec = symmetric_eigenvalues(ops.w_matrix, tol=tol)

    gamma2 = 1.0 - spec[1] if spec.order > 1 else None
    report = ExperimentReport(
        experiment="spectrum",
        params=cfg.params(),
        per_trial=spec.to_frame().to_dict("records"),
        summary={"lambda_1": spec[0], "lambda_n": spec[-1], "gamma_2": gamma2, "tol": spec.tol},
    )
    if abs(spec[0] - 1.0) > 1e-9:
        report.fail(f"lambda_1 = {spec[0]!r} is not 1 within 1e-9")
    if spec[-1] < -1.0 - 1e-9:
        report.fail(f"lambda_n = {spec[-1]!r} is below -1")
    _emit(report, cfg, spec.to_frame(), check)


@cli.command("kernel-spectrum")
@click.option("--d", "d", default=1, show_default=True, type=int)
@click.option("--r", "r", default="1.0", type=FLOATS, help="Radius, or one radius per axis")
@click.option("--mquad", default=kernel_config.mquad, show_default=True, type=int)
@click.option("--topk", default=8, show_default=True, type=int)
@_output_options
def kernel_spectrum(d, r, mquad, topk, out, fmt, check) -> None:
    """Limiting-operator spectrum (Nyström + tensor products) and its constants."""
    from rgg_spectra.kernel.constants import hs_norm_squared_K1, rayleigh_lower_bound_r_lt_1
    from rgg_spectra.kernel.nystrom import convergence_check, nystrom_spectrum
    from rgg_spectra.kernel.tensor import tensor_spectrum

    cfg = _config("kernel-spectrum", d=d, r=r, mquad=mquad, topk=topk, out=out, fmt=fmt)
    with _library_errors():
        radius = cfg.radius()
        radii = [radius] * d if isinstance(radius, float) else list(radius)
        factors = [nystrom_spectrum(rk, mquad) for rk in radii]
        top = tensor_spectrum(factors, top_k=topk)
        coarse = max(mquad // 2, 1)
        refinements = [convergence_check(rk, ms=[coarse, mquad]) for rk in sorted(set(radii))]

    summary: dict[str, Any] = {
        "top": top.values.tolist(),
        "lambda_2_1d": [f[1] for f in factors],
        "drift": max(c.drift for c in refinements),
        "converged": all(c.converged for c in refinements),
    }
    if all(rk == 1.0 for rk in radii):
        summary["hs_norm_squared"] = hs_norm_squared_K1()
    sparse_axes = sorted({rk for rk in radii if rk < 1.0})
    if sparse_axes:
        summary["rayleigh_lower_bound"] = {
            f"{rk:g}": rayleigh_lower_bound_r_lt_1(rk, kernel_config.rayleigh_m)
            for rk in sparse_axes
        }

    report = ExperimentReport(
        experiment="kernel-spectrum",
        params=cfg.params(),
        per_trial=top.to_frame().to_dict("records"),
        summary=summary,
    )
    if top.order > 1:
        if sparse_axes and not top[1] > 0.5:
            report.fail(f"lambda_2 = {top[1]!r} should exceed 1/2 with a radius below 1")
        if all(rk > 1.0 for rk in radii) and np.max(np.abs(top.values[1:])) >= 0.5:
            report.fail("a non-top eigenvalue reaches 1/2 although every radius exceeds 1")
        if all(rk == 1.0 for rk in radii) and abs(top[1] - 0.5) > 5e-3:
            report.fail(f"lambda_2 = {top[1]!r} is not 1/2 within 5e-3")
    _emit(report, cfg, top.to_frame(), check)


@cli.command()
@click.option("--d", "d", default=1, show_default=True, type=int)
@click.option("--r", "r", default="1.0", type=FLOATS, help="Radius, or one radius per axis")
@click.option("--n", "n", required=True, type=INTS, help="Comma list of perfect d-th powers")
@click.option("--trials", default=1, show_default=True, type=int)
@click.option("--eps", default=experiment_config.goodset_eps, show_default=True, type=float)
@click.option("--sub", default=experiment_config.l1_sub, show_default=True, type=int)
@_seed_option
@_threads_option
@_output_options
def converge(d, r, n, trials, eps, sub, seed, threads, out, fmt, check) -> None:
    """sup_H, L1 kernel distance and good-set statistics per (n, seed)."""
    from rgg_spectra.experiments.convergence import convergence_means, convergence_sweep

    cfg = _config("converge", d=d, r=r, n=n, trials=trials, seed=seed, out=out, fmt=fmt)
    with _library_errors():
        frame = convergence_sweep(
            d, cfg.radius(), n, trials, seed, eps=eps, sub=sub, threads=threads
        )
    means = convergence_means(frame)

    params = cfg.params() | {"eps": eps, "sub": sub}
    report = ExperimentReport(
        experiment="converge",
        params=params,
        per_trial=frame.to_dict("records"),
        summary={"means": means.to_dict("records")},
    )
    if len(means) > 1:
        for column in ("sup_H", "l1_dist"):
            if not means[column].is_monotonic_decreasing:
                report.fail(f"mean {column} does not decrease along n")
    _emit(report, cfg, frame, check, table=means)


@cli.command("gap-sweep")
@click.option("--d", "d", default=1, show_default=True, type=int)
@click.option("--n", "n", default=None, type=int, help="Vertices (default: desk scale for d)")
@click.option("--r", "r", required=True, type=FLOATS, help="a:b:step range or comma list")
@click.option("--trials", default=experiment_config.eigen_trials, show_default=True, type=int)
@_seed_option
@_threads_option
@_output_options
def gap_sweep(d, n, r, trials, seed, threads, out, fmt, check) -> None:
    """gamma_2 = 1 - lambda_2 statistics for every radius."""
    n = experiment_config.default_n(d) if n is None else n
    from rgg_spectra.experiments.gap import gap_frame
    from rgg_spectra.experiments.gap import gap_sweep as run_sweep

    cfg = _config("gap-sweep", d=d, n=[n], r=r, trials=trials, seed=seed, out=out, fmt=fmt)
    with _library_errors():
        reports = run_sweep(d, n, r, trials, seed, threads=threads)

    report = ExperimentReport(
        experiment="gap-sweep",
        params=cfg.params(),
        per_trial=[rep.model_dump() for rep in reports],
        summary={"crossing_half": _half_crossing(reports)},
    )
    for rep in reports:
        if not rep.in_regime:
            report.fail(
                f"r={rep.r:g}: gamma_2 samples {rep.gamma2_samples} outside "
                f"({rep.expected_low:g}, {rep.expected_high:g})"
            )
    summary_frame = gap_frame(reports)
    _emit(report, cfg, summary_frame, check, table=summary_frame)


def _half_crossing(reports) -> float | None:
    """First swept radius whose mean gamma_2 reaches 1/2."""
    for rep in sorted(reports, key=lambda rep: rep.r):
        if rep.mean >= 0.5:
            return rep.r
    return None


@cli.command()
@click.option("--d", "d", default=1, show_default=True, type=int)
@click.option("--n", "n", default=None, type=int, help="Vertices (default: desk scale for d)")
@click.option("--delta", default=kernel_config.delta, show_default=True, type=float)
@click.option("--trials", default=experiment_config.eigen_trials, show_default=True, type=int)
@_seed_option
@_threads_option
@_output_options
def multiplicity(d, n, delta, trials, seed, threads, out, fmt, check) -> None:
    """Eigenvalue counts near 2^-k at r = 1, one row per seed."""
    n = experiment_config.default_n(d) if n is None else n
    from rgg_spectra.experiments.measure import multiplicity_trial, multiplicity_windows
    from rgg_spectra.geometry.sampling import trial_seed
    from rgg_spectra.parallel import map_trials

    cfg = _config(
        "multiplicity", d=d, n=[n], trials=trials, seed=seed, delta=delta, out=out, fmt=fmt
    )
    with _library_errors():
        multiplicity_windows(d, delta)
        rows = map_trials(
            lambda t: multiplicity_trial(n, d, trial_seed(seed, t), delta), range(trials), threads
        )

    clean = sum(row["window_violations"] == 0 for row in rows)
    report = ExperimentReport(
        experiment="multiplicity",
        params=cfg.params(),
        per_trial=rows,
        summary={"window_clean_fraction": clean / trials, "required_fraction": 0.8},
    )
    # finite-size effects dominate beyond d = 2 at desk scale; counts are reported only
    if d <= 2:
        for row in rows:
            if not row["meets_lower_bounds"]:
                report.fail(
                    f"seed {row['seed']}: counts {row['counts']} "
                    f"below {row['expected_at_least']}"
                )
        if clean / trials < 0.8:
            report.fail(f"only {clean}/{trials} seeds free of eigenvalues in the gap windows")
    frame = pd.DataFrame(
        [
            {
                "seed": row["seed"],
                **{f"k{k}": c for k, c in enumerate(row["counts"])},
                "outside": row["outside"],
                "window_violations": row["window_violations"],
            }
            for row in rows
        ]
    )
    _emit(report, cfg, frame, check, table=frame)


@cli.command()
@click.option("--d", "d", default=1, show_default=True, type=int)
@click.option("--n", "n", required=True, type=int, help="Perfect d-th power")
@click.option("--trials", default=experiment_config.cheap_trials, show_default=True, type=int)
@_seed_option
@_threads_option
@_output_options
def concentrate(d, n, trials, seed, threads, out, fmt, check) -> None:
    """Deviation of the sorted points from their expected cell positions."""
    from rgg_spectra.concentration.deviation import deviation_experiment
    from rgg_spectra.concentration.order_stats import union_bound

    cfg = _config("concentrate", d=d, n=[n], trials=trials, seed=seed, out=out, fmt=fmt)
    with _library_errors():
        result = deviation_experiment(n, d, trials, seed, threads=threads)

    summary: dict[str, Any] = {
        "threshold": result.threshold,
        "pass_fraction": result.pass_fraction,
        "worst": max(result.max_deviation),
    }
    if d == 1:
        summary["union_bound"] = union_bound(n)
    report = ExperimentReport(
        experiment="concentrate",
        params=cfg.params(),
        per_trial=[
            {"trial": t, "max_deviation": dev} for t, dev in enumerate(result.max_deviation)
        ],
        summary=summary,
    )
    # the 0.95 pass rate is only asserted in one dimension
    if d == 1 and result.pass_fraction < 0.95:
        report.fail(f"pass fraction {result.pass_fraction:.3f} below 0.95")
    _emit(report, cfg, None, check)


@cli.command()
@click.option("--d", "d", default=2, show_default=True, type=int)
@click.option("--n", "n", required=True, type=int, help="Size strictly between two d-th powers")
@click.option("--r", "r", default="1.0", type=FLOATS)
@click.option("--trials", default=1, show_default=True, type=int, help="Number of seeds")
@_seed_option
@_threads_option
@_output_options
def bridge(d, n, r, trials, seed, threads, out, fmt, check) -> None:
    """Threshold-count sandwich between consecutive d-th powers."""
    from rgg_spectra.experiments.interlacing import bridge_general_n
    from rgg_spectra.geometry.sampling import trial_seed
    from rgg_spectra.parallel import map_trials

    cfg = _config("bridge", d=d, n=[n], r=r, trials=trials, seed=seed, out=out, fmt=fmt)
    with _library_errors():
        radius = cfg.radius()
        if not isinstance(radius, float):
            raise InvalidArgumentError("bridge needs an isotropic radius")
        results = map_trials(
            lambda t: bridge_general_n(n, d, radius, trial_seed(seed, t)), range(trials), threads
        )

    rows = [res.to_dict() for res in results]
    report = ExperimentReport(
        experiment="bridge",
        params=cfg.params(),
        per_trial=rows,
        summary={"degenerate": all(res.degenerate for res in results)},
    )
    for res in results:
        if not res.passed:
            report.fail(f"seed {res.seed}: sandwich or interlacing failed")
    frame = pd.DataFrame(
        [
            {"seed": res.seed, "threshold": lam, "kind": kind, "low": c[0], "n": c[1], "high": c[2]}
            for res in results
            for kind, table in (("subset", res.subset_counts), ("principal", res.principal_counts))
            for lam, c in table.items()
        ],
        columns=["seed", "threshold", "kind", "low", "n", "high"],
    )
    _emit(report, cfg, frame, check, table=frame)


@cli.command()
@click.option(
    "--only",
    multiple=True,
    help="Run only the named checks (repeatable; default: all)",
)
@click.option("--mquad", default=kernel_config.mquad, show_default=True, type=int)
@_seed_option
@_output_options
def verify(only, mquad, seed, out, fmt, check) -> None:
    """Quick numerical checks of the limiting operator and the finite graphs."""
    from rgg_spectra.experiments.acceptance import CHECKS, run_checks

    unknown = sorted(set(only) - set(CHECKS))
    if unknown:
        raise click.BadParameter(
            f"unknown check(s) {unknown}; choose from {sorted(CHECKS)}", param_hint="--only"
        )
    cfg = _config("verify", seed=seed, mquad=mquad, out=out, fmt=fmt)
    with _library_errors():
        rows = run_checks(list(only) or None, seed, mquad)

    report = ExperimentReport(
        experiment="verify",
        params=cfg.params() | {"only": sorted(only)},
        per_trial=rows,
        summary={"checks": len(rows), "failed": sum(not row["pass"] for row in rows)},
    )
    for row in rows:
        if not row["pass"]:
            report.fail(f"{row['check']}: {row['value']!r} (target {row['target']})")
    _emit(report, cfg, pd.DataFrame(rows), check, table=pd.DataFrame(rows))


if __name__ == "__main__":
    cli()
