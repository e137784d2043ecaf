"""
Command-line laboratory.

    peakon-lab [-v] [--config FILE] simulate | verify | fsurface | stability-sweep

Exit codes: 0 when every check passes, 1 when a check fails or a run
diverges, 2 on usage errors.
"""

import functools
import logging
import math
from pathlib import Path
from typing import Callable, List, Optional, Tuple

import click
import numpy as np
import pandas as pd

from ..constants import (
    DEFAULT_FILTER_ORDER,
    DEFAULT_FILTER_STRENGTH,
    PEAKON_MIN,
    ExitCode,
    FPoint,
    FStats,
    OrbitMode,
    PerturbationKind,
    Refinement,
    RunStatus,
)
from ..exceptions import ConfigurationError, DomainError, GridError, IntegrationError
from ..field import Grid, PeriodicField, extrema
from ..functionals import f_eval, fstats
from ..peakon import peakon_field
from ..solver import SolverConfig, evolve
from .checks import SUITES, CheckContext, CheckResult, run_suite
from .config import default_map, load_config
from .export import (
    build_summary,
    read_field,
    write_fields,
    write_frame,
    write_summary,
    write_trajectory,
)
from .orbit import orbital_distance
from .surface import tabulate_surface
from .sweep import SweepSpec, run_sweep

logger = logging.getLogger(__name__)

LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)
SURFACE_HALF_WIDTH = 0.1


def _float_list(ctx: click.Context, param: click.Parameter, value: Optional[str]):
    if value is None:
        return None
    try:
        return tuple(float(item) for item in str(value).split(",") if item.strip())
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}")


def _float_pair(ctx: click.Context, param: click.Parameter, value: Optional[str]):
    pair = _float_list(ctx, param, value)
    if pair is not None and len(pair) != 2:
        raise click.BadParameter(f"expected LOW,HIGH, got {value!r}")
    return pair


def solver_options(n: int, filter_alpha: Optional[float]) -> Callable:
    """Flags shared by the commands that integrate in time."""
    options = [
        click.option(
            "--n", type=int, default=n, show_default=True,
            help="Grid size (power of two, >= 16)",
        ),
        click.option(
            "--dt", type=float, default=None,
            help="Time step [default: largest CFL-stable step]",
        ),
        click.option("--t-end", type=float, default=1.0, show_default=True, help="Final time"),
        click.option(
            "--filter-alpha",
            type=float,
            default=filter_alpha,
            help="Spectral filter strength "
            f"[default: {DEFAULT_FILTER_STRENGTH:g} for peakon data, else 0]",
        ),
        click.option(
            "--filter-order", type=int, default=DEFAULT_FILTER_ORDER, show_default=True
        ),
        click.option("--dealias/--no-dealias", default=True, show_default=True, help="2/3 rule"),
        click.option("--record-every", type=int, default=1, show_default=True),
        click.option(
            "--orbit-mode",
            type=click.Choice([m.value for m in OrbitMode]),
            default=OrbitMode.ARGMAX.value,
            show_default=True,
        ),
    ]

    def decorate(f: Callable) -> Callable:
        for option in reversed(options):
            f = option(f)
        return f

    return decorate


def _print_checks(results: List[CheckResult]) -> None:
    if not results:
        return
    table = pd.DataFrame(
        {
            "check": [r.name for r in results],
            "measured": [f"{r.measured:.3e}" for r in results],
            "bound": [f"{r.bound:.3e}" for r in results],
            "result": ["PASS" if r.passed else "FAIL" for r in results],
        }
    )
    click.echo(table.to_string(index=False))


def _exit_code(results: List[CheckResult]) -> int:
    return int(ExitCode.OK if all(r.passed for r in results) else ExitCode.CHECK_FAILED)


def usage_errors(f: Callable) -> Callable:
    """Report configuration and domain errors as click usage errors (exit 2)."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (ConfigurationError, DomainError, GridError) as e:
            raise click.UsageError(str(e))

    return wrapper


@click.group()
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for per-step detail")
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    help="File of `key = value` lines used as defaults for every command",
)
@click.pass_context
def main(ctx: click.Context, verbose: int, config_path: Optional[str]):
    """Pseudospectral solver and verification lab for periodic peakons."""
    logging.basicConfig(
        level=LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)],
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )
    if config_path:
        commands = {
            name: [p.name for p in command.params] for name, command in main.commands.items()
        }
        try:
            ctx.default_map = default_map(load_config(config_path), commands)
        except ConfigurationError as e:
            raise click.UsageError(str(e))


def _initial_field(
    init: str,
    grid: Grid,
    c: float,
    xi0: float,
    value: float,
    mean: float,
    mode: int,
    amp: float,
) -> PeriodicField:
    if init == "peakon":
        return peakon_field(c, xi0, grid)
    if init == "constant":
        return PeriodicField.constant(grid, value)
    if not 1 <= mode < grid.n // 2:
        raise ConfigurationError(
            f"Mode {mode} is not representable on {grid.n} nodes", key="mode"
        )
    return PeriodicField.from_function(
        grid, lambda x: mean + amp * np.sin(2.0 * np.pi * mode * x)
    )


@main.command()
@click.option(
    "--init",
    type=click.Choice(["peakon", "constant", "fourier"]),
    default="peakon",
    show_default=True,
)
@click.option("--c", type=float, default=1.0, show_default=True, help="Peakon and orbit speed")
@click.option("--xi0", type=float, default=0.0, show_default=True, help="Peakon translate")
@click.option("--value", type=float, default=2.0, show_default=True, help="Constant value")
@click.option("--mean", type=float, default=2.0, show_default=True, help="Fourier data mean")
@click.option("--mode", type=int, default=1, show_default=True, help="Fourier data wavenumber")
@click.option("--amp", type=float, default=0.1, show_default=True, help="Fourier data amplitude")
@solver_options(n=512, filter_alpha=None)
@click.option("--tol", type=float, default=1e-12, show_default=True, help="Allowed drift of H0")
@click.option("--snapshots", is_flag=True, help="Also write fields.csv with every record")
@click.option(
    "--out", type=click.Path(file_okay=False), default="peakon-run", show_default=True
)
@click.pass_context
@usage_errors
def simulate(
    ctx: click.Context,
    init, c, xi0, value, mean, mode, amp,
    n, dt, t_end, filter_alpha, filter_order, dealias, record_every, orbit_mode,
    tol, snapshots, out,
):
    """Evolve one initial field and record extrema, invariants and orbital distance."""
    u0 = _initial_field(init, Grid(n), c, xi0, value, mean, mode, amp)
    if filter_alpha is None:
        filter_alpha = DEFAULT_FILTER_STRENGTH if init == "peakon" else 0.0
    cfg = SolverConfig.for_field(
        u0,
        t_end,
        dt=dt,
        dealias=dealias,
        filter_strength=filter_alpha,
        filter_order=filter_order,
        record_every=record_every,
        keep_snapshots=snapshots,
    )
    mode_enum = OrbitMode(orbit_mode)
    out_dir = Path(out)
    config = dict(ctx.params, dt=cfg.dt, filter_alpha=filter_alpha)

    try:
        record = evolve(u0, cfg, distance_fn=lambda u, t: orbital_distance(u, c, mode_enum)[1])
    except IntegrationError as e:
        logger.error(f"Integration failed: {e}")
        write_summary(
            build_summary("simulate", config, [], None, False, status="failed", error=str(e)),
            out_dir / "summary.json",
        )
        click.echo(f"Integration failed: {e}", err=True)
        ctx.exit(int(ExitCode.CHECK_FAILED))
        return

    write_trajectory(record, out_dir / "trajectory.csv")
    if snapshots:
        write_fields(record, out_dir / "fields.csv")
    drift = record.drift()
    relative = record.relative_drift()
    checks = [CheckResult.from_values("H0 drift", drift.h0, tol)]
    sup_distance = float(np.max(record.distances))
    summary = build_summary(
        "simulate",
        config,
        checks,
        sup_distance,
        record.status is RunStatus.BREAKING,
        status=record.status.value,
        steps=record.steps,
        final_time=float(record.times[-1]),
        drift={"H0": drift.h0, "H1": drift.h1, "H2": drift.h2},
        relative_drift={"H0": relative.h0, "H1": relative.h1, "H2": relative.h2},
    )
    write_summary(summary, out_dir / "summary.json")

    _print_checks(checks)
    click.echo(
        f"status={record.status.value} steps={record.steps} sup_orbital_distance={sup_distance:.6g}"
    )
    ctx.exit(_exit_code(checks))


@main.command()
@click.option(
    "--suite",
    type=click.Choice(list(SUITES) + ["all"]),
    default="all",
    show_default=True,
)
@click.option("--trials", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tol", type=float, default=1e-6, show_default=True)
@click.option(
    "--n", type=int, default=512, show_default=True, help="Grid size of the random fields"
)
@click.option(
    "--out", type=click.Path(dir_okay=False), default=None, help="Write a JSON summary here"
)
@click.pass_context
@usage_errors
def verify(ctx: click.Context, suite, trials, seed, tol, n, out):
    """Run verification suites and print a pass/fail table."""
    Grid(n)
    context = CheckContext(trials=trials, seed=seed, tol=tol, n=n)
    results = run_suite(suite, context)
    _print_checks(results)
    if out:
        write_summary(build_summary("verify", dict(ctx.params), results, None, False), out)
    failed = sum(not r.passed for r in results)
    click.echo(f"{len(results) - failed}/{len(results)} checks passed")
    ctx.exit(_exit_code(results))


@main.command()
@click.option(
    "--source",
    type=click.Choice(["peakon", "constant", "field"]),
    default="peakon",
    show_default=True,
)
@click.option("--c", type=float, default=1.0, show_default=True, help="Peakon speed")
@click.option("--value", type=float, default=2.0, show_default=True, help="Constant field value")
@click.option(
    "--field-file",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="CSV with a u column",
)
@click.option(
    "--max-range", callback=_float_pair, default=None,
    help="LOW,HIGH for M [default: around the source]",
)
@click.option(
    "--min-range", callback=_float_pair, default=None,
    help="LOW,HIGH for m [default: around the source]",
)
@click.option("--points", type=int, default=41, show_default=True, help="Grid points per axis")
@click.option("--tol", type=float, default=1e-10, show_default=True)
@click.option(
    "--out", type=click.Path(dir_okay=False), default="fsurface.csv", show_default=True
)
@click.pass_context
@usage_errors
def fsurface(
    ctx: click.Context, source, c, value, field_file, max_range, min_range, points, tol, out
):
    """Tabulate F(M, m) with its gradient norm; the JSON summary sits next to the CSV."""
    stats, center = _surface_source(source, c, value, field_file)
    width = SURFACE_HALF_WIDTH * abs(center.M)
    max_range = max_range or (center.M - width, center.M + width)
    min_range = min_range or (center.m - width, center.m + width)
    table = tabulate_surface(stats, max_range, min_range, points)
    write_frame(table.frame, out)

    at_source = f_eval(stats, center)
    checks = [CheckResult.from_values("F at source extrema >= 0", -at_source, tol)]
    peak = table.argmax
    summary = build_summary(
        "fsurface",
        dict(ctx.params),
        checks,
        None,
        False,
        source_point={"M": center.M, "m": center.m, "F": at_source},
        grid_max={"M": peak.M, "m": peak.m, "F": table.max_value},
    )
    write_summary(summary, Path(out).with_suffix(".json"))
    _print_checks(checks)
    click.echo(f"max F = {table.max_value:.6g} at (M, m) = ({peak.M:.6g}, {peak.m:.6g})")
    ctx.exit(_exit_code(checks))


def _surface_source(
    source: str, c: float, value: float, field_file: Optional[str]
) -> Tuple[FStats, FPoint]:
    if source == "peakon":
        return FStats.peakon(c), FPoint(c, c * float(PEAKON_MIN))
    if source == "constant":
        return FStats.constant(value), FPoint(value, value)
    if field_file is None:
        raise ConfigurationError("--source field needs --field-file", key="field_file")
    u = read_field(field_file)
    return fstats(u), extrema(u, Refinement.SPECTRAL).as_point()


@main.command("stability-sweep")
@click.option("--deltas", callback=_float_list, default="0.001,0.003,0.01", show_default=True)
@click.option(
    "--kind",
    type=click.Choice([k.value for k in PerturbationKind]),
    default=PerturbationKind.SINGLE_MODE.value,
    show_default=True,
)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--c", type=float, default=1.0, show_default=True, help="Peakon speed")
@solver_options(n=256, filter_alpha=DEFAULT_FILTER_STRENGTH)
@click.option(
    "--slack", type=float, default=1e-6, show_default=True,
    help="Allowed proof-chain violation",
)
@click.option("--workers", type=int, default=None, help="Worker processes [default: CPU count]")
@click.option(
    "--out", type=click.Path(dir_okay=False), default=None, help="Write a JSON summary here"
)
@click.pass_context
@usage_errors
def stability_sweep(
    ctx: click.Context,
    deltas,
    kind,
    seed,
    c,
    n,
    dt,
    t_end,
    filter_alpha,
    filter_order,
    dealias,
    record_every,
    orbit_mode,
    slack,
    workers,
    out,
):
    """Evolve perturbed peakons for each delta and track the orbital distance."""
    if filter_alpha is None:
        filter_alpha = DEFAULT_FILTER_STRENGTH
    if dt is None:
        grid = Grid(n)
        dt = SolverConfig.for_field(peakon_field(c, 0.0, grid), t_end).dt
    solver = SolverConfig(
        n=n,
        dt=dt,
        t_end=t_end,
        dealias=dealias,
        filter_strength=filter_alpha,
        filter_order=filter_order,
        record_every=record_every,
    )
    spec = SweepSpec(
        deltas=deltas,
        kind=PerturbationKind(kind),
        seed=seed,
        solver=solver,
        c=c,
        orbit_mode=OrbitMode(orbit_mode),
        slack=slack,
    )
    try:
        report = run_sweep(spec, max_workers=workers)
    except IntegrationError as e:
        click.echo(f"Integration failed: {e}", err=True)
        ctx.exit(int(ExitCode.CHECK_FAILED))
        return

    checks = [
        CheckResult.from_values(f"proof chain delta={o.delta:g}", -o.chain_margin, slack)
        for o in report.outcomes
    ]
    table = pd.DataFrame([o.to_dict() for o in report.outcomes])
    columns = ["delta", "sup_distance", "sup_max_deviation", "chain_margin", "verdict"]
    click.echo(table[columns].to_string(index=False))
    monotone = report.distance_nondecreasing()
    click.echo(f"D(delta) nondecreasing: {'yes' if monotone else 'no'}")
    checks.append(
        CheckResult("D(delta) nondecreasing", float(not monotone), 0.0, monotone)
    )
    if out:
        sup = max((o.sup_distance for o in report.outcomes), default=math.nan)
        write_summary(
            build_summary(
                "stability-sweep",
                dict(ctx.params, dt=dt, filter_alpha=filter_alpha),
                checks,
                sup,
                report.breaking,
                report=report.to_dict(),
            ),
            out,
        )
    ctx.exit(int(ExitCode.OK if report.passed else ExitCode.CHECK_FAILED))
