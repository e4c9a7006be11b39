import json
import sys
from pathlib import Path
from typing import Any

import click
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from ..exceptions import NumericalError, QDeltaError
from ..scattering.matcher import solve as solve_params
from ..scattering.matcher import verify_matching
from ..scattering.model import Incidence, JumpVariant, ScatteringParams
from ..scattering.observables import conservation_check
from ..scattering.oracle import oracle_amplitudes, transfer_matrix_amplitudes
from ..sweep.emit import emit
from ..sweep.figures import write_figures
from ..sweep.runner import SweepSpec, run_sweep
from ..utils.config import Settings, get_settings
from ..utils.logger import get_logger, set_log_level

console = Console()
err_console = Console(stderr=True)
logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ARGUMENT = 1
EXIT_NUMERIC = 2

VARIANTS = click.Choice([variant.value for variant in JumpVariant])


class QDeltaGroup(click.Group):
    """Click group mapping toolkit errors onto the documented exit codes."""

    def main(self, *args: Any, **kwargs: Any) -> Any:
        kwargs["standalone_mode"] = False
        try:
            rv = super().main(*args, **kwargs)
        except click.ClickException as exc:
            exc.show()
            sys.exit(EXIT_ARGUMENT)
        except click.exceptions.Abort:
            err_console.print("Aborted!")
            sys.exit(EXIT_ARGUMENT)
        except NumericalError as exc:
            err_console.print(f"[red]Numerical error:[/] {exc}")
            sys.exit(EXIT_NUMERIC)
        except (QDeltaError, ValidationError) as exc:
            err_console.print(f"[red]Error:[/] {exc}")
            sys.exit(EXIT_ARGUMENT)
        sys.exit(rv if isinstance(rv, int) else EXIT_OK)


def _settings(ctx: click.Context) -> Settings:
    return ctx.obj


def _pick(value: Any, default: Any) -> Any:
    return default if value is None else value


def _params(settings: Settings, **overrides: Any) -> ScatteringParams:
    values = {
        "energy": settings.energy,
        "m": settings.m,
        "va": settings.va,
        "vb": settings.vb,
        "a0": settings.a0,
        "variant": settings.variant,
    }
    values.update({key: value for key, value in overrides.items() if value is not None})
    return ScatteringParams(**values)


def _problem_options(func):
    for option in reversed(
        (
            click.option("--energy", "-e", type=float, default=None, help="Total energy E"),
            click.option("--m", type=float, default=None, help="Fermion mass"),
            click.option("--va", type=float, default=None, help="Real-channel delta strength"),
            click.option("--vb", type=float, default=None, help="Quaternionic delta strength"),
            click.option("--a0", type=float, default=None, help="Half-separation of the deltas"),
        )
    ):
        func = option(func)
    return func


@click.group(cls=QDeltaGroup, context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="JSON file with option defaults (flags override it)",
)
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
)
@click.pass_context
def cli(ctx: click.Context, config_path: Path | None, log_level: str | None) -> None:
    """Quaternionic double-delta Dirac scattering CLI."""
    settings = get_settings(config_path)
    ctx.obj = settings
    set_log_level(log_level or settings.log_level)


@cli.command()
@_problem_options
@click.option("--variant", type=VARIANTS, default=None, help="b-channel jump law")
@click.option("--from-right", is_flag=True, help="Send the incident wave from the right")
@click.option("--json", "as_json", is_flag=True, help="Print a JSON object instead of a table")
@click.pass_context
def solve(
    ctx: click.Context,
    energy: float | None,
    m: float | None,
    va: float | None,
    vb: float | None,
    a0: float | None,
    variant: str | None,
    from_right: bool,
    as_json: bool,
) -> None:
    """Solve a single point and print amplitudes and the unitarity defect."""
    params = _params(_settings(ctx), energy=energy, m=m, va=va, vb=vb, a0=a0, variant=variant)
    incidence = Incidence.RIGHT if from_right else Incidence.LEFT
    sol = solve_params(params, incidence)
    report = conservation_check(sol)
    matching = verify_matching(sol)

    if as_json:
        payload = {
            "params": params.model_dump(mode="json"),
            "incidence": incidence.value,
            "amplitudes": {
                label: [value.real, value.imag] for label, value in sol.amplitudes().items()
            },
            "R": report.reflection,
            "T": report.transmission,
            "defect": report.defect,
            "residual": sol.residual_norm,
            "max_violation": matching.max_violation,
        }
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
        return

    table = Table(title=f"E={params.energy:g} m={params.m:g} Va={params.va:g} Vb={params.vb:g} a0={params.a0:g}")
    table.add_column("amplitude")
    table.add_column("value", justify="right")
    for label, value in sol.amplitudes().items():
        table.add_row(label, f"{value:.12g}")
    console.print(table)
    console.print(
        f"R = {report.reflection:.15g}   T = {report.transmission:.15g}   "
        f"|R+T-1| = {report.defect:.3e}"
    )
    console.print(f"residual = {sol.residual_norm:.3e}   matching = {matching.max_violation:.3e}")


@cli.command()
@_problem_options
@click.option("--axis", type=click.Choice(["E", "Va", "Vb", "a0"]), default=None)
@click.option("--lo", type=float, default=None, help="Lower end of the axis range")
@click.option("--hi", type=float, default=None, help="Upper end of the axis range")
@click.option("--steps", type=click.IntRange(min=1), default=None, help="Number of grid points")
@click.option("--variant", type=VARIANTS, default=None, help="b-channel jump law")
@click.option("--format", "output_format", type=click.Choice(["csv", "json"]), default=None)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Parallel worker processes")
@click.pass_context
def sweep(
    ctx: click.Context,
    energy: float | None,
    m: float | None,
    va: float | None,
    vb: float | None,
    a0: float | None,
    axis: str | None,
    lo: float | None,
    hi: float | None,
    steps: int | None,
    variant: str | None,
    output_format: str | None,
    out: Path | None,
    workers: int | None,
) -> None:
    """Run a one-axis sweep and write CSV or JSON."""
    settings = _settings(ctx)
    spec = SweepSpec(
        fixed=_params(settings, energy=energy, m=m, va=va, vb=vb, a0=a0),
        axis=_pick(axis, settings.axis),
        lo=_pick(lo, settings.lo),
        hi=_pick(hi, settings.hi),
        steps=_pick(steps, settings.steps),
        variant=_pick(variant, settings.variant),
    )
    logger.debug("Sweep spec: %s", spec)
    fmt = _pick(output_format, settings.output_format)
    target = out or settings.output_directory / f"sweep_{spec.axis}.{fmt}"

    with console.status(f"Sweeping {spec.axis}…", spinner="dots"):
        result = run_sweep(spec, workers=_pick(workers, settings.workers))
    emit(result, fmt, target)
    worst = max(row.defect for row in result.rows)
    console.print(
        f"[green]Wrote[/] {target} ({len(result.rows)} rows, {len(result.failures)} failed, "
        f"max defect {worst:.3e})"
    )


@cli.command()
@_problem_options
@click.option("--epsilon", type=float, default=None, help="Gaussian width of the deltas")
@click.pass_context
def oracle(
    ctx: click.Context,
    energy: float | None,
    m: float | None,
    va: float | None,
    vb: float | None,
    a0: float | None,
    epsilon: float | None,
) -> None:
    """Compare the matching solver with the regularized ODE integration."""
    settings = _settings(ctx)
    params = _params(
        settings, energy=energy, m=m, va=va, vb=vb, a0=a0, variant=JumpVariant.DERIVED
    )
    eps = _pick(epsilon, settings.epsilon)
    sol = solve_params(params)
    with console.status(f"Integrating with epsilon={eps:g}…", spinner="dots"):
        result = oracle_amplitudes(params, eps)

    table = Table(title=f"Oracle comparison (epsilon={eps:g})")
    table.add_column("method")
    table.add_column("r", justify="right")
    table.add_column("t", justify="right")
    table.add_row("matching", f"{sol.r:.9g}", f"{sol.t:.9g}")
    table.add_row("ODE oracle", f"{result.r:.9g}", f"{result.t:.9g}")
    if params.vb == 0:
        r_tm, t_tm = transfer_matrix_amplitudes(params)
        table.add_row("transfer matrix", f"{r_tm:.9g}", f"{t_tm:.9g}")
    console.print(table)
    console.print(
        f"|dr| = {abs(result.r - sol.r):.3e}   |dt| = {abs(result.t - sol.t):.3e}   "
        f"oracle defect = {result.diagnostics.unitarity_defect:.3e}   "
        f"steps = {result.diagnostics.steps}"
    )


@cli.command()
@click.option("--out-dir", type=click.Path(file_okay=False, path_type=Path), default=None)
@click.option("--format", "output_format", type=click.Choice(["csv", "json"]), default=None)
@click.option("--steps", type=click.IntRange(min=1), default=None, help="Grid points per canonical sweep")
@click.option("--families", is_flag=True, help="Also write the energy-sweep families")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Parallel worker processes")
@click.pass_context
def figures(
    ctx: click.Context,
    out_dir: Path | None,
    output_format: str | None,
    steps: int | None,
    families: bool,
    workers: int | None,
) -> None:
    """Write the four canonical sweep files."""
    settings = _settings(ctx)
    target = out_dir or settings.output_directory
    with console.status("Running canonical sweeps…", spinner="dots"):
        written = write_figures(
            target,
            output_format=_pick(output_format, settings.output_format),
            steps=_pick(steps, settings.steps),
            families=families,
            workers=_pick(workers, settings.workers),
        )
    for name, path in written.items():
        console.print(f"[green]{name}[/] -> {path}")


if __name__ == "__main__":
    cli()
