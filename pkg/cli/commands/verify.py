"""
WeylCone - Subcomandos verify-all y replay.
"""
from pathlib import Path

import click
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from cli.output import build_manifest, emit, output_options
from core.acceptance import CHECKS, pin_sweep_values, run_acceptance
from models.manifest import RunManifest


@click.command("verify-all")
@click.option("--quick", is_flag=True, help="Tamaños Monte Carlo y rangos reducidos.")
@click.option(
    "--only", type=click.IntRange(1, len(CHECKS)), multiple=True,
    help="Ejecuta solo las comprobaciones indicadas (repetible).",
)
@click.option(
    "--pin-sweep", "pin_sweep", type=click.Path(dir_okay=False), default=None,
    help="Calcula con el oráculo los valores finales de los barridos, los escribe aquí y termina.",
)
@output_options
@click.pass_context
def verify_all(ctx, quick, only, pin_sweep, fmt, out):
    """Batería de aceptación con tabla de resultados; sale con 1 si algo falla."""
    if pin_sweep:
        entries = pin_sweep_values(Path(pin_sweep), n=5000 if quick else 20_000)
        emit(ctx, [{**entry["spec"], "n": entry["n"], "finite_value": entry["finite_value"]} for entry in entries])
        return
    report = run_acceptance(quick=quick, only=list(only))

    table = Table(title=f"WeylCone - aceptación ({'rápida' if quick else 'completa'})")
    table.add_column("#", justify="right")
    table.add_column("Comprobación")
    table.add_column("Resultado")
    table.add_column("Tiempo", justify="right")
    table.add_column("Detalle", overflow="fold")
    for check in report.checks:
        status = "[green]OK[/green]" if check.passed else "[red]FALLO[/red]"
        table.add_row(str(check.number), check.name, status, f"{check.seconds:.1f}s", escape(check.detail))
    Console(stderr=fmt == "json" and out is None).print(table)

    if out or fmt == "json":
        emit(ctx, [
            {"check": c.number, "name": c.name, "passed": c.passed, "seconds": c.seconds, "detail": c.detail}
            for c in report.checks
        ])
    else:
        click.echo(build_manifest(ctx).model_dump_json(), err=True)
    if not report.passed:
        ctx.exit(1)


@click.command("replay")
@click.argument("manifest_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Nuevo archivo de salida.")
@click.pass_context
def replay(ctx, manifest_path, out):
    """Repite la ejecución descrita por un manifiesto JSON."""
    try:
        manifest = RunManifest.model_validate_json(Path(manifest_path).read_text(encoding="utf-8"))
    except ValidationError as e:
        raise click.BadParameter(f"manifiesto inválido: {e}", param_hint="MANIFEST_PATH") from None

    group = ctx.parent.command
    command = group.get_command(ctx, manifest.subcommand)
    if command is None or manifest.subcommand == "replay":
        raise click.BadParameter(f"subcomando desconocido: {manifest.subcommand}", param_hint="MANIFEST_PATH")

    known = {param.name for param in command.params}
    unknown = set(manifest.parameters) - known
    if unknown:
        raise click.BadParameter(f"parámetros desconocidos: {sorted(unknown)}", param_hint="MANIFEST_PATH")

    parameters = dict(manifest.parameters)
    parameters["out"] = out
    return ctx.invoke(command, **parameters)
