"""
WeylCone - Salida CSV/JSON y manifiestos de ejecución.

Los racionales se escriben como "p/q" con una columna paralela *_float.
Con --out PATH las filas van a PATH y el manifiesto a PATH.manifest.json;
en stdout el JSON incluye el manifiesto y el CSV lo manda a stderr.
"""
import csv
import io
import json
import logging
import math
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional

import click

from models.manifest import RunManifest

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")


def output_options(func):
    """Añade --format y --out a un subcomando."""
    func = click.option(
        "--out", "out", type=click.Path(dir_okay=False), default=None,
        help="Archivo de salida (por defecto stdout).",
    )(func)
    func = click.option(
        "--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True,
        help="Formato de salida.",
    )(func)
    return func


# =============================================================================
# VALORES
# =============================================================================

def rational_columns(name: str, value) -> dict[str, Any]:
    """{name: "p/q", name_float: float} para racionales; {name: v, name_float: v} para float."""
    if value is None:
        return {name: None, f"{name}_float": None}
    if isinstance(value, Fraction):
        return {name: f"{value.numerator}/{value.denominator}", f"{name}_float": float(value)}
    return {name: float(value), f"{name}_float": float(value)}


def _plain(value):
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, tuple):
        return [_plain(item) for item in value]
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if hasattr(value, "item"):
        return _plain(value.item())
    return value


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, list):
        return " ".join(str(item) for item in value)
    return value


# =============================================================================
# SERIALIZACIÓN
# =============================================================================

def render_rows(rows: list[dict], fmt: str, manifest: Optional[RunManifest] = None) -> str:
    rows = [{key: _plain(value) for key, value in row.items()} for row in rows]
    if fmt == "json":
        document: Any = rows if manifest is None else {
            "manifest": manifest.model_dump(mode="json"),
            "rows": rows,
        }
        return json.dumps(document, indent=2, ensure_ascii=False)

    fieldnames: list[str] = []
    for row in rows:
        fieldnames.extend(key for key in row if key not in fieldnames)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _csv_cell(value) for key, value in row.items()})
    return buffer.getvalue()


def build_manifest(ctx: click.Context, seed: Optional[int] = None) -> RunManifest:
    """Manifiesto con el subcomando y sus parámetros (sin --out)."""
    parameters = {key: _plain(value) for key, value in ctx.params.items() if key != "out"}
    return RunManifest(subcommand=ctx.info_name, parameters=parameters, seed=seed)


def emit(ctx: click.Context, rows: Iterable[dict], seed: Optional[int] = None) -> RunManifest:
    """Escribe filas y manifiesto según --format/--out del contexto."""
    rows = list(rows)
    fmt = ctx.params.get("fmt", "csv")
    out = ctx.params.get("out")
    manifest = build_manifest(ctx, seed)

    if out:
        path = Path(out)
        path.write_text(render_rows(rows, fmt), encoding="utf-8")
        manifest_path = path.with_name(path.name + ".manifest.json")
        manifest_path.write_text(manifest.model_dump_json(indent=2), encoding="utf-8")
        logger.info(f"[Salida] {len(rows)} filas en {path} (manifiesto en {manifest_path.name})")
    elif fmt == "json":
        click.echo(render_rows(rows, fmt, manifest))
    else:
        click.echo(render_rows(rows, fmt), nl=False)
        click.echo(manifest.model_dump_json(), err=True)
    return manifest
