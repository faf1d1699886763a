"""
WeylCone - Subcomando limits: barridos de convergencia de los teoremas límite.
"""
import click

from cli.options import threads_option, type_option
from cli.output import emit, output_options
from core.limit_theorems import convergence_sweep
from models.cone_type import ConeType
from models.regime import RegimeKind, RegimeSpec

_FLOAT_PARAMS = {"x", "alpha", "c", "y"}
_TRUE = {"1", "true", "yes", "si", "sí"}


def parse_params(value: str) -> dict:
    """'x=2,k_mode=linear,alpha=0.5' -> kwargs de RegimeSpec."""
    params: dict = {}
    if not value:
        return params
    for item in value.split(","):
        key, sep, raw = item.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or not key:
            raise click.BadParameter(f"'{item}' no tiene la forma clave=valor", param_hint="--params")
        try:
            if key in _FLOAT_PARAMS:
                params[key] = float(raw)
            elif key == "k":
                params[key] = int(raw)
            elif key == "k_mode":
                params[key] = raw
            elif key == "critical":
                params[key] = raw.lower() in _TRUE
            else:
                raise click.BadParameter(f"parámetro desconocido '{key}'", param_hint="--params")
        except ValueError:
            raise click.BadParameter(f"valor inválido para {key}: '{raw}'", param_hint="--params") from None
    return params


def parse_n_list(value: str) -> list[int]:
    try:
        return [int(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(f"'{value}' no es una lista de enteros", param_hint="--n-list") from None


@click.command("limits")
@click.option("--regime", type=click.Choice([k.value for k in RegimeKind]), required=True)
@type_option
@click.option("--params", default="", help="Parámetros del régimen: x, k_mode, alpha, c, y, k, critical.")
@click.option("--n-list", "n_list", default="1000,10000", show_default=True, help="n separados por comas, crecientes.")
@click.option("--at-realized", is_flag=True, help="Predicción evaluada en los parámetros realizados.")
@threads_option(default=1)
@output_options
@click.pass_context
def limits(ctx, regime, variant, params, n_list, at_realized, threads, fmt, out):
    """
    Valor exacto a n finito, límite predicho y brecha para cada n.

    Columnas: spec_*, n, d, k, finite_value, predicted_limit, gap,
    relative_gap, clamped, error, realized_*.
    """
    try:
        spec = RegimeSpec(kind=RegimeKind(regime), variant=ConeType.parse(variant), **parse_params(params))
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--params") from None
    report = convergence_sweep(spec, parse_n_list(n_list), at_realized=at_realized, n_jobs=threads)
    emit(ctx, report.to_records())
