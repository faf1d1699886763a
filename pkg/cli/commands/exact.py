"""
WeylCone - Subcomandos exactos: stirling, chambers, pmf, functionals.
"""
import click

from cli.options import d_option, n_option, type_option
from cli.output import emit, output_options, rational_columns
from core.combinatorics import chamber_count, default_table, parity_sums
from core.distribution import pmf
from core.functionals import expected_functionals, expected_statistical_dimension
from models.cone_type import ConeType
from models.functionals import ConeKind, FunctionalKind


@click.command("stirling")
@n_option()
@click.option("--k", "k", type=int, default=None, help="Solo la entrada k de la fila.")
@type_option
@output_options
@click.pass_context
def stirling(ctx, n, k, variant, fmt, out):
    """Fila n del triángulo de Stirling (columnas: n, k, value)."""
    variant = ConeType.parse(variant)
    table = default_table(variant, n)
    ks = range(n + 1) if k is None else [k]
    rows = [{"n": n, "k": j, "value": table.value(n, j)} for j in ks]
    if k is None and n >= 2:
        even, odd = parity_sums(table, n)
        click.echo(f"Sumas par/impar: {even} / {odd}", err=True)
    emit(ctx, rows)


@click.command("chambers")
@n_option()
@d_option()
@type_option
@output_options
@click.pass_context
def chambers(ctx, n, d, variant, fmt, out):
    """Número de cámaras D(n, d) (columnas: n, d, type, chambers)."""
    variant = ConeType.parse(variant)
    count = chamber_count(default_table(variant, n), n, d)
    emit(ctx, [{"n": n, "d": d, "type": variant.value, "chambers": count.value}])


@click.command("pmf")
@n_option()
@type_option
@click.option("--exact/--float", "exact", default=None, help="Fuerza racionales o convolución flotante.")
@output_options
@click.pass_context
def pmf_command(ctx, n, variant, exact, fmt, out):
    """Ley de S_n (columnas: k, probability, probability_float)."""
    distribution = pmf(n, ConeType.parse(variant), exact=exact)
    values = distribution.exact if distribution.is_exact else distribution.probs
    emit(ctx, [{"k": k, **rational_columns("probability", value)} for k, value in enumerate(values)])


@click.command("functionals")
@n_option()
@d_option()
@type_option
@click.option("--cone", type=click.Choice([c.value for c in ConeKind]), default=ConeKind.WEYL.value, show_default=True)
@click.option(
    "--kind", type=click.Choice([k.value for k in FunctionalKind] + ["statdim"]),
    default=FunctionalKind.INTRINSIC_VOLUMES.value, show_default=True,
)
@click.option("--exact/--float", "exact", default=None, help="Fuerza racionales o colas impares flotantes.")
@output_options
@click.pass_context
def functionals(ctx, n, d, variant, cone, kind, exact, fmt, out):
    """
    Funcionales esperados (columnas: k, value, value_float).

    --kind statdim emite una fila con E Δ(W) y k vacío.
    """
    variant = ConeType.parse(variant)
    if kind == "statdim":
        value = expected_statistical_dimension(n, d, variant, exact=exact).value
        emit(ctx, [{"k": None, **rational_columns("value", value)}])
        return
    table = expected_functionals(n, d, variant, cone, kind, exact=exact)
    emit(ctx, [{"k": k, **rational_columns("value", value)} for k, value in table.items()])
