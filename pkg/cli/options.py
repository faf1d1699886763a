"""
WeylCone - Opciones compartidas de la CLI.
"""
import click

from config import get_settings
from models.cone_type import ConeType
from models.geometry import Distribution

type_option = click.option(
    "--type", "variant", type=click.Choice(["A", "B"], case_sensitive=False), default="A",
    show_default=True, callback=lambda ctx, param, value: ConeType.parse(value),
    help="Tipo de Weyl.",
)

seed_option = click.option(
    "--seed", type=click.IntRange(0, 2**64 - 1), default=lambda: get_settings().seed,
    show_default="WEYLCONE_SEED o 0", help="Semilla del generador PCG64.",
)

distribution_option = click.option(
    "--distribution", type=click.Choice([d.value for d in Distribution]),
    default=Distribution.STANDARD_GAUSSIAN.value, show_default=True,
    callback=lambda ctx, param, value: Distribution(value),
    help="Ley de los puntos Y_i.",
)


def threads_option(default=None, help_text="Procesos de joblib."):
    """--threads; sin default explícito se usa WEYLCONE_THREADS (-1 = todos los núcleos)."""
    return click.option(
        "--threads", type=int,
        default=default if default is not None else (lambda: get_settings().threads),
        show_default=True if default is not None else "WEYLCONE_THREADS o -1",
        help=help_text,
    )


def n_option(required: bool = True):
    return click.option("--n", "n", type=click.IntRange(min=0), required=required, help="Número de puntos / sumandos.")


def d_option(required: bool = True):
    return click.option("--d", "d", type=click.IntRange(min=1), required=required, help="Dimensión.")
