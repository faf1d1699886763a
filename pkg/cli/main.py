"""
WeylCone - Punto de entrada de la CLI.
Registra los subcomandos y traduce los errores de cómputo a código de salida 1.
"""
import logging

import click

from cli.commands.exact import chambers, functionals, pmf_command, stirling
from cli.commands.geometry import simulate, tessellate
from cli.commands.limits import limits
from cli.commands.verify import replay, verify_all
from config import get_config
from core.errors import WeylConeError
from utils.logger import setup_logging

logger = logging.getLogger(__name__)


class WeylConeGroup(click.Group):
    """Grupo click: WeylConeError -> mensaje en stderr y salida 1; uso incorrecto -> 2."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except WeylConeError as e:
            logger.debug(f"[CLI] {type(e).__name__}", exc_info=True)
            click.echo(f"Error ({type(e).__name__}): {e}", err=True)
            ctx.exit(1)


@click.group(cls=WeylConeGroup)
@click.version_option(
    version=str((get_config().get("app") or {}).get("version", "0.0.0")),
    prog_name="weylcone",
)
def cli():
    """WeylCone - conos aleatorios de Weyl tipo A/B."""
    setup_logging()


# --- Subcomandos ---
cli.add_command(stirling)
cli.add_command(chambers)
cli.add_command(pmf_command, name="pmf")
cli.add_command(functionals)
cli.add_command(limits)
cli.add_command(simulate)
cli.add_command(tessellate)
cli.add_command(verify_all)
cli.add_command(replay)


def main():
    cli(prog_name="weylcone")


if __name__ == "__main__":
    main()
