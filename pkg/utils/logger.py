"""
WeylCone - Configuración de logging centralizado.
"""
import logging
from rich.console import Console
from rich.logging import RichHandler

from config import get_settings


def setup_logging():
    """Configura logging para toda la aplicación."""
    settings = get_settings()
    level = logging.DEBUG if settings.app_debug else getattr(
        logging, settings.log_level.upper(), logging.INFO
    )

    # Formato
    logging.basicConfig(
        level=level,
        format="%(name)s - %(message)s",
        datefmt="[%X]",
        handlers=[
            RichHandler(
                console=Console(stderr=True),
                rich_tracebacks=True,
                show_path=False,
                markup=True,
            )
        ],
    )

    # Reducir ruido de librerías externas
    logging.getLogger("joblib").setLevel(logging.WARNING)

    logger = logging.getLogger("weylcone")
    logger.debug("WeylCone - Logging configurado")
    return logger
