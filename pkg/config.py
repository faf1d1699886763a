"""
WeylCone - Configuración centralizada.
Carga variables de entorno (prefijo WEYLCONE_) y config.yaml.
"""
import yaml
from pathlib import Path
from functools import lru_cache
from typing import Any
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Configuración desde variables de entorno."""

    # App
    app_name: str = "WeylCone"
    app_env: str = "development"
    app_debug: bool = False
    log_level: str = "INFO"

    # Reproducibilidad: semilla por defecto de todo comando con --seed
    seed: int = 0

    # Paralelismo por defecto de Monte Carlo (-1 = todos los núcleos)
    threads: int = -1

    model_config = {
        "env_prefix": "WEYLCONE_",
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "extra": "ignore",
    }


@lru_cache
def get_settings() -> Settings:
    """Retorna instancia cacheada de configuración."""
    return Settings()


def load_config() -> dict:
    """Carga configuración desde config.yaml."""
    config_path = Path(__file__).parent / "config.yaml"
    if config_path.exists():
        with open(config_path, "r", encoding="utf-8") as f:
            return yaml.safe_load(f) or {}
    return {}


@lru_cache
def get_config() -> dict:
    """Retorna configuración YAML cacheada."""
    return load_config()


def config_value(section: str, key: str, default: Any) -> Any:
    """
    Lee un valor de config.yaml con respaldo.

    Args:
        section: Sección de primer nivel (p. ej. "geometry").
        key: Clave dentro de la sección.
        default: Valor si la sección o la clave no existen.
    """
    return (get_config().get(section) or {}).get(key, default)


def project_path(relative: str) -> Path:
    """Ruta relativa a la raíz del proyecto (donde vive config.yaml)."""
    path = Path(relative)
    return path if path.is_absolute() else Path(__file__).parent / path
