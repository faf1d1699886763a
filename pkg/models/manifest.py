"""
WeylCone - Manifiesto de ejecución.
"""
from datetime import datetime, timezone
from typing import Any, Optional

from pydantic import BaseModel, Field

from config import get_config


def _artifact_version() -> str:
    return str((get_config().get("app") or {}).get("version", "0.0.0"))


class RunManifest(BaseModel):
    """Todo lo necesario para repetir una ejecución de la CLI."""
    subcommand: str
    parameters: dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64)
    artifact_version: str = Field(default_factory=_artifact_version)
    timestamp: str = Field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )
