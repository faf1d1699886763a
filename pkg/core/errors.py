"""
WeylCone - Jerarquía de errores.

Todo error de cómputo hereda de WeylConeError; la CLI lo traduce a código
de salida 1. Los errores de precondición también son ValueError para que
el código que solo conoce la librería estándar pueda capturarlos.
"""
from typing import Optional


class WeylConeError(Exception):
    """Error base de WeylCone."""


class InvalidParameterError(WeylConeError, ValueError):
    """Parámetros fuera del dominio de la operación."""


class GuardError(WeylConeError, ValueError):
    """Tamaño del problema por encima de un límite configurado."""


class DegenerateSampleError(WeylConeError):
    """Muestra de medida cero (columna nula, normales paralelas...). Se vuelve a sortear."""


class NonPointedConeError(DegenerateSampleError):
    """El cono generado contiene una recta; no se cuentan sus caras."""


class LPSolverError(WeylConeError):
    """Fallo numérico del símplex (ciclado, límite de iteraciones, mal condicionamiento)."""

    def __init__(self, message: str, condition: Optional[float] = None):
        super().__init__(message if condition is None else f"{message} (cond≈{condition:.3e})")
        self.condition = condition


class NNLSConvergenceError(WeylConeError):
    """El conjunto activo no convergió dentro del límite de iteraciones."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residuo={residual:.3e})")
        self.residual = residual


class RejectionCapError(WeylConeError):
    """El muestreo por rechazo agotó el número máximo de intentos."""

    def __init__(self, message: str, attempts: int):
        super().__init__(f"{message} tras {attempts} intentos")
        self.attempts = attempts


class ConsistencyError(WeylConeError):
    """Dos evaluaciones independientes de la misma cantidad no coinciden."""
