"""
WeylCone - Mínimos cuadrados no negativos (Lawson-Hanson).

min ||A x - b|| con x >= 0 por conjunto activo: se libera la variable con
mayor multiplicador positivo, se resuelve sin restricciones sobre las
variables libres y se retrocede por la recta hasta la frontera cuando
alguna deja de ser positiva.
"""
import logging
from typing import Optional

import numpy as np

from config import config_value
from core.errors import NNLSConvergenceError

logger = logging.getLogger(__name__)


def nnls(
    A,
    b,
    tolerance: Optional[float] = None,
    max_iterations: Optional[int] = None,
) -> tuple[np.ndarray, float]:
    """
    Resuelve min ||A x - b||, x >= 0.

    Args:
        A: Matriz (filas, columnas).
        b: Lado derecho.
        tolerance: Umbral de actividad de los coeficientes.
        max_iterations: Tope de iteraciones internas (por defecto factor * columnas).

    Returns:
        (x, norma del residuo).

    Raises:
        NNLSConvergenceError: Si se agota el tope de iteraciones.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    n = A.shape[1]
    tolerance = float(tolerance or config_value("geometry", "nnls_activity_tolerance", 1e-9))
    if max_iterations is None:
        max_iterations = int(config_value("geometry", "nnls_iteration_factor", 100)) * max(n, 1)

    x = np.zeros(n)
    passive = np.zeros(n, dtype=bool)
    # Variables cuyo multiplicador resultó ser ruido numérico
    excluded = np.zeros(n, dtype=bool)
    gradient = A.T @ b
    # Multiplicadores por debajo de este umbral se consideran nulos
    dual_tolerance = tolerance * max(1.0, float(np.abs(gradient).max(initial=0.0)))
    iterations = 0

    while True:
        candidates = ~passive & ~excluded & (gradient > dual_tolerance)
        if not candidates.any():
            break
        entering = int(np.argmax(np.where(candidates, gradient, -np.inf)))
        passive[entering] = True
        first = True

        while True:
            iterations += 1
            if iterations > max_iterations:
                residual = float(np.linalg.norm(A @ x - b))
                raise NNLSConvergenceError(
                    f"NNLS sin converger en {max_iterations} iteraciones", residual
                )
            trial = np.zeros(n)
            trial[passive] = np.linalg.lstsq(A[:, passive], b, rcond=None)[0]
            if first and trial[entering] <= 0.0:
                passive[entering] = False
                excluded[entering] = True
                break
            first = False
            if np.all(trial[passive] > 0.0):
                x = trial
                excluded[:] = False
                break
            blocking = passive & (trial <= 0.0)
            step = np.min(x[blocking] / (x[blocking] - trial[blocking]))
            x = x + step * (trial - x)
            passive &= x > tolerance
            x[~passive] = 0.0

        gradient = A.T @ (b - A @ x)

    return x, float(np.linalg.norm(A @ x - b))
