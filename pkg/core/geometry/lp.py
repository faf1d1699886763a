"""
WeylCone - Símplex denso de dos fases.

Resuelve min c·x sujeto a A x = b, x >= 0 sobre una tabla numpy, con la
regla de Bland contra el ciclado y una tolerancia de factibilidad fija.
Los problemas de este proyecto son diminutos (unas decenas de variables).
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from config import config_value
from core.errors import InvalidParameterError, LPSolverError

logger = logging.getLogger(__name__)


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    x: Optional[np.ndarray] = None
    objective: Optional[float] = None
    iterations: int = 0

    @property
    def feasible(self) -> bool:
        return self.status is not LPStatus.INFEASIBLE


class SimplexSolver:
    """
    Símplex primal en forma de tabla.

    La última fila guarda los costos reducidos y, en su última columna,
    menos el valor del objetivo.
    """

    def __init__(self, tolerance: Optional[float] = None, max_iterations: Optional[int] = None):
        self.tolerance = float(tolerance or config_value("geometry", "lp_tolerance", 1e-9))
        self.max_iterations = int(max_iterations or config_value("geometry", "lp_max_iterations", 5000))

    # -------------------------------------------------------------------------
    # Pivoteo
    # -------------------------------------------------------------------------

    def _entering(self, tableau: np.ndarray, columns: int) -> Optional[int]:
        """Bland: la primera columna con costo reducido negativo."""
        reduced = tableau[-1, :columns]
        candidates = np.flatnonzero(reduced < -self.tolerance)
        return int(candidates[0]) if candidates.size else None

    def _leaving(self, tableau: np.ndarray, column: int, basis: list[int]) -> Optional[int]:
        """Cociente mínimo; los empates se rompen por el menor índice básico."""
        entries = tableau[:-1, column]
        rows = np.flatnonzero(entries > self.tolerance)
        if rows.size == 0:
            return None
        ratios = tableau[rows, -1] / entries[rows]
        best = ratios.min()
        tied = rows[ratios <= best + self.tolerance * max(1.0, abs(best))]
        return int(min(tied, key=lambda r: basis[r]))

    @staticmethod
    def _pivot(tableau: np.ndarray, row: int, column: int):
        tableau[row] /= tableau[row, column]
        for i in range(tableau.shape[0]):
            if i != row and tableau[i, column] != 0.0:
                tableau[i] -= tableau[i, column] * tableau[row]

    def _iterate(self, tableau: np.ndarray, basis: list[int], columns: int, budget: int) -> tuple[bool, int]:
        """Pivotea hasta el óptimo. Devuelve (acotado, iteraciones)."""
        iterations = 0
        while True:
            column = self._entering(tableau, columns)
            if column is None:
                return True, iterations
            row = self._leaving(tableau, column, basis)
            if row is None:
                return False, iterations
            self._pivot(tableau, row, column)
            basis[row] = column
            iterations += 1
            if iterations > budget:
                raise LPSolverError(f"El símplex superó {self.max_iterations} iteraciones")

    # -------------------------------------------------------------------------
    # Forma estándar
    # -------------------------------------------------------------------------

    def solve_standard(self, c, A, b) -> LPResult:
        """min c·x con A x = b, x >= 0."""
        c = np.asarray(c, dtype=float)
        A = np.array(A, dtype=float, ndmin=2)
        b = np.array(b, dtype=float)
        rows, n = A.shape
        if c.shape != (n,) or b.shape != (rows,):
            raise InvalidParameterError("Dimensiones incompatibles en el programa lineal")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b)) and np.all(np.isfinite(c))):
            raise LPSolverError("El programa lineal contiene valores no finitos")

        negative = b < 0
        A[negative] *= -1.0
        b[negative] *= -1.0

        # Fase 1: una artificial por fila
        tableau = np.zeros((rows + 1, n + rows + 1))
        tableau[:rows, :n] = A
        tableau[:rows, n:n + rows] = np.eye(rows)
        tableau[:rows, -1] = b
        tableau[-1, :n] = -A.sum(axis=0)
        tableau[-1, -1] = -b.sum()
        basis = list(range(n, n + rows))

        try:
            _, used = self._iterate(tableau, basis, n + rows, self.max_iterations)
        except LPSolverError as e:
            raise LPSolverError(str(e), float(np.linalg.cond(A))) from e
        infeasibility = -tableau[-1, -1]
        if infeasibility > self.tolerance * max(1.0, float(np.abs(b).max(initial=0.0))):
            return LPResult(LPStatus.INFEASIBLE, iterations=used)

        # Sacar artificiales de la base; las filas sin pivote son redundantes
        keep = []
        for row in range(rows):
            if basis[row] >= n:
                pivots = np.flatnonzero(np.abs(tableau[row, :n]) > self.tolerance)
                if pivots.size == 0:
                    continue
                self._pivot(tableau, row, int(pivots[0]))
                basis[row] = int(pivots[0])
            keep.append(row)

        # Fase 2
        phase_two = np.zeros((len(keep) + 1, n + 1))
        phase_two[:-1, :n] = tableau[keep, :n]
        phase_two[:-1, -1] = tableau[keep, -1]
        basis = [basis[row] for row in keep]
        phase_two[-1, :n] = c
        for row, column in enumerate(basis):
            phase_two[-1] -= c[column] * phase_two[row]

        try:
            bounded, more = self._iterate(phase_two, basis, n, self.max_iterations - used)
        except LPSolverError as e:
            raise LPSolverError(str(e), float(np.linalg.cond(A))) from e
        if not bounded:
            return LPResult(LPStatus.UNBOUNDED, iterations=used + more)

        x = np.zeros(n)
        for row, column in enumerate(basis):
            x[column] = max(phase_two[row, -1], 0.0)
        return LPResult(LPStatus.OPTIMAL, x=x, objective=float(c @ x), iterations=used + more)


# =============================================================================
# INTERFAZ GENERAL
# =============================================================================

Bounds = Sequence[tuple[Optional[float], Optional[float]]]


def linprog(
    c,
    A_ub=None,
    b_ub=None,
    A_eq=None,
    b_eq=None,
    bounds: Optional[Bounds] = None,
    solver: Optional[SimplexSolver] = None,
) -> LPResult:
    """
    min c·x sujeto a A_ub x <= b_ub, A_eq x = b_eq y cotas por variable.

    Cada cota es (inferior, superior) con None para infinito; por defecto
    (0, None). Las variables libres se escriben como diferencia de dos
    no negativas y las cotas superiores pasan a filas con holgura.
    """
    c = np.asarray(c, dtype=float)
    n = c.size
    bounds = list(bounds) if bounds is not None else [(0.0, None)] * n
    if len(bounds) != n:
        raise InvalidParameterError("Se necesita una cota por variable")
    solver = solver or SimplexSolver()

    # x = offset + transform @ z, z >= 0
    offset = np.zeros(n)
    columns = []
    upper_rows = []
    for j, (low, high) in enumerate(bounds):
        unit = np.zeros(n)
        unit[j] = 1.0
        if low is not None:
            offset[j] = low
            columns.append(unit)
            if high is not None:
                upper_rows.append((len(columns) - 1, high - low))
        elif high is not None:
            offset[j] = high
            columns.append(-unit)
        else:
            columns.append(unit)
            columns.append(-unit)
    transform = np.column_stack(columns) if columns else np.zeros((n, 0))
    width = transform.shape[1]

    blocks_ub = []
    rhs_ub = []
    if A_ub is not None:
        A_ub = np.array(A_ub, dtype=float, ndmin=2)
        blocks_ub.append(A_ub @ transform)
        rhs_ub.append(np.asarray(b_ub, dtype=float) - A_ub @ offset)
    for column, limit in upper_rows:
        row = np.zeros((1, width))
        row[0, column] = 1.0
        blocks_ub.append(row)
        rhs_ub.append(np.array([limit]))
    G = np.vstack(blocks_ub) if blocks_ub else np.zeros((0, width))
    h = np.concatenate(rhs_ub) if rhs_ub else np.zeros(0)

    if A_eq is not None:
        A_eq = np.array(A_eq, dtype=float, ndmin=2)
        E = A_eq @ transform
        f = np.asarray(b_eq, dtype=float) - A_eq @ offset
    else:
        E = np.zeros((0, width))
        f = np.zeros(0)

    slacks = G.shape[0]
    A_std = np.vstack([
        np.hstack([G, np.eye(slacks)]),
        np.hstack([E, np.zeros((E.shape[0], slacks))]),
    ])
    b_std = np.concatenate([h, f])
    c_std = np.concatenate([transform.T @ c, np.zeros(slacks)])

    if A_std.shape[0] == 0:
        # Sin restricciones: óptimo en z = 0 salvo dirección de descenso
        if np.any(c_std < -solver.tolerance):
            return LPResult(LPStatus.UNBOUNDED)
        return LPResult(LPStatus.OPTIMAL, x=offset.copy(), objective=float(c @ offset))

    result = solver.solve_standard(c_std, A_std, b_std)
    if result.status is not LPStatus.OPTIMAL:
        return result
    x = offset + transform @ result.x[:width]
    return LPResult(LPStatus.OPTIMAL, x=x, objective=float(c @ x), iterations=result.iterations)
