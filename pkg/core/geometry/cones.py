"""
WeylCone - Conos poliédricos: pruebas por programación lineal,
proyección métrica, caras y rayos extremos.
"""
import itertools
import logging
import math
from typing import Optional

import numpy as np
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt

from config import config_value
from core.errors import (
    DegenerateSampleError,
    GuardError,
    InvalidParameterError,
    LPSolverError,
    NonPointedConeError,
    RejectionCapError,
)
from core.geometry.lp import LPStatus, linprog
from core.geometry.nnls import nnls
from core.geometry.sampling import build_generators, make_rng, sample_points
from models.cone_type import ConeType
from models.geometry import ConeGenerators, ProjectionResult, SamplerConfig

logger = logging.getLogger(__name__)


def _tolerance(key: str, default: float) -> float:
    return float(config_value("geometry", key, default))


# =============================================================================
# PRUEBAS POR LP
# =============================================================================

def is_full_space(gens: ConeGenerators) -> bool:
    """
    True si pos(columnas) = R^d.

    Equivale a que el dual {u : <u, v_i> <= 0} sea {0}: para cada objetivo
    ±e_j se maximiza sobre la caja [-1, 1]^d y el óptimo debe ser <= tol.
    """
    d = gens.d
    tolerance = _tolerance("lp_tolerance", 1e-9)
    box = [(-1.0, 1.0)] * d
    for j in range(d):
        for sign in (1.0, -1.0):
            objective = np.zeros(d)
            objective[j] = -sign
            result = linprog(objective, A_ub=gens.columns.T, b_ub=np.zeros(gens.m), bounds=box)
            if result.status is not LPStatus.OPTIMAL:
                raise LPSolverError(f"LP de espacio completo terminó como {result.status.value}")
            if -result.objective > tolerance:
                return False
    return True


def is_pointed(gens: ConeGenerators) -> bool:
    """False si existe λ >= 0, 1ᵀλ = 1 con Vλ = 0 (el cono contiene una recta)."""
    m = gens.m
    A_eq = np.vstack([gens.columns, np.ones((1, m))])
    b_eq = np.concatenate([np.zeros(gens.d), [1.0]])
    result = linprog(np.zeros(m), A_eq=A_eq, b_eq=b_eq)
    return result.status is LPStatus.INFEASIBLE


class _FullSpaceSample(DegenerateSampleError):
    """La envolvente positiva es todo el espacio; la muestra se rechaza."""


def sample_dual_weyl_cone(
    cfg: SamplerConfig,
    variant: ConeType | str,
    rng: Optional[np.random.Generator] = None,
    max_attempts: Optional[int] = None,
) -> tuple[ConeGenerators, int]:
    """
    Muestreo por rechazo de G^♦_{n,d}: se sortean puntos hasta que la
    envolvente positiva de los generadores no sea R^d.

    Returns:
        (generadores aceptados, intentos usados).

    Raises:
        RejectionCapError: Si se agotan los intentos.
    """
    variant = ConeType.parse(variant)
    rng = rng or make_rng(cfg.seed)
    cap = int(max_attempts or config_value("geometry", "rejection_cap", 1_000_000))

    def draw() -> ConeGenerators:
        gens = build_generators(sample_points(cfg, rng), variant)
        if is_full_space(gens):
            raise _FullSpaceSample("Envolvente positiva igual a R^d")
        return gens

    try:
        for attempt in Retrying(
            stop=stop_after_attempt(cap),
            retry=retry_if_exception_type(DegenerateSampleError),
        ):
            with attempt:
                gens = draw()
    except RetryError as e:
        raise RejectionCapError(
            f"Muestreo de G^{variant.value}_{{{cfg.n},{cfg.d}}} sin aceptar", cap
        ) from e
    attempts = attempt.retry_state.attempt_number
    if attempts > 1:
        logger.debug(f"[Muestreo] Cono aceptado tras {attempts} intentos")
    return gens, attempts


# =============================================================================
# CARAS
# =============================================================================

def count_faces(gens: ConeGenerators, k: int) -> int:
    """
    Número de k-caras de pos(columnas), 1 <= k <= d-1.

    Un k-subconjunto S genera una cara si rank(S) = k y existe u con
    <u, v> = 0 en S y <u, v> <= -1 fuera de S.

    Raises:
        InvalidParameterError: Si k está fuera de 1..d-1.
        GuardError: Si hay más generadores que el límite configurado.
        NonPointedConeError: Si el cono contiene una recta.
    """
    d, m = gens.d, gens.m
    if not 1 <= k <= d - 1:
        raise InvalidParameterError(f"k={k} fuera de 1..{d - 1}")
    guard = int(config_value("geometry", "face_count_max_generators", 14))
    if m > guard:
        raise GuardError(f"count_faces admite hasta {guard} generadores (recibidos {m})")
    if not is_pointed(gens):
        raise NonPointedConeError("El cono no es puntiagudo; no se cuentan caras")

    rank_tolerance = _tolerance("rank_tolerance", 1e-9)
    V = gens.columns
    count = 0
    for subset in itertools.combinations(range(m), k):
        inside = list(subset)
        if np.linalg.matrix_rank(V[:, inside], tol=rank_tolerance) != k:
            continue
        outside = [i for i in range(m) if i not in subset]
        try:
            result = linprog(
                np.zeros(d),
                A_ub=V[:, outside].T if outside else None,
                b_ub=-np.ones(len(outside)) if outside else None,
                A_eq=V[:, inside].T,
                b_eq=np.zeros(k),
                bounds=[(None, None)] * d,
            )
        except LPSolverError as e:
            logger.warning(f"[Caras] LP fallido para el subconjunto {subset}: {e}")
            raise
        if result.status is LPStatus.OPTIMAL:
            count += 1
    return count


# =============================================================================
# PROYECCIÓN MÉTRICA
# =============================================================================

def metric_projection(gens: ConeGenerators, point) -> ProjectionResult:
    """
    Punto más cercano de pos(columnas) a point, por NNLS.

    face_dimension es el rango de los generadores con coeficiente activo.
    """
    point = np.asarray(point, dtype=float)
    if point.shape != (gens.d,) or not np.all(np.isfinite(point)):
        raise InvalidParameterError("El punto debe ser un vector finito de dimensión d")
    coefficients, _ = nnls(gens.columns, point)
    projection = gens.columns @ coefficients
    active = coefficients > _tolerance("nnls_activity_tolerance", 1e-9)
    if not active.any():
        face_dimension = 0
    else:
        face_dimension = int(
            np.linalg.matrix_rank(gens.columns[:, active], tol=_tolerance("rank_tolerance", 1e-9))
        )
    return ProjectionResult(
        projection=projection,
        coefficients=coefficients,
        face_dimension=face_dimension,
    )


# =============================================================================
# RAYOS EXTREMOS Y DUALIDAD
# =============================================================================

def extreme_rays(normals) -> np.ndarray:
    """
    Rayos extremos (unitarios, en columnas) de {u : N u <= 0}.

    Cada rayo anula d-1 filas linealmente independientes de N; se toma el
    vector nulo de ese subsistema con el signo que satisface el resto.

    Raises:
        NonPointedConeError: Si el cono contiene una recta.
        GuardError: Si hay demasiados subconjuntos que revisar.
    """
    N = np.array(normals, dtype=float, ndmin=2)
    rows, d = N.shape
    tolerance = _tolerance("lp_tolerance", 1e-9)
    rank_tolerance = _tolerance("rank_tolerance", 1e-9)
    if rows == 0 or np.linalg.matrix_rank(N, tol=rank_tolerance) < d:
        raise NonPointedConeError("El sistema de desigualdades tiene espacio de linealidad")
    if d == 1:
        kept = [u for u in (np.array([1.0]), np.array([-1.0])) if np.all(N @ u <= tolerance)]
        return np.column_stack(kept) if kept else np.zeros((1, 0))

    guard = int(config_value("geometry", "extreme_ray_max_subsets", 200_000))
    if math.comb(rows, d - 1) > guard:
        raise GuardError(f"Demasiados subsistemas para enumerar rayos ({math.comb(rows, d - 1)})")

    rays: dict[tuple, np.ndarray] = {}
    for subset in itertools.combinations(range(rows), d - 1):
        block = N[list(subset)]
        _, singular, vt = np.linalg.svd(block)
        if singular.size < d - 1 or singular[-1] <= rank_tolerance:
            continue
        direction = vt[-1]
        for candidate in (direction, -direction):
            if np.all(N @ candidate <= tolerance):
                key = tuple(np.round(candidate, 8))
                rays.setdefault(key, candidate / np.linalg.norm(candidate))
                break
    if not rays:
        return np.zeros((d, 0))
    return np.column_stack([rays[key] for key in sorted(rays)])


def dual_cone(gens: ConeGenerators) -> ConeGenerators:
    """Generadores del cono dual {u : <u, v_i> <= 0 para todo i}."""
    return ConeGenerators(columns=extreme_rays(gens.columns.T), variant=gens.variant)


def meets_subspace(V: np.ndarray, basis: np.ndarray, rng: np.random.Generator) -> bool:
    """
    True si pos(V) ∩ W ≠ {0}, W = span(basis).

    LP: λ >= 0, 1ᵀλ = 1, P_{W⊥} V λ = 0. Si la solución da V λ casi nula se
    resuelve de nuevo maximizando ±<r, V λ> con r aleatorio en W.
    """
    d, m = V.shape
    complement = np.eye(d) - basis @ basis.T
    A_eq = np.vstack([complement @ V, np.ones((1, m))])
    b_eq = np.concatenate([np.zeros(d), [1.0]])
    result = linprog(np.zeros(m), A_eq=A_eq, b_eq=b_eq)
    if result.status is LPStatus.INFEASIBLE:
        return False
    if result.status is not LPStatus.OPTIMAL:
        raise LPSolverError(f"LP de intersección terminó como {result.status.value}")
    threshold = _tolerance("lp_tolerance", 1e-9)
    if np.linalg.norm(V @ result.x) > threshold:
        return True

    direction = basis @ rng.standard_normal(basis.shape[1])
    for sign in (1.0, -1.0):
        retry = linprog(-sign * (V.T @ direction), A_eq=A_eq, b_eq=b_eq)
        if retry.status is LPStatus.OPTIMAL and np.linalg.norm(V @ retry.x) > threshold:
            logger.info("[Intersección] Solución casi nula resuelta con un funcional aleatorio")
            return True
    logger.info("[Intersección] Solo se encontró el origen; se cuenta como intersección trivial")
    return False
