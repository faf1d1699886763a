"""
WeylCone - Teselaciones de Weyl.

Construye los arreglos de hiperplanos (Y_i - Y_j)^⊥ (tipo A), más
(Y_i + Y_j)^⊥ e Y_i^⊥ (tipo B), enumera sus cámaras por búsqueda en
anchura con volteos certificados por LP, verifica el conteo D^♦(n,d) y
elige una cámara uniforme: el cono aleatorio de Weyl W^♦_{n,d}.
"""
import itertools
import logging
import math
import weakref
from collections import deque
from typing import Iterable, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt

from config import config_value
from core.combinatorics import chamber_value, default_table
from core.errors import (
    DegenerateSampleError,
    GuardError,
    InvalidParameterError,
    LPSolverError,
    WeylConeError,
)
from core.geometry.cones import extreme_rays
from core.geometry.lp import LPStatus, linprog
from core.geometry.sampling import make_rng, sample_points
from models.arrangement import (
    Chamber,
    ChamberVerificationReport,
    ChamberVerificationRow,
    HyperplaneArrangement,
)
from models.cone_type import ConeType
from models.geometry import ConeGenerators, Distribution, SamplerConfig

logger = logging.getLogger(__name__)

_chamber_cache: "weakref.WeakKeyDictionary[HyperplaneArrangement, tuple[Chamber, ...]]" = (
    weakref.WeakKeyDictionary()
)


def _setting(key: str, default):
    return config_value("arrangement", key, default)


# =============================================================================
# CONSTRUCCIÓN
# =============================================================================

def arrangement_from_normals(
    normals,
    variant: Optional[ConeType] = None,
    source_n: int = 0,
) -> HyperplaneArrangement:
    """
    Arreglo central con las normales dadas (una por fila), normalizadas.

    Raises:
        DegenerateSampleError: Si alguna normal es nula.
    """
    normals = np.array(normals, dtype=float, ndmin=2)
    norms = np.linalg.norm(normals, axis=1)
    if np.any(norms <= float(config_value("geometry", "zero_norm_tolerance", 1e-12))):
        raise DegenerateSampleError("Normal nula en el arreglo")
    normals = normals / norms[:, None]

    tolerance = float(_setting("parallel_tolerance", 1e-9))
    gram = np.abs(normals @ normals.T)
    parallel = tuple(
        (i, j)
        for i, j in itertools.combinations(range(len(normals)), 2)
        if gram[i, j] > 1.0 - tolerance
    )
    if parallel:
        logger.warning(f"[Arreglo] {len(parallel)} pares de normales paralelas")
    return HyperplaneArrangement(
        normals=normals, variant=variant, source_n=source_n, parallel_pairs=parallel
    )


def build_weyl_arrangement(points, variant: ConeType | str) -> HyperplaneArrangement:
    """
    Arreglo de Weyl de los puntos Y_1..Y_n (filas de points).

    A: n(n-1)/2 normales Y_i - Y_j (i < j). B: además Y_i + Y_j (i < j) e
    Y_i, en total n^2.
    """
    variant = ConeType.parse(variant)
    points = np.array(points, dtype=float, ndmin=2)
    n = points.shape[0]
    if n < 2:
        raise InvalidParameterError(f"Se necesitan al menos 2 puntos (recibidos {n})")
    normals = []
    for i, j in itertools.combinations(range(n), 2):
        normals.append(points[i] - points[j])
        if variant is ConeType.B:
            normals.append(points[i] + points[j])
    if variant is ConeType.B:
        normals.extend(points)
    return arrangement_from_normals(np.array(normals), variant=variant, source_n=n)


# =============================================================================
# ENUMERACIÓN DE CÁMARAS
# =============================================================================

def chamber_witness(arr: HyperplaneArrangement, signs: Sequence[int]) -> tuple[np.ndarray, float]:
    """
    Punto de máxima holgura: max t con signs_j <a_j, u> >= t, u en [-1, 1]^d, t en [0, 1].

    Returns:
        (u, t); la cámara es no vacía si t supera la tolerancia de margen.
    """
    d, m = arr.d, arr.m
    signed = np.asarray(signs, dtype=float)[:, None] * arr.normals
    A_ub = np.hstack([-signed, np.ones((m, 1))])
    objective = np.zeros(d + 1)
    objective[-1] = -1.0
    result = linprog(
        objective,
        A_ub=A_ub,
        b_ub=np.zeros(m),
        bounds=[(-1.0, 1.0)] * d + [(0.0, 1.0)],
    )
    if result.status is not LPStatus.OPTIMAL:
        raise LPSolverError(f"LP de testigo terminó como {result.status.value}")
    return result.x[:d], float(result.x[-1])


def _parallel_classes(arr: HyperplaneArrangement) -> list[list[int]]:
    """Clases de hiperplanos coincidentes; se voltean juntas."""
    parent = list(range(arr.m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in arr.parallel_pairs:
        parent[find(i)] = find(j)
    classes: dict[int, list[int]] = {}
    for i in range(arr.m):
        classes.setdefault(find(i), []).append(i)
    return list(classes.values())


def chamber_bound(arr: HyperplaneArrangement) -> int:
    """Cota superior del número de cámaras."""
    m, d = arr.m, arr.d
    bound = 2 * sum(math.comb(m - 1, i) for i in range(min(d, m)))
    if arr.variant is not None and arr.source_n >= 1:
        n = arr.source_n
        table = default_table(arr.variant, n)
        bound = min(bound, chamber_value(table, n, min(d, n)))
    return bound


def _start_chamber(arr: HyperplaneArrangement, seed: int) -> Chamber:
    rng = make_rng(seed)
    margin_tolerance = float(_setting("margin_tolerance", 1e-9))

    def draw() -> Chamber:
        products = arr.normals @ rng.standard_normal(arr.d)
        signs = tuple(1 if p >= 0 else -1 for p in products)
        witness, margin = chamber_witness(arr, signs)
        if margin <= margin_tolerance:
            raise DegenerateSampleError("Testigo inicial sobre un hiperplano")
        return Chamber(signs=signs, witness=witness, margin=margin)

    try:
        for attempt in Retrying(
            stop=stop_after_attempt(10),
            retry=retry_if_exception_type(DegenerateSampleError),
        ):
            with attempt:
                start = draw()
    except RetryError as e:
        raise LPSolverError("No se encontró una cámara inicial") from e
    return start


def enumerate_chambers(
    arr: HyperplaneArrangement,
    seed: int = 0,
    use_cache: bool = True,
) -> tuple[Chamber, ...]:
    """
    Todas las cámaras del arreglo, en orden canónico (vectores de signos ordenados).

    Búsqueda en anchura desde la cámara de un testigo aleatorio; los
    vecinos se obtienen volteando una clase de hiperplanos y se aceptan si
    el LP de holgura máxima encuentra un punto interior.

    Raises:
        GuardError: Si m o la cota de cámaras superan los límites.
    """
    if use_cache and arr in _chamber_cache:
        return _chamber_cache[arr]

    max_hyperplanes = int(_setting("max_hyperplanes", 40))
    if arr.m > max_hyperplanes:
        raise GuardError(f"El arreglo tiene {arr.m} hiperplanos (límite {max_hyperplanes})")
    bound = chamber_bound(arr)
    max_chambers = int(_setting("max_chambers", 1_000_000))
    if bound > max_chambers:
        raise GuardError(f"Hasta {bound} cámaras esperadas (límite {max_chambers})")

    margin_tolerance = float(_setting("margin_tolerance", 1e-9))
    classes = _parallel_classes(arr)
    start = _start_chamber(arr, seed)
    found = {start.signs: start}
    rejected: set[tuple[int, ...]] = set()
    queue = deque([start])

    while queue:
        chamber = queue.popleft()
        for members in classes:
            signs = list(chamber.signs)
            for j in members:
                signs[j] = -signs[j]
            candidate = tuple(signs)
            if candidate in found or candidate in rejected:
                continue
            try:
                witness, margin = chamber_witness(arr, candidate)
            except LPSolverError as e:
                logger.warning(f"[Arreglo] LP fallido para el candidato {candidate}: {e}")
                rejected.add(candidate)
                continue
            if margin > margin_tolerance:
                neighbor = Chamber(signs=candidate, witness=witness, margin=margin)
                found[candidate] = neighbor
                queue.append(neighbor)
            else:
                rejected.add(candidate)

    chambers = tuple(found[signs] for signs in sorted(found))
    logger.debug(f"[Arreglo] {len(chambers)} cámaras con {arr.m} hiperplanos en R^{arr.d}")
    if use_cache:
        _chamber_cache[arr] = chambers
    return chambers


def uniform_chamber(arr: HyperplaneArrangement, seed: int) -> Chamber:
    """Una cámara elegida uniformemente; el cono {u : s_j <a_j, u> >= 0} es W^♦_{n,d}."""
    chambers = enumerate_chambers(arr)
    return chambers[int(make_rng(seed).integers(len(chambers)))]


def chamber_generators(chamber: Chamber, arr: HyperplaneArrangement) -> ConeGenerators:
    """
    Generadores de la cámara como cono.

    Rayos extremos de la parte puntiaguda (intersección con el complemento
    ortogonal del espacio de linealidad) más ± una base de ese espacio.
    """
    signed = -np.asarray(chamber.signs, dtype=float)[:, None] * arr.normals
    _, singular, vt = np.linalg.svd(arr.normals)
    rank = int(np.sum(singular > float(config_value("geometry", "rank_tolerance", 1e-9))))
    lineality = vt[rank:].T
    if lineality.shape[1] == 0:
        columns = extreme_rays(signed)
    else:
        pointed = extreme_rays(np.vstack([signed, lineality.T, -lineality.T]))
        columns = np.hstack([pointed, lineality, -lineality])
    return ConeGenerators(columns=columns, variant=arr.variant)


# =============================================================================
# VERIFICACIÓN DEL CONTEO
# =============================================================================

def _verification_row(n: int, d: int, variant: ConeType, seed: int, distribution: Distribution, expected: int):
    try:
        points = sample_points(SamplerConfig(distribution=distribution, seed=seed, d=d, n=n))
        chambers = enumerate_chambers(build_weyl_arrangement(points, variant), seed=seed)
    except WeylConeError as e:
        logger.warning(f"[Verificación] seed={seed} {distribution.value}: {e}")
        return ChamberVerificationRow(
            seed=seed, distribution=distribution, enumerated=None,
            expected=expected, match=False, error=str(e),
        )
    return ChamberVerificationRow(
        seed=seed,
        distribution=distribution,
        enumerated=len(chambers),
        expected=expected,
        match=len(chambers) == expected,
    )


def verify_chamber_count(
    n: int,
    d: int,
    variant: ConeType | str,
    seeds: Iterable[int],
    distributions: Sequence[Distribution] = (Distribution.STANDARD_GAUSSIAN, Distribution.UNIFORM_SPHERE),
    n_jobs: int = 1,
) -> ChamberVerificationReport:
    """
    Enumera las cámaras para cada semilla y distribución y compara con D^♦(n, min(d, n)).

    Los errores de enumeración quedan en la fila correspondiente.
    """
    variant = ConeType.parse(variant)
    if n < 2 or d < 1:
        raise InvalidParameterError(f"Se requiere n >= 2 y d >= 1 (n={n}, d={d})")
    expected = chamber_value(default_table(variant, n), n, min(d, n))
    tasks = [(seed, Distribution(dist)) for seed in seeds for dist in distributions]
    rows = Parallel(n_jobs=n_jobs)(
        delayed(_verification_row)(n, d, variant, seed, dist, expected) for seed, dist in tasks
    )
    report = ChamberVerificationReport(n=n, d=d, variant=variant, rows=list(rows))
    logger.info(
        f"[Verificación] D^{variant.value}({n},{d}) = {expected}: "
        f"{sum(row.match for row in report.rows)}/{len(report.rows)} coincidencias"
    )
    return report


# =============================================================================
# CARAS DE UNA CÁMARA
# =============================================================================

def count_chamber_faces(chamber: Chamber, arr: HyperplaneArrangement, k: int) -> int:
    """
    Número de k-caras de la cámara (representación por hiperplanos).

    Una cara es la cámara cortada con un conjunto cerrado J de hiperplanos;
    existe si el LP con igualdades en J y holgura positiva fuera de J es
    factible, y su dimensión es d - rank(J). Con espacio de linealidad no
    hay 0-caras.

    Raises:
        GuardError: Si d > 3 o m > 12.
        InvalidParameterError: Si k está fuera de 0..d.
    """
    d, m = arr.d, arr.m
    if d > int(_setting("face_max_dimension", 3)) or m > int(_setting("face_max_hyperplanes", 12)):
        raise GuardError(f"Conteo de caras limitado a d <= 3 y m <= 12 (d={d}, m={m})")
    if not 0 <= k <= d:
        raise InvalidParameterError(f"k={k} fuera de 0..{d}")
    rank_tolerance = float(config_value("geometry", "rank_tolerance", 1e-9))
    full_rank = int(np.linalg.matrix_rank(arr.normals, tol=rank_tolerance))
    if k == d:
        return 1
    if k == 0:
        if full_rank < d:
            logger.info("[Caras] Cámara con espacio de linealidad: f_0 = 0")
        return 1 if full_rank == d else 0

    codim = d - k
    if codim > full_rank:
        return 0
    margin_tolerance = float(_setting("margin_tolerance", 1e-9))
    signs = np.asarray(chamber.signs, dtype=float)
    seen: set[frozenset] = set()
    count = 0
    for subset in itertools.combinations(range(m), codim):
        block = arr.normals[list(subset)]
        if np.linalg.matrix_rank(block, tol=rank_tolerance) != codim:
            continue
        closure = frozenset(
            j for j in range(m)
            if np.linalg.matrix_rank(np.vstack([block, arr.normals[j]]), tol=rank_tolerance) == codim
        )
        if closure in seen:
            continue
        seen.add(closure)
        outside = [j for j in range(m) if j not in closure]
        if not outside:
            count += 1
            continue
        signed = signs[outside, None] * arr.normals[outside]
        result = linprog(
            np.r_[np.zeros(d), -1.0],
            A_ub=np.hstack([-signed, np.ones((len(outside), 1))]),
            b_ub=np.zeros(len(outside)),
            A_eq=np.hstack([arr.normals[sorted(closure)], np.zeros((len(closure), 1))]),
            b_eq=np.zeros(len(closure)),
            bounds=[(-1.0, 1.0)] * d + [(0.0, 1.0)],
        )
        if result.status is LPStatus.OPTIMAL and result.x[-1] > margin_tolerance:
            count += 1
    return count
