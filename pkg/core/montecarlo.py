"""
WeylCone - Estimaciones Monte Carlo de los funcionales de G^♦ y W^♦.

Cada cono muestreado usa su propio flujo SeedSequence(seed).spawn(...)[i],
así que las estimaciones no dependen de n_jobs. El error estándar se
calcula entre conos.
"""
import logging
import math
from typing import Optional

import numpy as np
from joblib import Parallel, delayed
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt

from config import config_value
from core.arrangement import build_weyl_arrangement, chamber_generators, uniform_chamber
from core.combinatorics import chamber_value, default_table
from core.errors import (
    DegenerateSampleError,
    InvalidParameterError,
    NonPointedConeError,
    RejectionCapError,
)
from core.geometry.cones import (
    count_faces,
    is_full_space,
    meets_subspace,
    metric_projection,
    sample_dual_weyl_cone,
)
from core.geometry.sampling import (
    build_generators,
    make_rng,
    sample_points,
    seed_streams,
    uniform_subspace,
)
from models.cone_type import ConeType
from models.geometry import ConeGenerators, ConeSource, MCEstimate, SamplerConfig

logger = logging.getLogger(__name__)


def _mc_setting(key: str, default: int) -> int:
    return int(config_value("montecarlo", key, default))


def _require_samples(samples: int):
    if samples < 2:
        raise InvalidParameterError(f"Se necesitan al menos 2 muestras (recibidas {samples})")


def _run(worker, cfg: SamplerConfig, count: int, n_jobs: int, *args) -> list:
    return Parallel(n_jobs=n_jobs)(
        delayed(worker)(cfg, stream, *args) for stream in seed_streams(cfg.seed, count)
    )


def _redraw_cap() -> int:
    return int(config_value("geometry", "rejection_cap", 1_000_000))


def sample_weyl_chamber(cfg: SamplerConfig, variant: ConeType | str, rng: np.random.Generator) -> ConeGenerators:
    """W^♦_{n,d}: cámara uniforme del arreglo de Weyl de n puntos, como generadores."""
    variant = ConeType.parse(variant)
    try:
        for attempt in Retrying(
            stop=stop_after_attempt(_redraw_cap()),
            retry=retry_if_exception_type(DegenerateSampleError),
        ):
            with attempt:
                arr = build_weyl_arrangement(sample_points(cfg, rng), variant)
                chamber = uniform_chamber(arr, int(rng.integers(2**63)))
                gens = chamber_generators(chamber, arr)
    except RetryError as e:
        raise RejectionCapError("Sin cámara de Weyl válida", _redraw_cap()) from e
    return gens


# =============================================================================
# VOLÚMENES INTRÍNSECOS
# =============================================================================

def _iv_worker(cfg, stream, variant, gaussians):
    rng = make_rng(stream)
    gens, attempts = sample_dual_weyl_cone(cfg, variant, rng=rng)
    histogram = np.zeros(cfg.d + 1)
    for _ in range(gaussians):
        histogram[metric_projection(gens, rng.standard_normal(cfg.d)).face_dimension] += 1
    return histogram / gaussians, attempts


def mc_intrinsic_volumes(
    cfg: SamplerConfig,
    variant: ConeType | str,
    cone_samples: Optional[int] = None,
    gaussians_per_cone: Optional[int] = None,
    n_jobs: int = 1,
) -> list[MCEstimate]:
    """
    Estimaciones de E υ_k(G^♦_{n,d}), k = 0..d.

    Por cono aceptado se proyectan gaussianas y se registra el histograma
    de dimensiones de cara; luego se promedia entre conos.
    """
    variant = ConeType.parse(variant)
    cone_samples = cone_samples or _mc_setting("cone_samples", 1000)
    gaussians_per_cone = gaussians_per_cone or _mc_setting("gaussians_per_cone", 100)
    _require_samples(cone_samples)
    if gaussians_per_cone < 1:
        raise InvalidParameterError("gaussians_per_cone debe ser >= 1")

    results = _run(_iv_worker, cfg, cone_samples, n_jobs, variant, gaussians_per_cone)
    histograms = np.array([histogram for histogram, _ in results])
    accepted = cone_samples / sum(attempts for _, attempts in results)
    return [
        MCEstimate.from_values(histograms[:, k], seed=cfg.seed, accepted_fraction=accepted)
        for k in range(cfg.d + 1)
    ]


# =============================================================================
# QUERMASSINTEGRALES
# =============================================================================

def _quermass_worker(cfg, stream, variant, k, source, subspaces):
    rng = make_rng(stream)
    if source is ConeSource.DUAL_WEYL:
        gens, attempts = sample_dual_weyl_cone(cfg, variant, rng=rng)
    else:
        gens, attempts = sample_weyl_chamber(cfg, variant, rng), 1
    hits = 0
    for _ in range(subspaces):
        basis = uniform_subspace(cfg.d, cfg.d - k, rng)
        hits += meets_subspace(gens.columns, basis, rng)
    return 0.5 * hits / subspaces, attempts


def mc_quermassintegral(
    cfg: SamplerConfig,
    variant: ConeType | str,
    k: int,
    cone_source: ConeSource | str = ConeSource.DUAL_WEYL,
    samples: Optional[int] = None,
    subspaces_per_cone: Optional[int] = None,
    n_jobs: int = 1,
) -> MCEstimate:
    """
    Estimación de E U_k: la mitad de la frecuencia con que el cono corta
    no trivialmente un subespacio uniforme de dimensión d-k.

    Dual: k en 1..d (k = d da 0). Cámara de Weyl: k en 0..d-1 (k = 0 da 1/2).
    """
    variant = ConeType.parse(variant)
    source = ConeSource(cone_source)
    samples = samples or _mc_setting("cone_samples", 1000)
    subspaces_per_cone = subspaces_per_cone or _mc_setting("subspaces_per_cone", 1)
    _require_samples(samples)
    d = cfg.d
    low, high = (1, d) if source is ConeSource.DUAL_WEYL else (0, d - 1)
    if not low <= k <= high:
        raise InvalidParameterError(f"k={k} fuera de {low}..{high} para el cono {source.value}")
    if source is ConeSource.DUAL_WEYL and k == d:
        return MCEstimate(mean=0.0, stderr=0.0, samples=samples, seed=cfg.seed)
    if source is ConeSource.WEYL_CHAMBER and k == 0:
        return MCEstimate(mean=0.5, stderr=0.0, samples=samples, seed=cfg.seed)

    results = _run(_quermass_worker, cfg, samples, n_jobs, variant, k, source, subspaces_per_cone)
    values = [value for value, _ in results]
    accepted = samples / sum(attempts for _, attempts in results)
    return MCEstimate.from_values(values, seed=cfg.seed, accepted_fraction=accepted)


# =============================================================================
# NÚMEROS DE CARAS
# =============================================================================

def _faces_worker(cfg, stream, variant, k):
    rng = make_rng(stream)
    attempts_total = 0
    for attempt in Retrying(
        stop=stop_after_attempt(_redraw_cap()),
        retry=retry_if_exception_type(NonPointedConeError),
        reraise=True,
    ):
        with attempt:
            gens, attempts = sample_dual_weyl_cone(cfg, variant, rng=rng)
            attempts_total += attempts
            faces = count_faces(gens, k)
    if attempt.retry_state.attempt_number > 1:
        logger.info(f"[Caras] Cono no puntiagudo redibujado {attempt.retry_state.attempt_number - 1} veces")
    return faces, attempts_total


def mc_face_numbers(
    cfg: SamplerConfig,
    variant: ConeType | str,
    k: int,
    samples: Optional[int] = None,
    n_jobs: int = 1,
) -> MCEstimate:
    """Promedio de count_faces sobre conos G^♦_{n,d} aceptados, k en 1..d-1."""
    variant = ConeType.parse(variant)
    samples = samples or _mc_setting("cone_samples", 1000)
    _require_samples(samples)
    if not 1 <= k <= cfg.d - 1:
        raise InvalidParameterError(f"k={k} fuera de 1..{cfg.d - 1}")
    results = _run(_faces_worker, cfg, samples, n_jobs, variant, k)
    accepted = samples / sum(attempts for _, attempts in results)
    return MCEstimate.from_values([faces for faces, _ in results], seed=cfg.seed, accepted_fraction=accepted)


# =============================================================================
# DIMENSIÓN ESTADÍSTICA
# =============================================================================

STAT_DIM_ESTIMATORS = ("faces", "squared_norm")


def _stat_dim_worker(cfg, stream, variant, gaussians, estimator):
    rng = make_rng(stream)
    gens = sample_weyl_chamber(cfg, variant, rng)
    total = 0.0
    for _ in range(gaussians):
        result = metric_projection(gens, rng.standard_normal(cfg.d))
        if estimator == "faces":
            total += result.face_dimension
        else:
            total += float(result.projection @ result.projection)
    return total / gaussians


def mc_statistical_dimension(
    cfg: SamplerConfig,
    variant: ConeType | str,
    samples: Optional[int] = None,
    gaussians_per_chamber: Optional[int] = None,
    estimator: str = "faces",
    n_jobs: int = 1,
) -> MCEstimate:
    """
    Estimación de E Δ(W^♦_{n,d}) con cámaras uniformes y proyecciones gaussianas.

    estimator="faces" promedia la dimensión de la cara alcanzada;
    "squared_norm" promedia ||Π_W(g)||^2, que tiene la misma esperanza.
    """
    variant = ConeType.parse(variant)
    if estimator not in STAT_DIM_ESTIMATORS:
        raise InvalidParameterError(f"Estimador desconocido: {estimator}")
    samples = samples or _mc_setting("cone_samples", 1000)
    gaussians_per_chamber = gaussians_per_chamber or _mc_setting("gaussians_per_chamber", 500)
    _require_samples(samples)
    values = _run(_stat_dim_worker, cfg, samples, n_jobs, variant, gaussians_per_chamber, estimator)
    return MCEstimate.from_values(values, seed=cfg.seed)


# =============================================================================
# DIAGNÓSTICO DEL RECHAZO
# =============================================================================

def acceptance_diagnostic(cfg: SamplerConfig, variant: ConeType | str, trials: int) -> tuple[float, Optional[float]]:
    """
    Tasa empírica de aceptación del muestreo de G^♦ junto a D^♦(n,d) σ^n / n!.

    Solo se registra en el log; la identidad no se afirma.
    """
    variant = ConeType.parse(variant)
    if trials < 1:
        raise InvalidParameterError("trials debe ser >= 1")
    rng = make_rng(cfg.seed)
    accepted = 0
    for _ in range(trials):
        try:
            gens = build_generators(sample_points(cfg, rng), variant)
        except DegenerateSampleError:
            continue
        accepted += not is_full_space(gens)
    rate = accepted / trials
    reference = None
    if cfg.d <= cfg.n:
        n = cfg.n
        table = default_table(variant, n)
        reference = float(chamber_value(table, n, cfg.d) * variant.sigma ** n / math.factorial(n))
    logger.info(f"[Rechazo] Aceptación {rate:.4f} (referencia D·σ^n/n! = {reference})")
    return rate, reference