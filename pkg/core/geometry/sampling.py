"""
WeylCone - Muestreo reproducible.

Generador: PCG64 de numpy (np.random.default_rng). Regla de división de
flujos: la muestra i de una estimación usa el i-ésimo hijo de
SeedSequence(seed).spawn(...), de modo que el resultado no depende del
número de procesos.
"""
import logging
from typing import Optional

import numpy as np

from config import config_value
from core.errors import DegenerateSampleError, InvalidParameterError
from models.cone_type import ConeType
from models.geometry import ConeGenerators, Distribution, Provenance, SamplerConfig

logger = logging.getLogger(__name__)


def seed_streams(seed: int, count: int) -> list[np.random.SeedSequence]:
    """count flujos independientes derivados de seed."""
    return np.random.SeedSequence(seed).spawn(count)


def make_rng(seed_or_stream) -> np.random.Generator:
    return np.random.default_rng(seed_or_stream)


def sample_points(cfg: SamplerConfig, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """
    n puntos i.i.d. en R^d (filas), gaussianos estándar o uniformes en la esfera.

    Sin rng se usa default_rng(cfg.seed), así que dos llamadas con la misma
    semilla dan el mismo resultado.
    """
    rng = rng or make_rng(cfg.seed)
    points = rng.standard_normal((cfg.n, cfg.d))
    if cfg.distribution is Distribution.UNIFORM_SPHERE:
        norms = np.linalg.norm(points, axis=1, keepdims=True)
        if np.any(norms == 0.0):
            raise DegenerateSampleError("Punto gaussiano nulo al proyectar sobre la esfera")
        points = points / norms
    return points


def build_generators(points, variant: ConeType | str) -> ConeGenerators:
    """
    Generadores del cono dual de Weyl.

    A: Y_i - Y_{i+1}, i = 1..n-1. B: las mismas diferencias y además Y_n.

    Raises:
        InvalidParameterError: Con menos de 2 puntos (A) o ninguno (B).
        DegenerateSampleError: Si alguna columna es nula.
    """
    variant = ConeType.parse(variant)
    points = np.array(points, dtype=float, ndmin=2)
    minimum = 2 if variant is ConeType.A else 1
    if points.shape[0] < minimum:
        raise InvalidParameterError(f"El tipo {variant.value} requiere al menos {minimum} puntos")

    columns = (points[:-1] - points[1:]).T
    provenance = Provenance.TYPE_A_DIFFERENCES
    if variant is ConeType.B:
        columns = np.column_stack([columns, points[-1]])
        provenance = Provenance.TYPE_B_DIFFERENCES_PLUS_LAST

    tolerance = float(config_value("geometry", "zero_norm_tolerance", 1e-12))
    if np.any(np.linalg.norm(columns, axis=0) <= tolerance):
        raise DegenerateSampleError("Generador nulo en la muestra")
    return ConeGenerators(columns=columns, variant=variant, provenance=provenance)


def uniform_subspace(d: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    """
    Base ortonormal (d x dim) de un subespacio uniforme de dimensión dim.

    QR de una matriz gaussiana con los signos de la diagonal de R fijados,
    que da la ley de Haar.
    """
    if not 0 <= dim <= d:
        raise InvalidParameterError(f"Dimensión {dim} fuera de 0..{d}")
    if dim == 0:
        return np.zeros((d, 0))
    q, r = np.linalg.qr(rng.standard_normal((d, dim)))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs
