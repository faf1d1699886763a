"""
WeylCone - Ley de S_n = sum_{k=1}^n Bernoulli(sigma/k).

Incluye la pmf exacta/flotante, momentos, el cociente mod-Poisson y su
límite Ψ, la distancia de Kolmogorov a la normal y las aproximaciones
asintóticas de probabilidades puntuales y colas impares.
"""
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from config import config_value
from core.combinatorics import default_table
from core.errors import GuardError, InvalidParameterError
from core.special import log_gamma, normal_cdf, reciprocal_gamma
from models.cone_type import ConeType
from models.distribution import MomentSummary, PmfVector

logger = logging.getLogger(__name__)


# =============================================================================
# PMF
# =============================================================================

def pmf(n: int, variant: ConeType | str, exact: Optional[bool] = None) -> PmfVector:
    """
    Función de masa de S_n^♦ sobre {0, ..., n}.

    Args:
        n: Número de sumandos (n >= 0).
        variant: Tipo A o B.
        exact: None elige automáticamente (racionales si n <= umbral);
            True fuerza racionales; False fuerza la convolución flotante.

    Raises:
        InvalidParameterError: Si n < 0.
        GuardError: Si n supera el tope configurado.
    """
    variant = ConeType.parse(variant)
    if n < 0:
        raise InvalidParameterError(f"n debe ser >= 0 (recibido {n})")
    hard_cap = int(config_value("distribution", "hard_cap", 50_000))
    if n > hard_cap:
        raise GuardError(f"n={n} supera el tope de la pmf ({hard_cap})")
    if exact is None:
        exact = n <= int(config_value("distribution", "exact_threshold", 25))
    return _pmf_cached(n, variant, bool(exact))


@lru_cache(maxsize=64)
def _pmf_cached(n: int, variant: ConeType, exact: bool) -> PmfVector:
    if exact:
        return _exact_pmf(n, variant)
    probs = _convolve(n, variant)
    total = math.fsum(probs)
    tol = float(config_value("distribution", "normalization_tol", 1e-12))
    if abs(total - 1.0) > tol:
        logger.warning(f"[PMF] Masa total {total!r} para n={n} ({variant.value})")
    return PmfVector(n=n, variant=variant, probs=probs)


def _exact_pmf(n: int, variant: ConeType) -> PmfVector:
    row = default_table(variant, n).row(n)
    scale = variant.sigma ** n / math.factorial(n)
    exact = tuple(Fraction(value) * scale for value in row)
    return PmfVector(
        n=n,
        variant=variant,
        probs=np.array([float(p) for p in exact]),
        exact=exact,
    )


def _convolve(n: int, variant: ConeType) -> np.ndarray:
    """Convolución de los n factores Bernoulli(sigma/k), en k creciente."""
    sigma = variant.sigma_float
    probs = np.zeros(n + 1)
    probs[0] = 1.0
    for k in range(1, n + 1):
        p = sigma / k
        probs[1:k + 1] = probs[1:k + 1] * (1.0 - p) + probs[:k] * p
        probs[0] *= 1.0 - p
    return probs


def odd_tail_profile(n: int, variant: ConeType | str, m: int) -> np.ndarray:
    """
    T[j] = sum_{l impar} P[S_j = m + l] para j = 0, ..., n en una sola pasada.

    Los estados intermedios de la convolución son las pmf de S_j, así que
    todas las colas salen al costo de una sola pmf.
    """
    variant = ConeType.parse(variant)
    if m < 0:
        raise InvalidParameterError(f"m debe ser >= 0 (recibido {m})")
    sigma = variant.sigma_float
    probs = np.zeros(n + 1)
    probs[0] = 1.0
    tails = np.zeros(n + 1)
    for j in range(1, n + 1):
        p = sigma / j
        probs[1:j + 1] = probs[1:j + 1] * (1.0 - p) + probs[:j] * p
        probs[0] *= 1.0 - p
        if j > m:
            tails[j] = probs[m + 1:j + 1:2].sum()
    return tails


# =============================================================================
# COLAS Y MOMENTOS
# =============================================================================

def odd_tail_sum(distribution: PmfVector, m: int) -> float:
    """
    sum_{l = 1, 3, 5, ...} P[S_n = m + l]; los índices > n aportan 0.

    Raises:
        InvalidParameterError: Si m < 0.
    """
    if m < 0:
        raise InvalidParameterError(f"m debe ser >= 0 (recibido {m})")
    return math.fsum(distribution.probs[m + 1::2])


def odd_tail_exact(distribution: PmfVector, m: int) -> Fraction:
    """Versión racional de odd_tail_sum; requiere una pmf en modo exacto."""
    if m < 0:
        raise InvalidParameterError(f"m debe ser >= 0 (recibido {m})")
    if distribution.exact is None:
        raise InvalidParameterError("odd_tail_exact requiere una pmf exacta")
    return sum(distribution.exact[m + 1::2], Fraction(0))


def upper_tail(distribution: PmfVector, m: int) -> float:
    """P[S_n >= m]."""
    return math.fsum(distribution.probs[max(m, 0):])


def moment_summary(n: int, variant: ConeType | str) -> MomentSummary:
    """Media sigma H_n y varianza sum sigma/k (1 - sigma/k), con suma compensada."""
    variant = ConeType.parse(variant)
    if n < 0:
        raise InvalidParameterError(f"n debe ser >= 0 (recibido {n})")
    sigma = variant.sigma_float
    terms = [sigma / k for k in range(1, n + 1)]
    return MomentSummary(
        n=n,
        variant=variant,
        mean=math.fsum(terms),
        variance=math.fsum(t * (1.0 - t) for t in terms),
    )


def pmf_moments(distribution: PmfVector) -> tuple[float, float]:
    """Media y varianza calculadas directamente de la pmf."""
    ks = np.arange(len(distribution.probs), dtype=float)
    mean = math.fsum(ks * distribution.probs)
    variance = math.fsum((ks - mean) ** 2 * distribution.probs)
    return mean, variance


# =============================================================================
# MOD-POISSON
# =============================================================================

def mgf_ratio(n: int, z: float, variant: ConeType | str) -> float:
    """
    E[e^{z S_n}] / exp(sigma log n (e^z - 1)), evaluado en espacio logarítmico:
    prod_k (1 + a/k) * n^{-a} con a = sigma (e^z - 1).
    """
    variant = ConeType.parse(variant)
    if n < 1:
        raise InvalidParameterError(f"n debe ser >= 1 (recibido {n})")
    if not math.isfinite(z):
        raise InvalidParameterError("z debe ser finito")
    a = variant.sigma_float * math.expm1(z)
    ks = np.arange(1, n + 1, dtype=float)
    log_ratio = math.fsum(np.log1p(a / ks)) - a * math.log(n)
    return math.exp(log_ratio)


def mgf_ratio_closed_form(n: int, z: float, variant: ConeType | str) -> float:
    """Γ(n+1+a) / (Γ(n+1) n^a Γ(1+a)), la forma cerrada del mismo cociente."""
    variant = ConeType.parse(variant)
    if n < 1:
        raise InvalidParameterError(f"n debe ser >= 1 (recibido {n})")
    a = variant.sigma_float * math.expm1(z)
    return math.exp(
        log_gamma(n + 1 + a) - log_gamma(n + 1) - a * math.log(n) - log_gamma(1 + a)
    )


def psi_limit(z: float, variant: ConeType | str) -> float:
    """Ψ_♦(z) = 1/Γ(sigma (e^z + 2(1 - sigma)))."""
    variant = ConeType.parse(variant)
    sigma = variant.sigma_float
    return reciprocal_gamma(sigma * (math.exp(z) + 2.0 * (1.0 - sigma)))


# =============================================================================
# TEOREMA CENTRAL DEL LÍMITE
# =============================================================================

def clt_diagnostics(n: int, variant: ConeType | str) -> float:
    """
    Distancia de Kolmogorov entre (S_n - sigma log n)/sqrt(sigma log n) y N(0,1).

    El supremo se alcanza en los puntos de salto de la red, comparando Φ con
    la función de distribución a izquierda y derecha de cada salto.
    """
    variant = ConeType.parse(variant)
    if n < 2:
        raise InvalidParameterError(f"n debe ser >= 2 (recibido {n})")
    distribution = pmf(n, variant)
    center = variant.sigma_float * math.log(n)
    return kolmogorov_to_cdf(
        distribution.probs, lambda k: (k - center) / math.sqrt(center), normal_cdf
    )


def kolmogorov_to_cdf(probs, standardize, cdf) -> float:
    """sup_t |F(t) - G(t)| para F discreta con saltos en 0..len(probs)-1."""
    cumulative = np.cumsum(probs)
    distance = 0.0
    previous = 0.0
    for k, current in enumerate(cumulative):
        target = cdf(standardize(k))
        distance = max(distance, abs(current - target), abs(previous - target))
        previous = current
    return distance


# =============================================================================
# ASINTÓTICA EN LA RED z sigma log n
# =============================================================================

def rate_function(z: float) -> float:
    """z log z - z + 1, con valor 1 en z = 0 por continuidad."""
    if z < 0:
        raise InvalidParameterError(f"z debe ser >= 0 (recibido {z})")
    if z == 0:
        return 1.0
    return z * math.log(z) - z + 1.0


def realize_level(n: int, z: float, variant: ConeType | str) -> tuple[int, float]:
    """
    Entero m = round(z sigma log n) y el z_n = m/(sigma log n) realizado.

    Raises:
        InvalidParameterError: Si n < 2 o m cae fuera de {0, ..., n}.
    """
    variant = ConeType.parse(variant)
    if n < 2:
        raise InvalidParameterError(f"n debe ser >= 2 (recibido {n})")
    scale = variant.sigma_float * math.log(n)
    m = round(z * scale)
    if not 0 <= m <= n:
        raise InvalidParameterError(f"El nivel {m} cae fuera de 0..{n}")
    return m, m / scale


def _lattice_prefactor(n: int, z: float, variant: ConeType) -> tuple[float, int]:
    if z <= 0:
        raise InvalidParameterError(f"z debe ser > 0 (recibido {z})")
    m, z_n = realize_level(n, z, variant)
    log_n = math.log(n)
    base = (
        math.exp(-rate_function(z_n) * log_n)
        / math.sqrt(2.0 * math.pi * z * log_n)
        * psi_limit(math.log(z), variant)
    )
    return base, m


def asymptotic_point(n: int, z: float, ell: int, variant: ConeType | str) -> float:
    """
    Aproximación de P[S_n = m + ell], m = round(z sigma log n):
    n^{-(z_n log z_n - z_n + 1)} / sqrt(2 pi z log n) * Ψ(log z) * z^{-sigma ell}.
    """
    variant = ConeType.parse(variant)
    base, m = _lattice_prefactor(n, z, variant)
    if not 0 <= m + ell <= n:
        raise InvalidParameterError(f"m + ell = {m + ell} fuera de 0..{n}")
    return base * z ** (-variant.sigma_float * ell)


def asymptotic_odd_tail(n: int, z: float, variant: ConeType | str) -> float:
    """
    Aproximación de sum_{l impar} P[S_n = m + l]; tiende a 0 si z > 1 y a 1/2 si z < 1.

    Raises:
        InvalidParameterError: Si z <= 0 o z == 1.
    """
    variant = ConeType.parse(variant)
    if z == 1.0:
        raise InvalidParameterError("No hay aproximación de la cola impar en z = 1")
    base, _ = _lattice_prefactor(n, z, variant)
    s = variant.sigma_float
    if z > 1.0:
        return base * z ** s / (z ** (2 * s) - 1.0)
    return 0.5 - base * z ** s / (1.0 - z ** (2 * s))


def asymptotic_upper_tail(n: int, z: float, variant: ConeType | str) -> float:
    """Aproximación de P[S_n >= m] para z > 1 (factor z/(z-1))."""
    variant = ConeType.parse(variant)
    if z <= 1.0:
        raise InvalidParameterError(f"La cola superior requiere z > 1 (recibido {z})")
    base, _ = _lattice_prefactor(n, z, variant)
    return base * z / (z - 1.0)


def clt_odd_sum(n: int, v: float, variant: ConeType | str) -> tuple[float, float]:
    """
    2 sum_{l impar} P[S_n = M - l] con M = round(sigma log n + v sqrt(sigma log n)).

    Returns:
        (valor, v_n realizado); el valor tiende a Φ(v).
    """
    variant = ConeType.parse(variant)
    if n < 2:
        raise InvalidParameterError(f"n debe ser >= 2 (recibido {n})")
    center = variant.sigma_float * math.log(n)
    top = round(center + v * math.sqrt(center))
    if not 0 <= top <= n:
        raise InvalidParameterError(f"El nivel {top} cae fuera de 0..{n}")
    probs = pmf(n, variant).probs
    indices = range(top - 1, -1, -2)
    return 2.0 * math.fsum(probs[i] for i in indices), (top - center) / math.sqrt(center)


def lln_deviation(n: int, variant: ConeType | str, epsilon: float = 0.1) -> float:
    """P[|S_n/(sigma log n) - 1| > epsilon], que tiende a 0."""
    variant = ConeType.parse(variant)
    if n < 2:
        raise InvalidParameterError(f"n debe ser >= 2 (recibido {n})")
    center = variant.sigma_float * math.log(n)
    probs = pmf(n, variant).probs
    ks = np.arange(n + 1)
    mask = np.abs(ks / center - 1.0) > epsilon
    return math.fsum(probs[mask])
