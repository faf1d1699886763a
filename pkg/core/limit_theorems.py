"""
WeylCone - Límites predichos y evaluación a n finito.

Cada régimen tiene un predictor (la constante, tasa o ley límite) y un
evaluador exacto a n finito expresado con colas impares de S_n.
convergence_sweep compara ambos a lo largo de una escalera de n.
"""
import logging
import math
from typing import Callable

import numpy as np
from joblib import Parallel, delayed

from config import config_value
from core.distribution import kolmogorov_to_cdf, odd_tail_sum, pmf
from core.errors import ConsistencyError, InvalidParameterError, WeylConeError
from core.functionals import (
    expected_face_numbers,
    expected_intrinsic_volumes,
    expected_statistical_dimension,
)
from core.regimes import realize_regime, realized_spec
from core.special import normal_cdf, normal_pdf
from models.distribution import PmfVector
from models.functionals import ConeKind
from models.cone_type import ConeType
from models.regime import (
    ConvergenceReport,
    ConvergenceRow,
    KMode,
    LimitLaw,
    RealizedRegime,
    RegimeKind,
    RegimeSpec,
)

logger = logging.getLogger(__name__)


def _expect(spec: RegimeSpec, kind: RegimeKind):
    if spec.kind is not kind:
        raise InvalidParameterError(f"Se esperaba un régimen {kind.value}, no {spec.kind.value}")


def _reject_x_one(spec: RegimeSpec):
    if spec.x == 1.0:
        raise InvalidParameterError(f"{spec.kind.value}: x = 1 está excluido")


# =============================================================================
# PREDICTORES
# =============================================================================

def predict_face_ratio_limit(spec: RegimeSpec) -> float:
    """Límite de E f_k(G)/C(N, k)."""
    _expect(spec, RegimeKind.FACE_RATIO)
    _reject_x_one(spec)
    mode = spec.k_mode
    if spec.x > 1.0:
        if mode is KMode.SUBLINEAR:
            return 1.0
        if mode is KMode.LINEAR:
            return (1.0 - spec.alpha) ** (spec.x - 1.0)
        if mode is KMode.NEAR_N:
            return 0.0
        raise InvalidParameterError("La ventana crítica solo existe para x en (0, 1)")
    if mode is KMode.CRITICAL:
        return 1.0 - normal_cdf(spec.alpha)
    if mode is KMode.NEAR_N:
        if spec.c == spec.x:
            raise InvalidParameterError("face-ratio: c = x está excluido")
        return 1.0 if spec.c > spec.x else 0.0
    raise InvalidParameterError(
        f"Para x en (0, 1) el límite se formula con n - k = n^c (near-n) o la ventana crítica, no {mode.value}"
    )


def predict_face_ldp_rate(spec: RegimeSpec) -> float:
    """lim log(E f_k(G)/C(N,k))/log n con n - k = n^c."""
    _expect(spec, RegimeKind.FACE_LDP)
    _reject_x_one(spec)
    x, c = spec.x, spec.c
    if x > 1.0:
        return x * math.log(c) - c + 1.0
    if c == x:
        raise InvalidParameterError("face-ldp: c = x está excluido")
    if c < x:
        return x - x * math.log(x) + x * math.log(c) - c
    return 0.0


def predict_iv_ldp_rate(spec: RegimeSpec) -> float:
    """lim log E υ_k(G)/log n con n - k = y sigma log n."""
    _expect(spec, RegimeKind.IV_LDP)
    _reject_x_one(spec)
    x, y = spec.x, spec.y
    if x < 1.0:
        return y - y * math.log(y) - 1.0
    return x * math.log(x) - y * math.log(y) + y - x


def predict_iv_law(spec: RegimeSpec) -> LimitLaw:
    """
    Ley límite de la variable de volúmenes intrínsecos X^♦_{n,d}.

    x en (0, 1): normal estándar de (X - (n - sigma log n))/sqrt(sigma log n).
    x > 1: ley fraccional lineal de d - X con parámetro x^sigma.
    Crítico: normal condicionada a {N < c}.
    """
    _expect(spec, RegimeKind.IV_LAW)
    if spec.critical:
        return LimitLaw("truncated_normal", spec.c)
    _reject_x_one(spec)
    if spec.x < 1.0:
        return LimitLaw("normal")
    return LimitLaw("fractional_linear", spec.x ** spec.variant.sigma_float)


def z_law_pmf(x: float, variant: ConeType | str, j: int) -> float:
    """P[Z_{♦,x} = j] para x > 1."""
    if x <= 1.0:
        raise InvalidParameterError("La ley Z requiere x > 1")
    return LimitLaw("fractional_linear", x ** ConeType.parse(variant).sigma_float).pmf(j)


def z_law_pgf(x: float, variant: ConeType | str, s: float) -> float:
    """E[s^Z] = (s + 1)(x^σ - 1)/(2(x^σ - s)), |s| < x^σ."""
    if x <= 1.0:
        raise InvalidParameterError("La ley Z requiere x > 1")
    scale = x ** ConeType.parse(variant).sigma_float
    if abs(s) >= scale:
        raise InvalidParameterError(f"La función generatriz requiere |s| < {scale}")
    return (s + 1.0) * (scale - 1.0) / (2.0 * (scale - s))


def predict_quermass_limit(spec: RegimeSpec) -> float:
    """Límite de 2 E U_k(W)."""
    x = spec.x
    if spec.kind is RegimeKind.QUERMASS_FIXED_K:
        _reject_x_one(spec)
        if x < 1.0:
            return 1.0
        return x ** (-spec.variant.sigma_float * spec.k)
    _expect(spec, RegimeKind.QUERMASS_GROWING_K)
    threshold = max(0.0, 1.0 - x)
    if spec.y == threshold:
        raise InvalidParameterError("quermass-growing-k: y = max(0, 1-x) está excluido")
    return 1.0 if spec.y < threshold else 0.0


def predict_stat_dim(spec: RegimeSpec) -> Callable[[int], float]:
    """
    Predicción de E Δ(W) como función de n.

    x en [0, 1): sigma (1 - x) log n. x > 1: (x^σ + 1)/(2(x^σ - 1)).
    Crítico: sqrt(sigma log n) (φ(c)/Φ(-c) - c).

    Para x en [0, 1) la constante es sigma (1 - x), no sigma: E Δ(W) es
    aproximadamente E[S_n] - (n - d) = sigma log n - sigma x log n, y ambas
    coinciden solo en x = 0.
    """
    _expect(spec, RegimeKind.STAT_DIM)
    sigma = spec.variant.sigma_float
    if spec.critical:
        c = spec.c
        factor = normal_pdf(c) / normal_cdf(-c) - c
        return lambda n: math.sqrt(sigma * math.log(n)) * factor
    _reject_x_one(spec)
    if spec.x < 1.0:
        x = spec.x
        return lambda n: sigma * (1.0 - x) * math.log(n)
    scale = spec.x ** sigma
    constant = (scale + 1.0) / (2.0 * (scale - 1.0))
    return lambda n: constant


def predict_value(spec: RegimeSpec, n: int) -> float:
    """Límite predicho evaluado en n (0 para iv-law, cuyo valor finito es una distancia)."""
    kind = spec.kind
    if kind is RegimeKind.FACE_RATIO:
        return predict_face_ratio_limit(spec)
    if kind is RegimeKind.FACE_LDP:
        return predict_face_ldp_rate(spec)
    if kind is RegimeKind.IV_LDP:
        return predict_iv_ldp_rate(spec)
    if kind is RegimeKind.IV_LAW:
        predict_iv_law(spec)
        return 0.0
    if kind is RegimeKind.STAT_DIM:
        return predict_stat_dim(spec)(n)
    return predict_quermass_limit(spec)


# =============================================================================
# EVALUADORES A n FINITO
# =============================================================================

def _tail(n: int, variant: ConeType, m: int) -> float:
    return odd_tail_sum(pmf(n, variant), m)


def _require_k(rr: RealizedRegime):
    if rr.k is None:
        raise InvalidParameterError("El régimen realizado no tiene k")


def face_ratio_finite(rr: RealizedRegime, variant: ConeType | str) -> float:
    """
    E f_k(G)/C(N, k) = T(n-k, n-d)/T(n, n-d), T la cola impar.

    Para n <= cross_check_max_n se contrasta con la fórmula racional.
    """
    variant = ConeType.parse(variant)
    _require_k(rr)
    n, d, k = rr.n, rr.d, rr.k
    value = _tail(n - k, variant, n - d) / _tail(n, variant, n - d)
    if n <= int(config_value("functionals", "cross_check_max_n", 60)) and k <= d - 1:
        faces = expected_face_numbers(n, d, variant, ConeKind.DUAL_WEYL, exact=True)
        reference = float(faces[k]) / math.comb(variant.generator_count(n), k)
        if not math.isclose(value, reference, rel_tol=1e-9, abs_tol=1e-300):
            raise ConsistencyError(f"Cociente de caras {value} frente a {reference} (n={n}, d={d}, k={k})")
    return value


def face_ldp_rate_finite(rr: RealizedRegime, variant: ConeType | str) -> float:
    ratio = face_ratio_finite(rr, variant)
    if ratio <= 0.0:
        return -math.inf
    return math.log(ratio) / math.log(rr.n)


def iv_ldp_rate_finite(rr: RealizedRegime, variant: ConeType | str) -> float:
    """log E υ_k(G)/log n con E υ_k(G) = P[S_n = n-k]/(2 T(n, n-d))."""
    variant = ConeType.parse(variant)
    _require_k(rr)
    n, d, k = rr.n, rr.d, rr.k
    distribution = pmf(n, variant)
    volume = distribution[n - k] / (2.0 * odd_tail_sum(distribution, n - d))
    if volume <= 0.0:
        return -math.inf
    return math.log(volume) / math.log(n)


def quermass_finite(rr: RealizedRegime, variant: ConeType | str) -> float:
    """2 E U_k(W) = D^♦(n, d-k)/D^♦(n, d) = T(n, n-d+k)/T(n, n-d)."""
    variant = ConeType.parse(variant)
    _require_k(rr)
    n, d, k = rr.n, rr.d, rr.k
    distribution = pmf(n, variant)
    return odd_tail_sum(distribution, n - d + k) / odd_tail_sum(distribution, n - d)


def stat_dim_finite(rr: RealizedRegime, variant: ConeType | str) -> float:
    return float(expected_statistical_dimension(rr.n, rr.d, variant).value)


def iv_law(n: int, d: int, variant: ConeType | str) -> PmfVector:
    """
    Ley exacta de X^♦_{n,d}: P[X = k] = E υ_k(G^♦_{n,d}), k = 0..d.

    Se devuelve como PmfVector con soporte {0, ..., d} (campo n = d).
    """
    variant = ConeType.parse(variant)
    volumes = expected_intrinsic_volumes(n, d, variant, ConeKind.DUAL_WEYL)
    return PmfVector(
        n=d,
        variant=variant,
        probs=np.array(volumes.as_floats()),
        exact=tuple(volumes.values) if volumes.exact else None,
    )


def iv_law_distance(rr: RealizedRegime, spec: RegimeSpec) -> float:
    """
    Distancia entre la ley de X^♦_{n,d} y su límite.

    x > 1: variación total entre d - X y Z_{♦,x}. En otro caso, distancia de
    Kolmogorov de (X - (n - sigma log n))/sqrt(sigma log n) a la ley límite.
    """
    law = predict_iv_law(spec)
    n, d = rr.n, rr.d
    probs = iv_law(n, d, spec.variant).probs
    if law.kind == "fractional_linear":
        reversed_probs = probs[::-1]
        limit = np.array([law.pmf(j) for j in range(d + 1)])
        beyond = 1.0 - math.fsum(limit)
        return 0.5 * (math.fsum(np.abs(reversed_probs - limit)) + max(beyond, 0.0))
    level = spec.variant.sigma_float * math.log(n)
    center = n - level
    return kolmogorov_to_cdf(probs, lambda k: (k - center) / math.sqrt(level), law.cdf)


def finite_value(spec: RegimeSpec, rr: RealizedRegime) -> float:
    """Cantidad exacta a n finito que corresponde al régimen."""
    kind = spec.kind
    if kind is RegimeKind.FACE_RATIO:
        return face_ratio_finite(rr, spec.variant)
    if kind is RegimeKind.FACE_LDP:
        return face_ldp_rate_finite(rr, spec.variant)
    if kind is RegimeKind.IV_LDP:
        return iv_ldp_rate_finite(rr, spec.variant)
    if kind is RegimeKind.IV_LAW:
        return iv_law_distance(rr, spec)
    if kind is RegimeKind.STAT_DIM:
        return stat_dim_finite(rr, spec.variant)
    return quermass_finite(rr, spec.variant)


# =============================================================================
# BARRIDOS DE CONVERGENCIA
# =============================================================================

def _sweep_row(spec: RegimeSpec, n: int, at_realized: bool) -> ConvergenceRow:
    rr = None
    try:
        rr = realize_regime(spec, n)
        value = finite_value(spec, rr)
        target = realized_spec(spec, rr) if at_realized else spec
        predicted = predict_value(target, n)
    except WeylConeError as e:
        logger.warning(f"[Barrido] {spec.kind.value} n={n}: {e}")
        return ConvergenceRow(
            n=n,
            d=rr.d if rr else None,
            k=rr.k if rr else None,
            realized=rr.realized() if rr else {},
            finite_value=math.nan,
            predicted_limit=math.nan,
            gap=math.nan,
            relative_gap=math.nan,
            clamped=rr.clamped if rr else False,
            error=str(e),
        )
    gap = abs(value - predicted)
    relative_gap = gap / abs(predicted) if predicted != 0.0 else gap
    return ConvergenceRow(
        n=n,
        d=rr.d,
        k=rr.k,
        realized=rr.realized(),
        finite_value=value,
        predicted_limit=predicted,
        gap=gap,
        relative_gap=relative_gap,
        clamped=rr.clamped,
    )


def convergence_sweep(
    spec: RegimeSpec,
    n_list,
    at_realized: bool = False,
    n_jobs: int = 1,
) -> ConvergenceReport:
    """
    Una fila por n con valor finito, límite predicho y brecha.

    Los errores de una fila quedan en row.error y no detienen el barrido.

    Args:
        spec: Régimen a evaluar.
        n_list: Valores de n estrictamente crecientes.
        at_realized: Evalúa la predicción en los parámetros realizados.
        n_jobs: Procesos de joblib (1 = secuencial).

    Raises:
        InvalidParameterError: Si n_list no es estrictamente creciente.
    """
    n_list = [int(n) for n in n_list]
    if any(a >= b for a, b in zip(n_list, n_list[1:])):
        raise InvalidParameterError(f"n_list debe ser estrictamente creciente: {n_list}")
    if not n_list:
        return ConvergenceReport(spec=spec, rows=[], at_realized=at_realized)
    logger.info(f"[Barrido] {spec.kind.value} ({spec.variant.value}) sobre n={n_list}")
    rows = Parallel(n_jobs=n_jobs)(
        delayed(_sweep_row)(spec, n, at_realized) for n in n_list
    )
    return ConvergenceReport(spec=spec, rows=list(rows), at_realized=at_realized)
