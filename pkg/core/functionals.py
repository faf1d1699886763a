"""
WeylCone - Funcionales esperados de W^♦_{n,d} y G^♦_{n,d}.

Volúmenes intrínsecos, quermassintegrales, números de caras y dimensión
estadística. Hasta exact_max_n (config.yaml) se devuelven racionales
exactos; por encima, flotantes escritos como cocientes de colas impares de
la ley de S_n, donde los factoriales de D^♦ se cancelan.
"""
import logging
import math
from fractions import Fraction
from typing import Optional

import numpy as np

from config import config_value
from core.combinatorics import chamber_value, default_table
from core.distribution import odd_tail_profile, odd_tail_sum, pmf
from core.errors import ConsistencyError, InvalidParameterError
from models.cone_type import ConeType
from models.functionals import ConeKind, FunctionalKind, FunctionalTable, StatDimValue

logger = logging.getLogger(__name__)


# =============================================================================
# VALIDACIÓN Y MODO
# =============================================================================

def _validate(n: int, d: int):
    if d < 1:
        raise InvalidParameterError(f"d debe ser >= 1 (recibido {d})")
    if d >= n:
        raise InvalidParameterError(f"Se requiere d <= n-1 (n={n}, d={d})")


def _use_exact(n: int, exact: Optional[bool]) -> bool:
    if exact is not None:
        return exact
    return n <= int(config_value("functionals", "exact_max_n", 600))


def _log_ratio(log_numerator: float, numerator: float, denominator: float) -> float:
    """exp(log_numerator) * numerator / denominator sin desbordar en el camino."""
    if numerator <= 0.0:
        return 0.0
    log_value = log_numerator + math.log(numerator) - math.log(denominator)
    if log_value > 709.0:
        logger.warning(f"[Funcionales] Valor fuera del rango flotante (log={log_value:.1f})")
        return math.inf
    return math.exp(log_value)


def _table(n, d, variant, cone, kind, ks, values, exact) -> FunctionalTable:
    return FunctionalTable(
        n=n,
        d=d,
        variant=variant,
        cone=cone,
        kind=kind,
        ks=tuple(ks),
        values=tuple(values),
        exact=exact,
    )


# =============================================================================
# VOLÚMENES INTRÍNSECOS
# =============================================================================

def expected_intrinsic_volumes(
    n: int,
    d: int,
    variant: ConeType | str,
    cone: ConeKind | str,
    exact: Optional[bool] = None,
) -> FunctionalTable:
    """
    E υ_k para k = 0, ..., d.

    Weyl: υ_k = ♦(n, n-d+k)/D^♦(n,d) para k >= 1 y
    υ_0 = (D^♦(n,d) - D^♦(n,d-1))/(2 D^♦(n,d)).
    Dual: υ_k = ♦(n, n-k)/D^♦(n,d) para k <= d-1 y el mismo término de
    frontera en k = d.

    Raises:
        InvalidParameterError: Si d < 1 o d >= n.
    """
    variant = ConeType.parse(variant)
    cone = ConeKind(cone)
    _validate(n, d)
    ks = range(d + 1)
    if _use_exact(n, exact):
        table = default_table(variant, n)
        total = chamber_value(table, n, d)
        boundary = Fraction(total - chamber_value(table, n, d - 1), 2 * total)
        if cone is ConeKind.WEYL:
            values = [boundary] + [Fraction(table.value(n, n - d + k), total) for k in range(1, d + 1)]
        else:
            values = [Fraction(table.value(n, n - k), total) for k in range(d)] + [boundary]
        return _table(n, d, variant, cone, FunctionalKind.INTRINSIC_VOLUMES, ks, values, True)

    distribution = pmf(n, variant)
    tail = odd_tail_sum(distribution, n - d)
    boundary = 0.5 * (1.0 - odd_tail_sum(distribution, n - d + 1) / tail)
    if cone is ConeKind.WEYL:
        values = [boundary] + [distribution[n - d + k] / (2.0 * tail) for k in range(1, d + 1)]
    else:
        values = [distribution[n - k] / (2.0 * tail) for k in range(d)] + [boundary]
    return _table(n, d, variant, cone, FunctionalKind.INTRINSIC_VOLUMES, ks, values, False)


# =============================================================================
# QUERMASSINTEGRALES
# =============================================================================

def expected_quermassintegrals(
    n: int,
    d: int,
    variant: ConeType | str,
    cone: ConeKind | str,
    exact: Optional[bool] = None,
) -> FunctionalTable:
    """
    E U_k: Weyl para k = 0..d-1, D^♦(n,d-k)/(2D^♦(n,d));
    dual para k = 1..d, (D^♦(n,d) - D^♦(n,k))/(2D^♦(n,d)).
    """
    variant = ConeType.parse(variant)
    cone = ConeKind(cone)
    _validate(n, d)
    ks = range(d) if cone is ConeKind.WEYL else range(1, d + 1)
    if _use_exact(n, exact):
        table = default_table(variant, n)
        total = chamber_value(table, n, d)
        if cone is ConeKind.WEYL:
            values = [Fraction(chamber_value(table, n, d - k), 2 * total) for k in ks]
        else:
            values = [Fraction(total - chamber_value(table, n, k), 2 * total) for k in ks]
        return _table(n, d, variant, cone, FunctionalKind.QUERMASSINTEGRALS, ks, values, True)

    distribution = pmf(n, variant)
    tail = odd_tail_sum(distribution, n - d)
    if cone is ConeKind.WEYL:
        values = [odd_tail_sum(distribution, n - d + k) / (2.0 * tail) for k in ks]
    else:
        values = [0.5 * (1.0 - odd_tail_sum(distribution, n - k) / tail) for k in ks]
    return _table(n, d, variant, cone, FunctionalKind.QUERMASSINTEGRALS, ks, values, False)


# =============================================================================
# NÚMEROS DE CARAS
# =============================================================================

def expected_face_numbers(
    n: int,
    d: int,
    variant: ConeType | str,
    cone: ConeKind | str,
    exact: Optional[bool] = None,
) -> FunctionalTable:
    """
    E f_k: Weyl para k = 1..d, dual para k = 0..d-1.

    Weyl: C(N, d-k) D^♦(n-d+k, k) / (σ^{d-k} D^♦(n,d)) * n!/(n-d+k)!.
    Dual: C(N, k) D^♦(n-k, d-k) / (σ^k D^♦(n,d)) * n!/(n-k)!.
    N = n+1-2σ es el número de generadores del dual.
    """
    variant = ConeType.parse(variant)
    cone = ConeKind(cone)
    _validate(n, d)
    generators = variant.generator_count(n)
    sigma = variant.sigma
    ks = range(1, d + 1) if cone is ConeKind.WEYL else range(d)

    if _use_exact(n, exact):
        table = default_table(variant, n)
        total = chamber_value(table, n, d)
        values = []
        for k in ks:
            # j sumandos en la ley de S_j, c vectores elegidos entre los N
            if cone is ConeKind.WEYL:
                j, chosen, dim = n - d + k, d - k, k
            else:
                j, chosen, dim = n - k, k, d - k
            numerator = math.comb(generators, chosen) * chamber_value(table, j, dim)
            numerator *= math.factorial(n) // math.factorial(j)
            values.append(Fraction(numerator, total) / sigma ** chosen)
        return _table(n, d, variant, cone, FunctionalKind.FACE_NUMBERS, ks, values, True)

    tails = odd_tail_profile(n, variant, n - d)
    values = []
    for k in ks:
        j, chosen = (n - d + k, d - k) if cone is ConeKind.WEYL else (n - k, k)
        values.append(
            _log_ratio(math.log(math.comb(generators, chosen)), tails[j], tails[n])
        )
    return _table(n, d, variant, cone, FunctionalKind.FACE_NUMBERS, ks, values, False)


def expected_functionals(
    n: int,
    d: int,
    variant: ConeType | str,
    cone: ConeKind | str,
    kind: FunctionalKind | str,
    exact: Optional[bool] = None,
) -> FunctionalTable:
    """Despacha a la tabla pedida (usado por la CLI)."""
    kind = FunctionalKind(kind)
    builders = {
        FunctionalKind.FACE_NUMBERS: expected_face_numbers,
        FunctionalKind.INTRINSIC_VOLUMES: expected_intrinsic_volumes,
        FunctionalKind.QUERMASSINTEGRALS: expected_quermassintegrals,
    }
    return builders[kind](n, d, variant, cone, exact=exact)


# =============================================================================
# DIMENSIÓN ESTADÍSTICA
# =============================================================================

def expected_statistical_dimension(
    n: int,
    d: int,
    variant: ConeType | str,
    exact: Optional[bool] = None,
) -> StatDimValue:
    """
    E Δ(W^♦_{n,d}) = sum_{l=0}^{d} (d-l) ♦(n, n-l) / D^♦(n,d).

    En modo exacto y n <= cross_check_max_n se compara con sum_k k E υ_k(W).

    Raises:
        InvalidParameterError: Si d < 1 o d >= n.
        ConsistencyError: Si la comprobación cruzada falla.
    """
    variant = ConeType.parse(variant)
    _validate(n, d)
    if _use_exact(n, exact):
        table = default_table(variant, n)
        total = chamber_value(table, n, d)
        value = Fraction(
            sum((d - ell) * table.value(n, n - ell) for ell in range(d + 1)), total
        )
        if n <= int(config_value("functionals", "cross_check_max_n", 60)):
            volumes = expected_intrinsic_volumes(n, d, variant, ConeKind.WEYL, exact=True)
            weighted = sum(k * v for k, v in volumes.items())
            if weighted != value:
                raise ConsistencyError(
                    f"Δ({n},{d},{variant.value}) = {value} pero sum k υ_k = {weighted}"
                )
        return StatDimValue(n=n, d=d, variant=variant, value=value, exact=True)

    distribution = pmf(n, variant)
    tail = odd_tail_sum(distribution, n - d)
    # peso d - l sobre P[S_n = n - l]
    weights = np.arange(d + 1)
    value = math.fsum(weights * distribution.probs[n - d:]) / (2.0 * tail)
    return StatDimValue(n=n, d=d, variant=variant, value=value, exact=False)
