"""
WeylCone - Inmersión de los regímenes asintóticos en la red entera.

Cada régimen fija d = n - sigma x log n + o(log n) (y k cuando hace falta);
aquí los términos o(.) se realizan redondeando al entero más cercano y se
informan los parámetros efectivamente realizados.
"""
import dataclasses
import logging
import math

from core.errors import InvalidParameterError
from models.regime import KMode, RealizedRegime, RegimeKind, RegimeSpec

logger = logging.getLogger(__name__)


def _clamp(k: int, low: int, high: int) -> tuple[int, bool]:
    clamped = min(max(k, low), high)
    return clamped, clamped != k


def realize_regime(spec: RegimeSpec, n: int) -> RealizedRegime:
    """
    Calcula (d, k) en el n dado y los parámetros realizados.

    k se recorta al rango legal del funcional correspondiente y el recorte
    queda registrado en clamped/note.

    Raises:
        InvalidParameterError: Si n es demasiado pequeño para el régimen.
    """
    if n < 3:
        raise InvalidParameterError(f"n={n} es demasiado pequeño (n >= 3)")
    sigma = spec.variant.sigma_float
    level = sigma * math.log(n)
    root = math.sqrt(level)
    notes = []
    clamped = False
    realized = {}

    # -------------------------------------------------------------------------
    # Dimensión d
    # -------------------------------------------------------------------------
    if spec.critical:
        if spec.kind is RegimeKind.IV_LAW:
            d = n - round(level - spec.c * root)
            realized["realized_c"] = (level - (n - d)) / root
        else:
            d = n - round(level + spec.c * root)
            realized["realized_c"] = ((n - d) - level) / root
    else:
        d = n - round(spec.x * level)
        if spec.kind is RegimeKind.STAT_DIM and d == n:
            d = n - 1
            clamped = True
            notes.append("d=n ajustado a n-1")
        realized["realized_x"] = (n - d) / level

    if not 1 <= d <= n - 1:
        raise InvalidParameterError(
            f"n={n} es demasiado pequeño para {spec.kind.value}: d={d} fuera de 1..{n - 1}"
        )

    # -------------------------------------------------------------------------
    # Índice k
    # -------------------------------------------------------------------------
    k = None
    kind = spec.kind
    if kind is RegimeKind.FACE_RATIO:
        mode = spec.k_mode
        if mode is KMode.SUBLINEAR:
            k = round(math.sqrt(n))
        elif mode is KMode.LINEAR:
            k = round(spec.alpha * n)
        elif mode is KMode.NEAR_N:
            k = n - round(n ** spec.c)
        else:
            spread = math.sqrt(spec.x * level)
            k = n - round(math.exp((n - d - spec.alpha * spread) / sigma))
        k, was_clamped = _clamp(k, 0, d - 1)
        if mode is KMode.LINEAR:
            realized["realized_alpha"] = k / n
        elif mode is KMode.NEAR_N and k < n:
            realized["realized_c"] = math.log(n - k) / math.log(n)
        elif mode is KMode.CRITICAL and k < n:
            spread = math.sqrt(spec.x * level)
            realized["realized_alpha"] = (n - d - sigma * math.log(n - k)) / spread
    elif kind is RegimeKind.FACE_LDP:
        k, was_clamped = _clamp(n - round(n ** spec.c), 0, d - 1)
        if k < n:
            realized["realized_c"] = math.log(n - k) / math.log(n)
    elif kind is RegimeKind.IV_LDP:
        k, was_clamped = _clamp(n - round(spec.y * level), 0, d)
        realized["realized_y"] = (n - k) / level
    elif kind is RegimeKind.QUERMASS_FIXED_K:
        k, was_clamped = _clamp(spec.k, 0, d - 1)
    elif kind is RegimeKind.QUERMASS_GROWING_K:
        k, was_clamped = _clamp(round(spec.y * level), 0, d - 1)
        realized["realized_y"] = k / level
    else:
        was_clamped = False

    if was_clamped:
        clamped = True
        notes.append(f"k ajustado a {k}")
        logger.info(f"[Régimen] {kind.value} n={n}: k ajustado a {k} (d={d})")

    return RealizedRegime(n=n, d=d, k=k, clamped=clamped, note="; ".join(notes), **realized)


def realized_spec(spec: RegimeSpec, rr: RealizedRegime) -> RegimeSpec:
    """El mismo régimen con los parámetros sustituidos por sus valores realizados."""
    changes = {}
    if rr.realized_x is not None and spec.x is not None:
        changes["x"] = rr.realized_x
    if rr.realized_y is not None and spec.y is not None:
        changes["y"] = rr.realized_y
    if rr.realized_c is not None and spec.c is not None:
        changes["c"] = rr.realized_c
    if rr.realized_alpha is not None and spec.alpha is not None:
        changes["alpha"] = rr.realized_alpha
    return dataclasses.replace(spec, **changes)
