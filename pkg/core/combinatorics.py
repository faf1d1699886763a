"""
WeylCone - Combinatoria exacta.

Números de Stirling de primera especie A(n, k), sus análogos de tipo B y
el número de cámaras D^♦(n, d) de la teselación de Weyl, en enteros de
precisión arbitraria.
"""
import logging
from functools import lru_cache

from config import config_value
from core.errors import InvalidParameterError
from models.combinatorics import ChamberCount, StirlingTable
from models.cone_type import ConeType

logger = logging.getLogger(__name__)


def build_stirling_table(variant: ConeType | str, max_n: int) -> StirlingTable:
    """
    Construye el triángulo ♦(n, k), 0 <= k <= n <= max_n.

    Recurrencias: A(n,k) = A(n-1,k-1) + (n-1) A(n-1,k) y
    B(n,k) = B(n-1,k-1) + (2n-1) B(n-1,k), con A(0,0) = B(0,0) = 1.

    Raises:
        InvalidParameterError: Si max_n < 0.
    """
    variant = ConeType.parse(variant)
    if max_n < 0:
        raise InvalidParameterError(f"max_n debe ser >= 0 (recibido {max_n})")
    return _build_table(variant, max_n)


@lru_cache(maxsize=16)
def _build_table(variant: ConeType, max_n: int) -> StirlingTable:
    rows: list[tuple[int, ...]] = [(1,)]
    for n in range(1, max_n + 1):
        prev = rows[-1]
        factor = variant.factor(n)
        row = [0] * (n + 1)
        for k in range(n + 1):
            left = prev[k - 1] if k >= 1 else 0
            right = prev[k] if k < n else 0
            row[k] = left + factor * right
        rows.append(tuple(row))
    logger.debug(f"[Stirling] Tabla {variant.value} construida hasta n={max_n}")
    return StirlingTable(variant=variant, max_n=max_n, entries=tuple(rows))


def default_table(variant: ConeType | str, n: int = 0) -> StirlingTable:
    """Tabla compartida (max_n de config.yaml), ampliada solo si n la supera."""
    variant = ConeType.parse(variant)
    max_n = int(config_value("stirling", "max_n", 600))
    return build_stirling_table(variant, max(max_n, n))


def chamber_value(table: StirlingTable, n: int, d: int) -> int:
    """
    2 * [♦(n, n-d+1) + ♦(n, n-d+3) + ...] sin validar rangos.

    D^♦(n, 0) = 0 y los índices fuera de {0, ..., n} aportan 0.
    """
    if d <= 0:
        return 0
    return 2 * sum(table.value(n, n - d + ell) for ell in range(1, d + 1, 2))


def chamber_count(table: StirlingTable, n: int, d: int) -> ChamberCount:
    """
    Número de cámaras D^♦(n, d) = 2 * sum_{l impar} ♦(n, n-d+l).

    Raises:
        InvalidParameterError: Si d < 1, d > n o n > table.max_n.
    """
    if d < 1:
        raise InvalidParameterError(f"d debe ser >= 1 (recibido {d})")
    if d > n:
        raise InvalidParameterError(f"d={d} no puede superar n={n}")
    if n > table.max_n:
        raise InvalidParameterError(f"n={n} supera max_n={table.max_n} de la tabla")
    return ChamberCount(n=n, d=d, variant=table.variant, value=chamber_value(table, n, d))


def parity_sums(table: StirlingTable, n: int) -> tuple[int, int]:
    """
    Sumas de índice par e impar de la fila n.

    Para n >= 2 ambas valen n!/(2 sigma^n).

    Raises:
        InvalidParameterError: Si n < 2 o n > table.max_n.
    """
    if n < 2:
        raise InvalidParameterError(f"La identidad de paridad requiere n >= 2 (recibido {n})")
    if n > table.max_n:
        raise InvalidParameterError(f"n={n} supera max_n={table.max_n} de la tabla")
    row = table.row(n)
    return sum(row[0::2]), sum(row[1::2])
