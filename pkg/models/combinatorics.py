"""
WeylCone - Tipos de la combinatoria exacta.
"""
from dataclasses import dataclass

from models.cone_type import ConeType


@dataclass(frozen=True)
class StirlingTable:
    """
    Triángulo inmutable de números de Stirling de primera especie (tipo A)
    o de sus análogos de tipo B, en enteros de precisión arbitraria.

    entries[n][k] es el coeficiente de t^k en t(t+1)...(t+n-1) (A) o en
    (t+1)(t+3)...(t+2n-1) (B), para 0 <= k <= n <= max_n.
    """
    variant: ConeType
    max_n: int
    entries: tuple[tuple[int, ...], ...]

    def value(self, n: int, k: int) -> int:
        """♦(n, k), con 0 fuera de {0, ..., n}."""
        if n < 0 or n > self.max_n:
            raise IndexError(f"Fila {n} fuera de la tabla (max_n={self.max_n})")
        if k < 0 or k > n:
            return 0
        return self.entries[n][k]

    def row(self, n: int) -> tuple[int, ...]:
        if n < 0 or n > self.max_n:
            raise IndexError(f"Fila {n} fuera de la tabla (max_n={self.max_n})")
        return self.entries[n]


@dataclass(frozen=True)
class ChamberCount:
    """Número casi seguro de cámaras D^♦(n, d) de la teselación de Weyl."""
    n: int
    d: int
    variant: ConeType
    value: int
