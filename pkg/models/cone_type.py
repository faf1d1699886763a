"""
WeylCone - Tipo de cono (A/B).
"""
from enum import Enum
from fractions import Fraction

from core.errors import InvalidParameterError


class ConeType(str, Enum):
    """
    Discriminador de los arreglos de Weyl.

    El tipo A usa las diferencias Y_i - Y_j; el tipo B añade las sumas
    Y_i + Y_j y los propios Y_i. Cada tipo fija la constante sigma
    (1 para A, 1/2 para B) que aparece en todas las fórmulas.
    """

    A = "A"
    B = "B"

    @property
    def sigma(self) -> Fraction:
        return Fraction(1) if self is ConeType.A else Fraction(1, 2)

    @property
    def sigma_float(self) -> float:
        return 1.0 if self is ConeType.A else 0.5

    def factor(self, n: int) -> int:
        """Multiplicador de la recurrencia de Stirling en la fila n: n-1 (A) o 2n-1 (B)."""
        return n - 1 if self is ConeType.A else 2 * n - 1

    def generator_count(self, n: int) -> int:
        """Número de generadores del cono dual, n+1-2*sigma: n-1 (A) o n (B)."""
        return n - 1 if self is ConeType.A else n

    @classmethod
    def parse(cls, value: "ConeType | str") -> "ConeType":
        """Acepta 'A', 'b', ConeType.A..."""
        if isinstance(value, ConeType):
            return value
        try:
            return cls(str(value).strip().upper())
        except ValueError:
            raise InvalidParameterError(f"Tipo de cono desconocido: {value!r} (use A o B)")
