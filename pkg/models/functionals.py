"""
WeylCone - Tablas de funcionales esperados.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from models.cone_type import ConeType

Value = Union[Fraction, float]


class ConeKind(str, Enum):
    """Cono de Weyl W (cámara uniforme) o su dual G (envolvente positiva condicionada)."""
    WEYL = "weyl"
    DUAL_WEYL = "dual"


class FunctionalKind(str, Enum):
    FACE_NUMBERS = "faces"
    INTRINSIC_VOLUMES = "iv"
    QUERMASSINTEGRALS = "quermass"


@dataclass(frozen=True)
class FunctionalTable:
    """
    Valores E[f_k], E[υ_k] o E[U_k] indexados por k.

    Con exact=True los valores son Fraction; por encima del límite exacto
    son float calculados a partir de colas impares de la ley de S_n.
    """
    n: int
    d: int
    variant: ConeType
    cone: ConeKind
    kind: FunctionalKind
    ks: tuple[int, ...]
    values: tuple[Value, ...]
    exact: bool = True

    def __getitem__(self, k: int) -> Value:
        try:
            return self.values[self.ks.index(k)]
        except ValueError:
            raise KeyError(f"k={k} fuera del rango {self.ks[0]}..{self.ks[-1]}") from None

    def items(self):
        return zip(self.ks, self.values)

    def as_floats(self) -> list[float]:
        return [float(v) for v in self.values]


@dataclass(frozen=True)
class StatDimValue:
    """Dimensión estadística esperada E Δ(W^♦_{n,d})."""
    n: int
    d: int
    variant: ConeType
    value: Value
    exact: bool = True
