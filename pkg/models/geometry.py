"""
WeylCone - Tipos de la simulación geométrica.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from core.errors import InvalidParameterError
from models.cone_type import ConeType


class Distribution(str, Enum):
    """Leyes de Y_i; ambas dan medida cero a los hiperplanos."""
    STANDARD_GAUSSIAN = "gaussian"
    UNIFORM_SPHERE = "sphere"


class Provenance(str, Enum):
    TYPE_A_DIFFERENCES = "type_a_differences"
    TYPE_B_DIFFERENCES_PLUS_LAST = "type_b_differences_plus_last"
    EXPLICIT = "explicit"


class ConeSource(str, Enum):
    """Cono sobre el que se estima la quermassintegral."""
    DUAL_WEYL = "dual"
    WEYL_CHAMBER = "weyl"


@dataclass(frozen=True)
class SamplerConfig:
    distribution: Distribution
    seed: int
    d: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "distribution", Distribution(self.distribution))
        if self.d < 1:
            raise InvalidParameterError("d debe ser >= 1")
        if self.n < 1:
            raise InvalidParameterError("n debe ser >= 1")
        if not 0 <= self.seed < 2**64:
            raise InvalidParameterError("La semilla debe ser un entero sin signo de 64 bits")


@dataclass(frozen=True, eq=False)
class ConeGenerators:
    """Cono pos{columnas}; columns tiene forma (d, m)."""
    columns: np.ndarray
    variant: Optional[ConeType] = None
    provenance: Provenance = Provenance.EXPLICIT

    def __post_init__(self):
        columns = np.array(self.columns, dtype=float, ndmin=2)
        columns.setflags(write=False)
        object.__setattr__(self, "columns", columns)

    @property
    def d(self) -> int:
        return self.columns.shape[0]

    @property
    def m(self) -> int:
        return self.columns.shape[1]

    @classmethod
    def explicit(cls, vectors) -> "ConeGenerators":
        """Construye desde una lista de vectores (uno por generador)."""
        return cls(np.asarray(vectors, dtype=float).T)


@dataclass(frozen=True)
class ProjectionResult:
    projection: np.ndarray
    coefficients: np.ndarray
    face_dimension: int


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int
    accepted_fraction: Optional[float] = None

    @classmethod
    def from_values(cls, values, seed: int, accepted_fraction: Optional[float] = None) -> "MCEstimate":
        """Media y error estándar (desviación muestral / sqrt(samples))."""
        values = np.asarray(values, dtype=float)
        if values.size < 2:
            raise InvalidParameterError("Se necesitan al menos 2 muestras")
        return cls(
            mean=float(values.mean()),
            stderr=float(values.std(ddof=1) / np.sqrt(values.size)),
            samples=int(values.size),
            seed=seed,
            accepted_fraction=accepted_fraction,
        )

    def within(self, target: float, sigmas: float = 3.0) -> bool:
        if self.stderr == 0.0:
            return abs(self.mean - target) <= 1e-12
        return abs(self.mean - target) <= sigmas * self.stderr
