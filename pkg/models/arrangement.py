"""
WeylCone - Arreglos centrales de hiperplanos y sus cámaras.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from models.cone_type import ConeType
from models.geometry import Distribution


@dataclass(frozen=True, eq=False)
class HyperplaneArrangement:
    """
    Hiperplanos a_j^⊥ en R^d, normales unitarias en las filas de normals (m x d).

    parallel_pairs registra los pares (i, j) con normales paralelas; en un
    arreglo genérico está vacío.
    """
    normals: np.ndarray
    variant: Optional[ConeType] = None
    source_n: int = 0
    parallel_pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        normals = np.array(self.normals, dtype=float, ndmin=2)
        normals.setflags(write=False)
        object.__setattr__(self, "normals", normals)

    @property
    def d(self) -> int:
        return self.normals.shape[1]

    @property
    def m(self) -> int:
        return self.normals.shape[0]

    @property
    def is_generic(self) -> bool:
        return not self.parallel_pairs


@dataclass(frozen=True, eq=False)
class Chamber:
    """Cámara {u : signs[j] <a_j, u> >= 0}; witness es un punto interior con holgura margin."""
    signs: tuple[int, ...]
    witness: np.ndarray
    margin: float

    def __post_init__(self):
        witness = np.array(self.witness, dtype=float)
        witness.setflags(write=False)
        object.__setattr__(self, "witness", witness)


@dataclass
class ChamberVerificationRow:
    seed: int
    distribution: Distribution
    enumerated: Optional[int]
    expected: int
    match: bool
    error: Optional[str] = None


@dataclass
class ChamberVerificationReport:
    n: int
    d: int
    variant: ConeType
    rows: list[ChamberVerificationRow] = field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return bool(self.rows) and all(row.match for row in self.rows)
