"""
WeylCone - Ley de S_n (suma de Bernoulli(sigma/k)).
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from models.cone_type import ConeType


@dataclass(frozen=True, eq=False)
class PmfVector:
    """
    Función de masa sobre {0, ..., n}.

    probs es un arreglo numpy de solo lectura. En modo exacto (n pequeño)
    exact guarda además las probabilidades como racionales.
    """
    n: int
    variant: ConeType
    probs: np.ndarray
    exact: Optional[tuple[Fraction, ...]] = field(default=None, repr=False)

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, k: int) -> float:
        if k < 0 or k >= len(self.probs):
            return 0.0
        return float(self.probs[k])


@dataclass(frozen=True)
class MomentSummary:
    """Media sigma*H_n y varianza sum sigma/k (1 - sigma/k) de S_n."""
    n: int
    variant: ConeType
    mean: float
    variance: float
