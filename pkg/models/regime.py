"""
WeylCone - Regímenes asintóticos y reportes de convergencia.
"""
import math
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Optional

from core.errors import InvalidParameterError
from core.special import normal_cdf
from models.cone_type import ConeType


class RegimeKind(str, Enum):
    FACE_RATIO = "face-ratio"
    FACE_LDP = "face-ldp"
    IV_LDP = "iv-ldp"
    IV_LAW = "iv-law"
    QUERMASS_FIXED_K = "quermass-fixed-k"
    QUERMASS_GROWING_K = "quermass-growing-k"
    STAT_DIM = "stat-dim"


class KMode(str, Enum):
    """Cómo crece k con n en el régimen de cocientes de caras."""
    SUBLINEAR = "sublinear"   # k = round(sqrt(n))
    LINEAR = "linear"         # k = round(alpha n)
    NEAR_N = "near-n"         # k = n - round(n^c)
    CRITICAL = "critical"     # ventana crítica con parámetro alpha


@dataclass(frozen=True)
class RegimeSpec:
    """
    Régimen d = n - sigma x log n (+ k según el tipo) y sus parámetros.

    Solo se validan aquí los dominios estructurales; los valores frontera
    que cada predicción excluye se rechazan al predecir.
    """
    kind: RegimeKind
    variant: ConeType
    x: Optional[float] = None
    k_mode: Optional[KMode] = None
    alpha: Optional[float] = None
    c: Optional[float] = None
    y: Optional[float] = None
    k: Optional[int] = None
    critical: bool = False

    def __post_init__(self):
        object.__setattr__(self, "variant", ConeType.parse(self.variant))
        object.__setattr__(self, "kind", RegimeKind(self.kind))
        if self.k_mode is not None:
            object.__setattr__(self, "k_mode", KMode(self.k_mode))
        for name in ("x", "alpha", "c", "y"):
            value = getattr(self, name)
            if value is not None and not math.isfinite(value):
                raise InvalidParameterError(f"{name} debe ser finito")

        kind = self.kind
        if self.critical:
            if kind not in (RegimeKind.IV_LAW, RegimeKind.STAT_DIM):
                raise InvalidParameterError(f"{kind.value} no tiene variante crítica")
            self._require("c")
            return

        self._require("x")
        if kind is RegimeKind.STAT_DIM:
            if self.x < 0:
                raise InvalidParameterError("stat-dim requiere x >= 0")
        elif self.x <= 0:
            raise InvalidParameterError(f"{kind.value} requiere x > 0")

        if kind is RegimeKind.FACE_RATIO:
            if self.k_mode is None:
                raise InvalidParameterError("face-ratio requiere k_mode")
            if self.k_mode in (KMode.LINEAR, KMode.CRITICAL):
                self._require("alpha")
            if self.k_mode is KMode.LINEAR and not 0.0 <= self.alpha <= 1.0:
                raise InvalidParameterError("alpha debe estar en [0, 1]")
            if self.k_mode is KMode.NEAR_N:
                self._require("c")
                if not 0.0 < self.c < 1.0:
                    raise InvalidParameterError("c debe estar en (0, 1)")
        elif kind is RegimeKind.FACE_LDP:
            self._require("c")
            if not 0.0 < self.c < 1.0:
                raise InvalidParameterError("face-ldp requiere c en (0, 1)")
        elif kind is RegimeKind.IV_LDP:
            self._require("y")
            if self.y <= self.x:
                raise InvalidParameterError("iv-ldp requiere y > x")
        elif kind is RegimeKind.QUERMASS_FIXED_K:
            self._require("k")
            if self.k < 1:
                raise InvalidParameterError("quermass-fixed-k requiere k >= 1")
        elif kind is RegimeKind.QUERMASS_GROWING_K:
            self._require("y")
            if self.y <= 0:
                raise InvalidParameterError("quermass-growing-k requiere y > 0")

    def _require(self, name: str):
        if getattr(self, name) is None:
            raise InvalidParameterError(f"{self.kind.value} requiere el parámetro {name}")

    def describe(self) -> dict:
        """Parámetros no nulos, para CSV/JSON."""
        data = {"kind": self.kind.value, "type": self.variant.value}
        for name in ("x", "k_mode", "alpha", "c", "y", "k"):
            value = getattr(self, name)
            if value is not None:
                data[name] = value.value if isinstance(value, Enum) else value
        if self.critical:
            data["critical"] = True
        return data


@dataclass(frozen=True)
class RealizedRegime:
    """Parámetros enteros (d, k) en un n concreto y los valores reales realizados."""
    n: int
    d: int
    k: Optional[int] = None
    realized_x: Optional[float] = None
    realized_y: Optional[float] = None
    realized_c: Optional[float] = None
    realized_alpha: Optional[float] = None
    clamped: bool = False
    note: str = ""

    def realized(self) -> dict:
        return {
            name: value
            for name, value in (
                ("x", self.realized_x),
                ("y", self.realized_y),
                ("c", self.realized_c),
                ("alpha", self.realized_alpha),
            )
            if value is not None
        }


@dataclass(frozen=True)
class LimitLaw:
    """
    Ley límite del número de cara aleatorio.

    kind: "normal", "truncated_normal" (condicionada a N < c, parameter=c)
    o "fractional_linear" (parameter = x^sigma).
    """
    kind: str
    parameter: Optional[float] = None

    def cdf(self, t: float) -> float:
        if self.kind == "normal":
            return normal_cdf(t)
        if self.kind == "truncated_normal":
            if t >= self.parameter:
                return 1.0
            return normal_cdf(t) / normal_cdf(self.parameter)
        if t < 0:
            return 0.0
        q = 1.0 / self.parameter
        # P[Z > j] = (x^σ + 1)/2 * x^(-σ(j+1))
        return 1.0 - 0.5 * (self.parameter + 1.0) * q ** (math.floor(t) + 1)

    def pmf(self, j: int) -> float:
        if self.kind != "fractional_linear":
            raise InvalidParameterError("pmf solo existe para la ley fraccional lineal")
        s = self.parameter
        if j < 0:
            return 0.0
        if j == 0:
            return (s - 1.0) / (2.0 * s)
        p = (s - 1.0) / s
        return 0.5 * (s + 1.0) * p * (1.0 - p) ** j


@dataclass
class ConvergenceRow:
    n: int
    d: Optional[int]
    k: Optional[int]
    realized: dict
    finite_value: float
    predicted_limit: float
    gap: float
    relative_gap: float
    clamped: bool = False
    error: Optional[str] = None


@dataclass
class ConvergenceReport:
    spec: RegimeSpec
    rows: list[ConvergenceRow] = field(default_factory=list)
    at_realized: bool = False

    def gaps(self) -> list[float]:
        return [row.gap for row in self.rows]

    def to_records(self) -> list[dict]:
        """Una fila plana por n, apta para CSV/JSON."""
        spec = self.spec.describe()
        records = []
        for row in self.rows:
            data = asdict(row)
            realized = data.pop("realized")
            record = {f"spec_{key}": value for key, value in spec.items()}
            record.update(data)
            record.update({f"realized_{key}": value for key, value in realized.items()})
            records.append(record)
        return records
