"""
WeylCone - Tipos de dominio.
"""
from models.cone_type import ConeType
from models.combinatorics import StirlingTable, ChamberCount
from models.distribution import PmfVector, MomentSummary
from models.functionals import ConeKind, FunctionalKind, FunctionalTable, StatDimValue
from models.regime import (
    RegimeKind, KMode, RegimeSpec, RealizedRegime, LimitLaw,
    ConvergenceRow, ConvergenceReport,
)
from models.geometry import (
    Distribution, Provenance, ConeSource, SamplerConfig,
    ConeGenerators, ProjectionResult, MCEstimate,
)
from models.arrangement import (
    HyperplaneArrangement, Chamber, ChamberVerificationRow, ChamberVerificationReport,
)
from models.acceptance import CheckResult, AcceptanceReport
from models.manifest import RunManifest

__all__ = [
    "ConeType", "StirlingTable", "ChamberCount", "PmfVector", "MomentSummary",
    "ConeKind", "FunctionalKind", "FunctionalTable", "StatDimValue",
    "RegimeKind", "KMode", "RegimeSpec", "RealizedRegime", "LimitLaw",
    "ConvergenceRow", "ConvergenceReport",
    "Distribution", "Provenance", "ConeSource", "SamplerConfig",
    "ConeGenerators", "ProjectionResult", "MCEstimate",
    "HyperplaneArrangement", "Chamber", "ChamberVerificationRow", "ChamberVerificationReport",
    "CheckResult", "AcceptanceReport", "RunManifest",
]
