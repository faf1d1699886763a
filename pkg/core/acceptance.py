"""
WeylCone - Batería de aceptación (verify-all).

Diez comprobaciones: identidades exactas, valores fijados, Monte Carlo
contra las fórmulas, convergencia mod-Poisson y del TCL, tendencias de
los barridos y determinismo. quick=True reduce los tamaños Monte Carlo
y los rangos exhaustivos.
"""
import json
import logging
import math
import time
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable

import numpy as np

from config import config_value, project_path
from core.arrangement import verify_chamber_count
from core.combinatorics import default_table, parity_sums
from core.distribution import clt_diagnostics, mgf_ratio, pmf, psi_limit
from core.errors import InvalidParameterError, WeylConeError
from core.functionals import (
    expected_face_numbers,
    expected_intrinsic_volumes,
    expected_quermassintegrals,
    expected_statistical_dimension,
)
from core.limit_theorems import convergence_sweep, z_law_pmf
from core.montecarlo import (
    mc_face_numbers,
    mc_intrinsic_volumes,
    mc_quermassintegral,
    mc_statistical_dimension,
)
from core.regimes import realize_regime
from models.acceptance import AcceptanceReport, CheckResult
from models.cone_type import ConeType
from models.functionals import ConeKind
from models.geometry import ConeSource, Distribution, SamplerConfig
from models.regime import KMode, RegimeKind, RegimeSpec

logger = logging.getLogger(__name__)

VARIANTS = (ConeType.A, ConeType.B)


# =============================================================================
# 1-4: IDENTIDADES Y VALORES EXACTOS
# =============================================================================

def check_parity(quick: bool) -> tuple[bool, str]:
    top = 100 if quick else 300
    for variant in VARIANTS:
        table = default_table(variant, top)
        for n in range(2, top + 1):
            even, odd = parity_sums(table, n)
            target = Fraction(math.factorial(n)) / (2 * variant.sigma ** n)
            if even != odd or even != target:
                return False, f"{variant.value} n={n}: pares={even}, impares={odd}"
    return True, f"2 <= n <= {top}, ambos tipos"


def check_iv_normalization(quick: bool) -> tuple[bool, str]:
    top = 20 if quick else 60
    for variant in VARIANTS:
        for cone in ConeKind:
            for n in range(2, top + 1):
                for d in range(1, n):
                    table = expected_intrinsic_volumes(n, d, variant, cone, exact=True)
                    if sum(table.values) != 1:
                        return False, f"{variant.value}/{cone.value} n={n} d={d}: suma {sum(table.values)}"
    return True, f"2 <= n <= {top}, ambos conos y tipos"


def check_chamber_counts(quick: bool) -> tuple[bool, str]:
    seeds = range(2) if quick else range(5)
    cases = [(n, d, ConeType.A) for n in range(3, 5 if quick else 7) for d in (2, 3)]
    cases += [(n, d, ConeType.B) for n in (2, 3) for d in (2, 3)]
    for n, d, variant in cases:
        report = verify_chamber_count(n, d, variant, seeds)
        if not report.all_match:
            bad = [row for row in report.rows if not row.match][0]
            return False, (
                f"{variant.value} n={n} d={d} seed={bad.seed} {bad.distribution.value}: "
                f"{bad.enumerated} != {bad.expected}"
            )
    return True, f"{len(cases)} casos x {len(seeds)} semillas x 2 distribuciones"


def check_pinned_values(quick: bool) -> tuple[bool, str]:
    pinned = [
        ("E f_1(G^A_{3,2})", expected_face_numbers(3, 2, "A", ConeKind.DUAL_WEYL, exact=True)[1], Fraction(2)),
        ("E Δ(W^A_{3,2})", expected_statistical_dimension(3, 2, "A", exact=True).value, Fraction(5, 6)),
        ("E U_1(W^A_{3,2})", expected_quermassintegrals(3, 2, "A", ConeKind.WEYL, exact=True)[1], Fraction(1, 6)),
        (
            "E υ(G^A_{3,2})",
            tuple(expected_intrinsic_volumes(3, 2, "A", ConeKind.DUAL_WEYL, exact=True).values),
            (Fraction(1, 6), Fraction(1, 2), Fraction(1, 3)),
        ),
    ]
    for name, got, expected in pinned:
        if got != expected:
            return False, f"{name} = {got}, se esperaba {expected}"
    return True, "4 valores exactos"


# =============================================================================
# 5: MONTE CARLO CONTRA LAS FÓRMULAS
# =============================================================================

MC_CASES = ((3, 2, ConeType.A), (4, 2, ConeType.A), (5, 3, ConeType.A), (3, 2, ConeType.B))


def _mc_targets(n: int, d: int, variant: ConeType) -> dict:
    volumes = expected_intrinsic_volumes(n, d, variant, ConeKind.DUAL_WEYL, exact=True).as_floats()
    faces = float(expected_face_numbers(n, d, variant, ConeKind.DUAL_WEYL, exact=True)[1])
    quermass = float(expected_quermassintegrals(n, d, variant, ConeKind.DUAL_WEYL, exact=True)[1])
    stat_dim = float(expected_statistical_dimension(n, d, variant, exact=True).value)
    return {
        "iv": volumes,
        "faces": faces,
        "quermass": quermass,
        "statdim": stat_dim,
    }


def check_monte_carlo(quick: bool) -> tuple[bool, str]:
    """
    Cada funcional dentro de 3 errores estándar en al menos 19 de 20
    repeticiones (modo rápido: 2 de 3 con muestras reducidas).
    """
    repetitions, required = (3, 2) if quick else (20, 19)
    scale = 20 if quick else 1
    failures = []
    for n, d, variant in MC_CASES:
        targets = _mc_targets(n, d, variant)
        hits = dict.fromkeys(targets, 0)
        for rep in range(repetitions):
            cfg = SamplerConfig(distribution=Distribution.STANDARD_GAUSSIAN, seed=1000 * rep + n, d=d, n=n)
            estimates = mc_intrinsic_volumes(cfg, variant, cone_samples=1000 // scale, gaussians_per_cone=100)
            hits["iv"] += all(e.within(t) for e, t in zip(estimates, targets["iv"]))
            hits["faces"] += mc_face_numbers(cfg, variant, 1, samples=10_000 // scale).within(targets["faces"])
            hits["quermass"] += mc_quermassintegral(
                cfg, variant, 1, ConeSource.DUAL_WEYL, samples=10_000 // scale
            ).within(targets["quermass"])
            hits["statdim"] += mc_statistical_dimension(
                cfg, variant, samples=200 // scale, gaussians_per_chamber=500
            ).within(targets["statdim"])
        for name, count in hits.items():
            if count < required:
                failures.append(f"{variant.value}({n},{d}) {name}: {count}/{repetitions}")
    if failures:
        return False, "; ".join(failures)
    return True, f"{len(MC_CASES)} casos, {required}/{repetitions} repeticiones requeridas"


# =============================================================================
# 6-7: MOD-POISSON Y TCL
# =============================================================================

def check_mod_poisson(quick: bool) -> tuple[bool, str]:
    n = 100_000
    worst = 0.0
    for variant in VARIANTS:
        for z in (-0.5, 0.5, math.log(2.0)):
            worst = max(worst, abs(mgf_ratio(n, z, variant) - psi_limit(z, variant)))
    return worst <= 1e-4, f"máx |cociente - Ψ| = {worst:.2e} en n = {n}"


def check_clt_trend(quick: bool) -> tuple[bool, str]:
    details = []
    for variant in VARIANTS:
        distances = [clt_diagnostics(n, variant) for n in (100, 1000, 10_000)]
        details.append(f"{variant.value}: " + ", ".join(f"{value:.4f}" for value in distances))
        decreasing = all(a > b for a, b in zip(distances, distances[1:]))
        if not decreasing or distances[-1] > 0.2:
            return False, "; ".join(details)
    return True, "; ".join(details)


# =============================================================================
# 8-9: TENDENCIAS DE LOS BARRIDOS
# =============================================================================

def sweep_grid() -> list[RegimeSpec]:
    """
    Parámetros interiores con x en {0.5, 2}.

    Tipo B entra solo con las ramas cuya constante depende de sigma a través
    de sigma log n (ventana crítica y x < 1); las ramas x > 1 escritas con
    x^σ no son el límite del evaluador exacto en tipo B.
    """
    return [
        RegimeSpec(kind=RegimeKind.FACE_RATIO, variant="A", x=2.0, k_mode=KMode.LINEAR, alpha=0.5),
        RegimeSpec(kind=RegimeKind.FACE_RATIO, variant="A", x=0.5, k_mode=KMode.CRITICAL, alpha=0.0),
        RegimeSpec(kind=RegimeKind.FACE_LDP, variant="A", x=2.0, c=0.5),
        RegimeSpec(kind=RegimeKind.FACE_LDP, variant="A", x=0.5, c=0.8),
        RegimeSpec(kind=RegimeKind.IV_LDP, variant="A", x=0.5, y=1.0),
        RegimeSpec(kind=RegimeKind.IV_LDP, variant="A", x=2.0, y=4.0),
        RegimeSpec(kind=RegimeKind.QUERMASS_FIXED_K, variant="A", x=2.0, k=1),
        RegimeSpec(kind=RegimeKind.QUERMASS_GROWING_K, variant="A", x=0.5, y=0.2),
        RegimeSpec(kind=RegimeKind.STAT_DIM, variant="A", x=2.0),
        RegimeSpec(kind=RegimeKind.STAT_DIM, variant="A", x=0.5),
        RegimeSpec(kind=RegimeKind.FACE_RATIO, variant="B", x=0.5, k_mode=KMode.CRITICAL, alpha=0.0),
        RegimeSpec(kind=RegimeKind.STAT_DIM, variant="B", x=0.5),
    ]


def reversed_convolution(n: int, variant: ConeType) -> np.ndarray:
    """pmf de S_n convolucionando los factores en orden decreciente de k."""
    sigma = variant.sigma_float
    probs = np.zeros(n + 1)
    probs[0] = 1.0
    for used, k in enumerate(range(n, 0, -1), start=1):
        p = sigma / k
        probs[1:used + 1] = probs[1:used + 1] * (1.0 - p) + probs[:used] * p
        probs[0] *= 1.0 - p
    return probs


# =============================================================================
# ORÁCULO DE LOS VALORES FINALES
# =============================================================================

@lru_cache(maxsize=16)
def _oracle_pmf(n: int, variant: ConeType) -> np.ndarray:
    return reversed_convolution(n, variant)


def _oracle_odd_tail(probs: np.ndarray, m: int) -> float:
    return float(probs[m + 1::2].sum())


def _log_rate(value: float, n: int) -> float:
    return math.log(value) / math.log(n) if value > 0.0 else -math.inf


def oracle_finite_value(spec: RegimeSpec, n: int) -> float:
    """
    Valor a n finito del régimen recalculado sin core.limit_theorems.

    Usa la pmf en orden inverso y las identidades de D^♦ como cocientes de
    colas impares: E f_k(G)/C(N,k) = T_{n-k}/T_n, E υ_k(G) = P[S_n = n-k]/(2T_n),
    2 E U_k(W) = T_n(m+k)/T_n(m) y E Δ(W) = E[(S_n - m) 1{S_n >= m}]/(2T_n),
    con m = n - d.
    """
    rr = realize_regime(spec, n)
    variant = spec.variant
    probs = _oracle_pmf(n, variant)
    m = n - rr.d
    tail = _oracle_odd_tail(probs, m)
    kind = spec.kind
    if kind in (RegimeKind.FACE_RATIO, RegimeKind.FACE_LDP):
        ratio = _oracle_odd_tail(_oracle_pmf(n - rr.k, variant), m) / tail
        return ratio if kind is RegimeKind.FACE_RATIO else _log_rate(ratio, n)
    if kind is RegimeKind.IV_LDP:
        return _log_rate(float(probs[n - rr.k]) / (2.0 * tail), n)
    if kind in (RegimeKind.QUERMASS_FIXED_K, RegimeKind.QUERMASS_GROWING_K):
        return _oracle_odd_tail(probs, m + rr.k) / tail
    if kind is RegimeKind.STAT_DIM:
        excess = np.arange(rr.d + 1, dtype=float)
        return float(excess @ probs[m:]) / (2.0 * tail)
    raise InvalidParameterError(f"El oráculo no cubre {kind.value}")


def _matches(value: float, reference: float) -> bool:
    tolerance = float(config_value("acceptance", "oracle_tolerance", 1e-9))
    return math.isclose(value, reference, rel_tol=tolerance, abs_tol=1e-12)


def oracle_mismatches(specs: list[RegimeSpec], n: int) -> list[str]:
    """Regímenes cuyo finite_value en n no coincide con oracle_finite_value."""
    failures = []
    for spec in specs:
        row = convergence_sweep(spec, [n]).rows[0]
        reference = oracle_finite_value(spec, n)
        if row.error or not _matches(row.finite_value, reference):
            failures.append(f"{_label(spec)} n={n}: {row.finite_value!r} frente al oráculo {reference!r}")
    return failures


def _label(spec: RegimeSpec) -> str:
    return " ".join(f"{key}={value}" for key, value in spec.describe().items())


def pin_sweep_values(path: Path, n: int = 20_000) -> list[dict]:
    """Escribe en path los valores del oráculo en n para cada régimen de sweep_grid()."""
    entries = [
        {"spec": spec.describe(), "n": n, "finite_value": oracle_finite_value(spec, n)}
        for spec in sweep_grid()
    ]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(entries, indent=2), encoding="utf-8")
    logger.info(f"[Aceptación] {len(entries)} valores fijados en {path} (n={n})")
    return entries


def _spec_from_description(data: dict) -> RegimeSpec:
    params = {key: value for key, value in data.items() if key not in ("kind", "type")}
    return RegimeSpec(kind=RegimeKind(data["kind"]), variant=data["type"], **params)


def pinned_mismatches(path: Path) -> list[str]:
    """Compara finite_value con cada valor fijado en path."""
    failures = []
    for entry in json.loads(Path(path).read_text(encoding="utf-8")):
        spec = _spec_from_description(entry["spec"])
        row = convergence_sweep(spec, [entry["n"]]).rows[0]
        if row.error or not _matches(row.finite_value, entry["finite_value"]):
            failures.append(
                f"{_label(spec)} n={entry['n']}: {row.finite_value!r} frente al valor fijado {entry['finite_value']!r}"
            )
    return failures


def check_sweep_trends(quick: bool) -> tuple[bool, str]:
    n_list = [1000, 5000] if quick else [1000, 10_000, 20_000]
    final = n_list[-1]
    failures = []
    for spec in sweep_grid():
        report = convergence_sweep(spec, n_list, at_realized=True)
        if any(row.error for row in report.rows):
            failures.append(f"{_label(spec)}: {report.rows[-1].error}")
            continue
        use_relative = spec.kind is RegimeKind.STAT_DIM
        gaps = [row.relative_gap if use_relative else row.gap for row in report.rows]
        if any(b > a + 1e-12 for a, b in zip(gaps, gaps[1:])):
            failures.append(f"{_label(spec)}: brechas {['%.3g' % g for g in gaps]}")
        reference = oracle_finite_value(spec, final)
        if not _matches(report.rows[-1].finite_value, reference):
            failures.append(f"{_label(spec)} n={final}: {report.rows[-1].finite_value!r} frente al oráculo {reference!r}")

    oracle_gap = max(
        float(np.max(np.abs(pmf(final, variant, exact=False).probs - reversed_convolution(final, variant))))
        for variant in VARIANTS
    )
    if oracle_gap > 1e-9:
        failures.append(f"pmf en n={final} difiere del oráculo en {oracle_gap:.2e}")

    fixture = project_path(str(config_value("acceptance", "sweep_fixture", "tests/fixtures/sweep_final.json")))
    pinned = "sin valores fijados"
    if not quick and fixture.exists():
        failures.extend(pinned_mismatches(fixture))
        pinned = f"valores fijados de {fixture.name}"
    if failures:
        return False, "; ".join(failures)
    return True, f"{len(sweep_grid())} regímenes sobre n={n_list}; oráculo {oracle_gap:.1e}; {pinned}"


def check_iv_law(quick: bool) -> tuple[bool, str]:
    if abs(z_law_pmf(4.0, ConeType.A, 0) - 0.375) > 1e-15:
        return False, "P[Z_{A,4} = 0] != 3/8"
    spec = RegimeSpec(kind=RegimeKind.IV_LAW, variant="A", x=4.0)
    report = convergence_sweep(spec, [1000, 10_000])
    distances = [row.finite_value for row in report.rows]
    ok = all(math.isfinite(v) for v in distances) and distances[1] < distances[0]
    return ok, "VT = " + ", ".join(f"{v:.4g}" for v in distances)


# =============================================================================
# 10: DETERMINISMO
# =============================================================================

def check_determinism(quick: bool) -> tuple[bool, str]:
    cfg = SamplerConfig(distribution=Distribution.UNIFORM_SPHERE, seed=2024, d=2, n=4)
    runs = [
        [e.mean for e in mc_intrinsic_volumes(cfg, "A", cone_samples=20, gaussians_per_cone=10, n_jobs=jobs)]
        for jobs in (1, 1, 2)
    ]
    stat_dims = [mc_statistical_dimension(cfg, "B", samples=5, gaussians_per_chamber=10).mean for _ in range(2)]
    exact = [expected_intrinsic_volumes(7, 3, "B", ConeKind.WEYL).values for _ in range(2)]
    ok = runs[0] == runs[1] == runs[2] and stat_dims[0] == stat_dims[1] and exact[0] == exact[1]
    return ok, "Monte Carlo y exactos idénticos al repetir (1 y 2 procesos)"


# =============================================================================
# ORQUESTACIÓN
# =============================================================================

CHECKS: list[tuple[str, Callable[[bool], tuple[bool, str]]]] = [
    ("Identidad de paridad", check_parity),
    ("Normalización de υ", check_iv_normalization),
    ("Conteo de cámaras", check_chamber_counts),
    ("Valores exactos fijados", check_pinned_values),
    ("Monte Carlo vs. fórmula", check_monte_carlo),
    ("Convergencia mod-Poisson", check_mod_poisson),
    ("Tendencia TCL", check_clt_trend),
    ("Tendencias de barridos", check_sweep_trends),
    ("Ley límite de υ (x = 4)", check_iv_law),
    ("Determinismo", check_determinism),
]


def run_acceptance(quick: bool = False, only: list[int] | None = None) -> AcceptanceReport:
    """Ejecuta las comprobaciones (todas o las de only, numeradas desde 1)."""
    report = AcceptanceReport(quick=quick)
    for number, (name, check) in enumerate(CHECKS, start=1):
        if only and number not in only:
            continue
        start = time.perf_counter()
        try:
            passed, detail = check(quick)
        except WeylConeError as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        seconds = time.perf_counter() - start
        logger.info(f"[Aceptación] {number}. {name}: {'OK' if passed else 'FALLO'} ({seconds:.1f}s)")
        report.checks.append(CheckResult(number=number, name=name, passed=passed, detail=detail, seconds=seconds))
    return report
