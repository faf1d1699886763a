"""
WeylCone - Subcomandos de simulación: simulate y tessellate.
"""
import logging
from fractions import Fraction

import click

from cli.options import d_option, distribution_option, n_option, seed_option, threads_option, type_option
from cli.output import emit, output_options, rational_columns
from config import config_value
from core.arrangement import (
    build_weyl_arrangement,
    count_chamber_faces,
    enumerate_chambers,
    verify_chamber_count,
)
from core.combinatorics import chamber_value, default_table
from core.functionals import (
    expected_face_numbers,
    expected_intrinsic_volumes,
    expected_quermassintegrals,
    expected_statistical_dimension,
)
from core.geometry.sampling import sample_points
from core.montecarlo import (
    STAT_DIM_ESTIMATORS,
    mc_face_numbers,
    mc_intrinsic_volumes,
    mc_quermassintegral,
    mc_statistical_dimension,
)
from models.cone_type import ConeType
from models.functionals import ConeKind
from models.geometry import ConeSource, MCEstimate, SamplerConfig

logger = logging.getLogger(__name__)


def _has_reference(n: int, d: int) -> bool:
    return 1 <= d <= n - 1 and n <= int(config_value("functionals", "exact_max_n", 600))


def _estimate_row(k, estimate: MCEstimate, reference) -> dict:
    return {
        "k": k,
        "mean": estimate.mean,
        "stderr": estimate.stderr,
        "samples": estimate.samples,
        "accepted_fraction": estimate.accepted_fraction,
        "seed": estimate.seed,
        **rational_columns("exact", reference),
    }


# =============================================================================
# SIMULATE
# =============================================================================

@click.command("simulate")
@n_option()
@d_option()
@type_option
@click.option("--functional", type=click.Choice(["iv", "faces", "quermass", "statdim"]), required=True)
@click.option("--k", "k", type=int, default=None, help="Índice del funcional (faces, quermass).")
@click.option("--samples", type=click.IntRange(min=2), default=None, help="Conos muestreados.")
@click.option("--gaussians", type=click.IntRange(min=1), default=None, help="Gaussianas por cono (iv, statdim).")
@click.option(
    "--cone", type=click.Choice([c.value for c in ConeSource]), default=ConeSource.DUAL_WEYL.value,
    show_default=True, help="Cono de la quermassintegral.",
)
@click.option("--estimator", type=click.Choice(STAT_DIM_ESTIMATORS), default="faces", show_default=True)
@seed_option
@distribution_option
@threads_option()
@output_options
@click.pass_context
def simulate(ctx, n, d, variant, functional, k, samples, gaussians, cone, estimator, seed, distribution, threads, fmt, out):
    """
    Estimaciones Monte Carlo con la referencia exacta cuando existe.

    Columnas: k, mean, stderr, samples, accepted_fraction, seed, exact, exact_float.
    """
    variant = ConeType.parse(variant)
    cfg = SamplerConfig(distribution=distribution, seed=seed, d=d, n=n)
    reference = _has_reference(n, d)

    if functional == "iv":
        estimates = mc_intrinsic_volumes(cfg, variant, samples, gaussians, n_jobs=threads)
        exact = expected_intrinsic_volumes(n, d, variant, ConeKind.DUAL_WEYL).values if reference else [None] * (d + 1)
        rows = [_estimate_row(j, e, x) for j, (e, x) in enumerate(zip(estimates, exact))]
    elif functional == "statdim":
        estimate = mc_statistical_dimension(cfg, variant, samples, gaussians, estimator=estimator, n_jobs=threads)
        exact = expected_statistical_dimension(n, d, variant).value if reference else None
        rows = [_estimate_row(None, estimate, exact)]
    else:
        if k is None:
            raise click.UsageError(f"--functional {functional} requiere --k")
        if functional == "faces":
            estimate = mc_face_numbers(cfg, variant, k, samples, n_jobs=threads)
            exact = expected_face_numbers(n, d, variant, ConeKind.DUAL_WEYL)[k] if reference else None
        else:
            source = ConeSource(cone)
            estimate = mc_quermassintegral(cfg, variant, k, source, samples, n_jobs=threads)
            kind = ConeKind.DUAL_WEYL if source is ConeSource.DUAL_WEYL else ConeKind.WEYL
            exact = expected_quermassintegrals(n, d, variant, kind)[k] if reference else None
        rows = [_estimate_row(k, estimate, exact)]
    emit(ctx, rows, seed=seed)


# =============================================================================
# TESSELLATE
# =============================================================================

@click.command("tessellate")
@n_option()
@d_option()
@type_option
@seed_option
@distribution_option
@click.option("--verify", "verify", type=click.IntRange(min=1), default=None, help="Verifica el conteo con N semillas.")
@click.option("--faces", "faces", type=int, default=None, help="Cuenta las k-caras de cada cámara.")
@click.option("--signs", is_flag=True, help="Una fila por cámara con su vector de signos.")
@output_options
@click.pass_context
def tessellate(ctx, n, d, variant, seed, distribution, verify, faces, signs, fmt, out):
    """
    Teselación de Weyl de n puntos en R^d.

    Sin opciones: una fila (n, d, type, seed, chambers, expected). --signs:
    (index, signs). --faces k: (index, faces) por cámara y una fila "mean"
    con el promedio exacto y E f_k(W). --verify N: una fila por semilla y ley.
    """
    variant = ConeType.parse(variant)
    expected = chamber_value(default_table(variant, n), n, min(d, n))

    if verify is not None:
        report = verify_chamber_count(n, d, variant, range(seed, seed + verify))
        rows = [
            {
                "seed": row.seed,
                "distribution": row.distribution.value,
                "enumerated": row.enumerated,
                "expected": row.expected,
                "match": row.match,
                "error": row.error,
            }
            for row in report.rows
        ]
        emit(ctx, rows, seed=seed)
        return

    cfg = SamplerConfig(distribution=distribution, seed=seed, d=d, n=n)
    arr = build_weyl_arrangement(sample_points(cfg), variant)
    chambers = enumerate_chambers(arr, seed=seed)

    if faces is not None:
        counts = [count_chamber_faces(chamber, arr, faces) for chamber in chambers]
        rows = [{"index": i, "faces": count} for i, count in enumerate(counts)]
        reference = None
        if 1 <= faces <= d and _has_reference(n, d):
            reference = expected_face_numbers(n, d, variant, ConeKind.WEYL)[faces]
        rows.append({
            "index": "mean",
            "faces": None,
            **rational_columns("mean", Fraction(sum(counts), len(counts))),
            **rational_columns("exact", reference),
        })
    elif signs:
        rows = [
            {"index": i, "signs": "".join("+" if s > 0 else "-" for s in chamber.signs), "margin": chamber.margin}
            for i, chamber in enumerate(chambers)
        ]
    else:
        rows = [{
            "n": n, "d": d, "type": variant.value, "seed": seed,
            "hyperplanes": arr.m, "chambers": len(chambers), "expected": expected,
        }]
    if len(chambers) != expected:
        logger.warning(f"[Teselación] {len(chambers)} cámaras enumeradas, se esperaban {expected}")
    emit(ctx, rows, seed=seed)
