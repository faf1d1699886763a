"""
WeylCone - Geometría de conos: símplex, NNLS, muestreo y pruebas sobre conos.
"""
from core.geometry.lp import LPResult, LPStatus, SimplexSolver, linprog
from core.geometry.nnls import nnls
from core.geometry.sampling import (
    build_generators,
    make_rng,
    sample_points,
    seed_streams,
    uniform_subspace,
)
from core.geometry.cones import (
    count_faces,
    dual_cone,
    extreme_rays,
    is_full_space,
    is_pointed,
    meets_subspace,
    metric_projection,
    sample_dual_weyl_cone,
)

__all__ = [
    "LPResult", "LPStatus", "SimplexSolver", "linprog", "nnls",
    "build_generators", "make_rng", "sample_points", "seed_streams", "uniform_subspace",
    "count_faces", "dual_cone", "extreme_rays", "is_full_space", "is_pointed",
    "meets_subspace", "metric_projection", "sample_dual_weyl_cone",
]
