"""
WeylCone - Tests de geometría de conos.

1. Símplex frente a scipy
2. NNLS frente a scipy
3. Pruebas por LP sobre conos
4. Proyección métrica
5. Muestreo reproducible
6. Rayos extremos, dualidad e intersección con subespacios
7. Muestreo por rechazo de G
"""
import numpy as np
import pytest
from scipy import optimize

from core.errors import (
    DegenerateSampleError,
    InvalidParameterError,
    NonPointedConeError,
    RejectionCapError,
)
from core.geometry import (
    build_generators,
    count_faces,
    dual_cone,
    extreme_rays,
    is_full_space,
    is_pointed,
    linprog,
    make_rng,
    meets_subspace,
    metric_projection,
    nnls,
    sample_dual_weyl_cone,
    sample_points,
    seed_streams,
    uniform_subspace,
)
from core.geometry.lp import LPStatus
from models.geometry import ConeGenerators, Distribution, Provenance, SamplerConfig


# ============================================================
# FIXTURES
# ============================================================

@pytest.fixture
def orthant():
    """Primer cuadrante de R^2."""
    return ConeGenerators.explicit([[1.0, 0.0], [0.0, 1.0]])


def rays_as_set(columns):
    return {tuple(np.round(col, 8) + 0.0) for col in np.asarray(columns).T}


# ============================================================
# 1. SÍMPLEX
# ============================================================

class TestLinprog:
    """Resultados del símplex de dos fases."""

    def test_simple_maximization(self):
        result = linprog([-1.0, -2.0], A_ub=[[1.0, 1.0], [1.0, -1.0]], b_ub=[4.0, 2.0])
        assert result.status is LPStatus.OPTIMAL
        assert result.objective == pytest.approx(-8.0)
        np.testing.assert_allclose(result.x, [0.0, 4.0], atol=1e-9)

    def test_equality(self):
        result = linprog([1.0, 1.0], A_eq=[[1.0, -1.0]], b_eq=[1.0])
        assert result.objective == pytest.approx(1.0)
        np.testing.assert_allclose(result.x, [1.0, 0.0], atol=1e-9)

    def test_infeasible(self):
        result = linprog([1.0], A_ub=[[1.0]], b_ub=[-1.0])
        assert result.status is LPStatus.INFEASIBLE
        assert not result.feasible

    def test_unbounded(self):
        result = linprog([-1.0], A_ub=[[-1.0]], b_ub=[0.0])
        assert result.status is LPStatus.UNBOUNDED

    def test_bounds(self):
        assert linprog([1.0], bounds=[(-3.0, 5.0)]).objective == pytest.approx(-3.0)
        assert linprog([-1.0], bounds=[(None, 2.5)]).objective == pytest.approx(-2.5)
        free = linprog([1.0], A_ub=[[-1.0]], b_ub=[2.0], bounds=[(None, None)])
        assert free.x[0] == pytest.approx(-2.0)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_scipy(self, seed):
        rng = np.random.default_rng(seed)
        A = rng.uniform(0.1, 1.0, (4, 3))
        b = rng.uniform(1.0, 2.0, 4)
        c = -rng.uniform(0.0, 1.0, 3)
        reference = optimize.linprog(c, A_ub=A, b_ub=b, method="highs")
        assert linprog(c, A_ub=A, b_ub=b).objective == pytest.approx(reference.fun, rel=1e-7, abs=1e-9)


# ============================================================
# 2. NNLS
# ============================================================

class TestNnls:

    def test_identity(self):
        x, residual = nnls(np.eye(2), [1.0, -1.0])
        np.testing.assert_allclose(x, [1.0, 0.0], atol=1e-12)
        assert residual == pytest.approx(1.0)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_scipy(self, seed):
        rng = np.random.default_rng(100 + seed)
        A = rng.standard_normal((6, 4))
        b = rng.standard_normal(6)
        x, residual = nnls(A, b)
        reference, reference_residual = optimize.nnls(A, b)
        np.testing.assert_allclose(x, reference, atol=1e-8)
        assert residual == pytest.approx(reference_residual, rel=1e-8, abs=1e-12)


# ============================================================
# 3. PRUEBAS POR LP
# ============================================================

class TestConeTests:
    """Espacio completo, conos puntiagudos y conteo de caras."""

    def test_full_space(self, orthant):
        assert not is_full_space(orthant)
        spanning = ConeGenerators.explicit([[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]])
        assert is_full_space(spanning)

    def test_pointed(self, orthant):
        assert is_pointed(orthant)
        assert not is_pointed(ConeGenerators.explicit([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]]))

    def test_count_faces_orthant(self, orthant):
        assert count_faces(orthant, 1) == 2

    def test_count_faces_skips_interior_generator(self):
        gens = ConeGenerators.explicit([[1.0, 0.0], [1.0, 1.0], [1.0, -1.0]])
        assert count_faces(gens, 1) == 2

    def test_count_faces_3d_orthant(self):
        gens = ConeGenerators(np.eye(3))
        assert count_faces(gens, 1) == 3
        assert count_faces(gens, 2) == 3

    def test_count_faces_range(self, orthant):
        with pytest.raises(InvalidParameterError):
            count_faces(orthant, 2)

    def test_count_faces_non_pointed(self):
        gens = ConeGenerators.explicit([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]])
        with pytest.raises(NonPointedConeError):
            count_faces(gens, 1)


# ============================================================
# 4. PROYECCIÓN MÉTRICA
# ============================================================

class TestMetricProjection:

    def test_projects_onto_ray(self, orthant):
        result = metric_projection(orthant, [1.0, -2.0])
        np.testing.assert_allclose(result.projection, [1.0, 0.0], atol=1e-12)
        assert result.face_dimension == 1

    def test_polar_point_goes_to_origin(self, orthant):
        result = metric_projection(orthant, [-1.0, -1.0])
        np.testing.assert_allclose(result.projection, [0.0, 0.0], atol=1e-12)
        assert result.face_dimension == 0

    def test_interior_point_is_fixed(self, orthant):
        result = metric_projection(orthant, [1.0, 2.0])
        np.testing.assert_allclose(result.projection, [1.0, 2.0], atol=1e-12)
        assert result.face_dimension == 2

    def test_bad_point(self, orthant):
        with pytest.raises(InvalidParameterError):
            metric_projection(orthant, [1.0, 2.0, 3.0])
        with pytest.raises(InvalidParameterError):
            metric_projection(orthant, [np.nan, 0.0])


# ============================================================
# 5. MUESTREO
# ============================================================

class TestSampling:
    """Determinismo por semilla y generadores de tipo A/B."""

    def test_same_seed_same_points(self):
        cfg = SamplerConfig(Distribution.STANDARD_GAUSSIAN, seed=42, d=3, n=5)
        np.testing.assert_array_equal(sample_points(cfg), sample_points(cfg))
        assert sample_points(cfg).shape == (5, 3)

    def test_sphere_points_are_unit(self):
        cfg = SamplerConfig("sphere", seed=1, d=4, n=50)
        np.testing.assert_allclose(np.linalg.norm(sample_points(cfg), axis=1), 1.0)

    def test_config_validation(self):
        with pytest.raises(InvalidParameterError):
            SamplerConfig("gaussian", seed=-1, d=2, n=3)
        with pytest.raises(InvalidParameterError):
            SamplerConfig("gaussian", seed=0, d=0, n=3)

    def test_seed_streams_reproducible(self):
        first = [make_rng(s).random() for s in seed_streams(7, 3)]
        second = [make_rng(s).random() for s in seed_streams(7, 3)]
        assert first == second
        assert len(set(first)) == 3

    def test_build_generators_type_a(self):
        points = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 2.0], [3.0, 1.0]])
        gens = build_generators(points, "A")
        assert gens.columns.shape == (2, 3)
        assert gens.provenance is Provenance.TYPE_A_DIFFERENCES
        np.testing.assert_allclose(gens.columns[:, 0], [-1.0, 0.0])

    def test_build_generators_type_b(self):
        points = np.array([[0.0, 1.0], [1.0, 0.0], [1.0, 2.0], [3.0, 1.0]])
        gens = build_generators(points, "B")
        assert gens.columns.shape == (2, 4)
        np.testing.assert_allclose(gens.columns[:, -1], [3.0, 1.0])

    def test_build_generators_errors(self):
        with pytest.raises(InvalidParameterError):
            build_generators([[1.0, 2.0]], "A")
        with pytest.raises(DegenerateSampleError):
            build_generators([[1.0, 2.0], [1.0, 2.0]], "A")

    def test_uniform_subspace_orthonormal(self):
        basis = uniform_subspace(5, 3, make_rng(3))
        assert basis.shape == (5, 3)
        np.testing.assert_allclose(basis.T @ basis, np.eye(3), atol=1e-12)
        assert uniform_subspace(5, 0, make_rng(3)).shape == (5, 0)
        with pytest.raises(InvalidParameterError):
            uniform_subspace(3, 4, make_rng(3))


# ============================================================
# 6. RAYOS, DUALIDAD E INTERSECCIÓN
# ============================================================

class TestRaysAndDuality:

    def test_extreme_rays_of_orthant(self):
        assert rays_as_set(extreme_rays(-np.eye(2))) == {(1.0, 0.0), (0.0, 1.0)}

    def test_extreme_rays_lineality(self):
        with pytest.raises(NonPointedConeError):
            extreme_rays([[1.0, 0.0]])

    def test_dual_of_orthant(self, orthant):
        dual = dual_cone(orthant)
        assert rays_as_set(dual.columns) == {(-1.0, 0.0), (0.0, -1.0)}

    def test_meets_subspace(self, orthant):
        rng = make_rng(0)
        diagonal = np.array([[1.0], [1.0]]) / np.sqrt(2.0)
        antidiagonal = np.array([[1.0], [-1.0]]) / np.sqrt(2.0)
        assert meets_subspace(orthant.columns, diagonal, rng)
        assert not meets_subspace(orthant.columns, antidiagonal, rng)


# ============================================================
# 7. MUESTREO POR RECHAZO
# ============================================================

class TestSampleDualWeylCone:

    def test_two_generators_in_plane_always_accepted(self):
        cfg = SamplerConfig("gaussian", seed=5, d=2, n=3)
        gens, attempts = sample_dual_weyl_cone(cfg, "A")
        assert attempts == 1
        assert gens.columns.shape == (2, 2)

    def test_rejection_cap(self, monkeypatch):
        monkeypatch.setattr("core.geometry.cones.is_full_space", lambda gens: True)
        cfg = SamplerConfig("gaussian", seed=5, d=2, n=3)
        with pytest.raises(RejectionCapError) as info:
            sample_dual_weyl_cone(cfg, "A", max_attempts=3)
        assert info.value.attempts == 3
