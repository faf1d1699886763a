"""
WeylCone - Tests de teselaciones de Weyl.

1. Construcción de arreglos
2. Enumeración de cámaras y verificación de D(n, d)
3. Cámara uniforme y sus generadores
4. Caras de una cámara
"""
import math

import numpy as np
import pytest

from core.arrangement import (
    arrangement_from_normals,
    build_weyl_arrangement,
    chamber_bound,
    chamber_generators,
    count_chamber_faces,
    enumerate_chambers,
    uniform_chamber,
    verify_chamber_count,
)
from core.errors import DegenerateSampleError, GuardError, InvalidParameterError
from core.geometry import sample_points
from models.geometry import SamplerConfig


def weyl_arrangement(n, d, variant, seed=0):
    points = sample_points(SamplerConfig("gaussian", seed=seed, d=d, n=n))
    return build_weyl_arrangement(points, variant)


# ============================================================
# 1. CONSTRUCCIÓN
# ============================================================

class TestBuildArrangement:
    """Número de normales y normalización."""

    def test_type_a_normals(self):
        arr = weyl_arrangement(3, 2, "A")
        assert arr.m == 3
        assert arr.d == 2
        np.testing.assert_allclose(np.linalg.norm(arr.normals, axis=1), 1.0)

    def test_type_b_normals(self):
        assert weyl_arrangement(2, 2, "B").m == 4
        assert weyl_arrangement(3, 2, "B").m == 9

    def test_generic_sample_has_no_parallel_pairs(self):
        assert weyl_arrangement(4, 3, "A").is_generic

    def test_parallel_pairs_detected(self):
        arr = arrangement_from_normals([[1.0, 0.0], [2.0, 0.0], [0.0, 1.0]])
        assert arr.parallel_pairs == ((0, 1),)
        assert not arr.is_generic

    def test_zero_normal(self):
        with pytest.raises(DegenerateSampleError):
            arrangement_from_normals([[0.0, 0.0], [1.0, 0.0]])

    def test_needs_two_points(self):
        with pytest.raises(InvalidParameterError):
            build_weyl_arrangement([[1.0, 2.0]], "A")


# ============================================================
# 2. ENUMERACIÓN
# ============================================================

class TestEnumerateChambers:
    """Conteos frente a D(n, d)."""

    @pytest.mark.parametrize("n, d, variant, expected", [
        (3, 2, "A", 6),
        (3, 3, "A", 6),
        (2, 2, "B", 8),
        (4, 2, "A", 12),
    ])
    def test_counts(self, n, d, variant, expected):
        assert len(enumerate_chambers(weyl_arrangement(n, d, variant))) == expected

    def test_canonical_order(self):
        chambers = enumerate_chambers(weyl_arrangement(3, 2, "A"), use_cache=False)
        signs = [c.signs for c in chambers]
        assert signs == sorted(signs)
        assert all(c.margin > 0 for c in chambers)

    def test_coincident_hyperplanes_flip_together(self):
        arr = arrangement_from_normals([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]])
        assert len(enumerate_chambers(arr)) == 4

    def test_chamber_bound(self):
        arr = weyl_arrangement(4, 2, "A")
        assert chamber_bound(arr) == 12

    def test_guard_on_hyperplanes(self):
        with pytest.raises(GuardError):
            enumerate_chambers(weyl_arrangement(10, 2, "A"))

    @pytest.mark.parametrize("n, d, variant", [(3, 2, "A"), (4, 2, "A"), (3, 2, "B")])
    def test_verify_chamber_count(self, n, d, variant):
        report = verify_chamber_count(n, d, variant, seeds=range(2))
        assert len(report.rows) == 4
        assert report.all_match

    def test_verify_uses_min_d_n(self):
        report = verify_chamber_count(3, 4, "A", seeds=[0])
        assert all(row.expected == 6 for row in report.rows)

    def test_verify_rejects_small_n(self):
        with pytest.raises(InvalidParameterError):
            verify_chamber_count(1, 2, "A", seeds=[0])


# ============================================================
# 3. CÁMARA UNIFORME
# ============================================================

class TestUniformChamber:

    def test_deterministic(self):
        arr = weyl_arrangement(4, 3, "A")
        assert uniform_chamber(arr, 11).signs == uniform_chamber(arr, 11).signs

    def test_witness_inside_chamber_cone(self):
        arr = weyl_arrangement(3, 2, "A")
        chamber = uniform_chamber(arr, 3)
        gens = chamber_generators(chamber, arr)
        products = np.asarray(chamber.signs)[:, None] * (arr.normals @ gens.columns)
        assert np.all(products >= -1e-9)

    def test_generators_with_lineality(self):
        # d > n - 1 en tipo A: los hiperplanos contienen la dirección común
        arr = weyl_arrangement(3, 3, "A")
        gens = chamber_generators(enumerate_chambers(arr)[0], arr)
        assert gens.m == 4


# ============================================================
# 4. CARAS DE UNA CÁMARA
# ============================================================

class TestChamberFaces:
    """f_k de cámaras pequeñas."""

    def test_average_rays_match_expected_faces(self):
        arr = weyl_arrangement(3, 2, "A")
        chambers = enumerate_chambers(arr)
        counts = [count_chamber_faces(c, arr, 1) for c in chambers]
        assert math.fsum(counts) / len(counts) == pytest.approx(2.0)

    def test_top_and_apex(self):
        arr = weyl_arrangement(3, 2, "A")
        chamber = enumerate_chambers(arr)[0]
        assert count_chamber_faces(chamber, arr, 2) == 1
        assert count_chamber_faces(chamber, arr, 0) == 1

    def test_lineality_has_no_apex(self):
        arr = weyl_arrangement(3, 3, "A")
        chamber = enumerate_chambers(arr)[0]
        assert count_chamber_faces(chamber, arr, 0) == 0

    def test_k_out_of_range(self):
        arr = weyl_arrangement(3, 2, "A")
        with pytest.raises(InvalidParameterError):
            count_chamber_faces(enumerate_chambers(arr)[0], arr, 3)

    def test_guard(self):
        arr = weyl_arrangement(3, 4, "A")
        with pytest.raises(GuardError):
            count_chamber_faces(enumerate_chambers(arr)[0], arr, 1)
