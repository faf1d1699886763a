"""
WeylCone - Tests de la batería de aceptación.

Solo las comprobaciones baratas y el oráculo de los barridos; las de
Monte Carlo se ejercitan a través de sus propios módulos.

1. Comprobaciones exactas
2. Oráculo de convolución
3. Orquestación
4. Valores finales de los barridos
"""
import json

import numpy as np
import pytest

import core.acceptance as acceptance
import core.limit_theorems as limit_theorems
from core.acceptance import (
    check_chamber_counts,
    check_iv_normalization,
    check_parity,
    check_pinned_values,
    oracle_finite_value,
    oracle_mismatches,
    pin_sweep_values,
    pinned_mismatches,
    reversed_convolution,
    run_acceptance,
    sweep_grid,
)
from core.distribution import pmf
from core.errors import ConsistencyError
from core.limit_theorems import quermass_finite
from core.regimes import realize_regime
from models.acceptance import AcceptanceReport
from models.cone_type import ConeType
from models.regime import RegimeKind, RegimeSpec


# ============================================================
# 1. COMPROBACIONES EXACTAS
# ============================================================

class TestExactChecks:

    def test_parity(self):
        passed, detail = check_parity(quick=True)
        assert passed, detail

    def test_iv_normalization(self):
        passed, detail = check_iv_normalization(quick=True)
        assert passed, detail

    def test_pinned_values(self):
        assert check_pinned_values(quick=True) == (True, "4 valores exactos")

    def test_chamber_counts(self):
        passed, detail = check_chamber_counts(quick=True)
        assert passed, detail


# ============================================================
# 2. ORÁCULO
# ============================================================

class TestReversedConvolution:

    @pytest.mark.parametrize("variant", [ConeType.A, ConeType.B])
    def test_matches_forward_pmf(self, variant):
        forward = pmf(200, variant, exact=False).probs
        np.testing.assert_allclose(reversed_convolution(200, variant), forward, atol=1e-12)

    def test_small_exact_case(self):
        # S_3 tipo A: (0, 1/3, 1/2, 1/6)
        np.testing.assert_allclose(reversed_convolution(3, ConeType.A), [0.0, 1 / 3, 1 / 2, 1 / 6])


# ============================================================
# 3. ORQUESTACIÓN
# ============================================================

class TestRunAcceptance:

    def test_only_selected_checks(self):
        report = run_acceptance(quick=True, only=[4, 1])
        assert [c.number for c in report.checks] == [1, 4]
        assert report.passed
        assert report.failures() == []

    def test_errors_become_failures(self, monkeypatch):
        def broken(quick):
            raise ConsistencyError("desajuste")

        monkeypatch.setattr(acceptance, "CHECKS", [("Rota", broken), ("Fija", check_pinned_values)])
        report = run_acceptance(quick=True)
        assert not report.passed
        [failure] = report.failures()
        assert failure.number == 1
        assert failure.detail == "ConsistencyError: desajuste"
        assert report.checks[1].passed

    def test_empty_report_does_not_pass(self):
        assert not AcceptanceReport(quick=True).passed


# ============================================================
# 4. VALORES FINALES DE LOS BARRIDOS
# ============================================================

class TestSweepOracle:
    """finite_value frente al oráculo en orden inverso y frente a valores fijados."""

    def test_grid_covers_both_types(self):
        kinds_b = {spec.kind for spec in sweep_grid() if spec.variant is ConeType.B}
        assert kinds_b == {RegimeKind.FACE_RATIO, RegimeKind.STAT_DIM}

    def test_finite_values_match_oracle(self):
        assert oracle_mismatches(sweep_grid(), 2000) == []

    def test_quermass_oracle_small_case(self):
        spec = RegimeSpec(RegimeKind.QUERMASS_FIXED_K, "A", x=2.0, k=1)
        rr = realize_regime(spec, 50)
        assert oracle_finite_value(spec, 50) == pytest.approx(quermass_finite(rr, "A"), rel=1e-12)

    def test_wrong_evaluator_is_caught(self, monkeypatch):
        spec = RegimeSpec(RegimeKind.QUERMASS_FIXED_K, "A", x=2.0, k=1)
        original = limit_theorems.quermass_finite
        monkeypatch.setattr(limit_theorems, "quermass_finite", lambda rr, variant: 1.001 * original(rr, variant))
        assert len(oracle_mismatches([spec], 2000)) == 1

    def test_pinned_values_round_trip(self, tmp_path):
        path = tmp_path / "sweep_final.json"
        entries = pin_sweep_values(path, n=1500)
        assert len(entries) == len(sweep_grid())
        assert pinned_mismatches(path) == []

        stored = json.loads(path.read_text(encoding="utf-8"))
        stored[0]["finite_value"] *= 1.0 + 1e-6
        path.write_text(json.dumps(stored), encoding="utf-8")
        [failure] = pinned_mismatches(path)
        assert "n=1500" in failure
