"""
WeylCone - Tests de la ley de S_n.

1. pmf exacta y flotante
2. Colas impares y momentos
3. Mod-Poisson y función Ψ
4. TCL y asintótica en la red
"""
import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from scipy import stats
from scipy.special import gamma as scipy_gamma

from core.distribution import (
    asymptotic_odd_tail,
    asymptotic_point,
    asymptotic_upper_tail,
    clt_diagnostics,
    clt_odd_sum,
    kolmogorov_to_cdf,
    lln_deviation,
    mgf_ratio,
    mgf_ratio_closed_form,
    moment_summary,
    odd_tail_exact,
    odd_tail_profile,
    odd_tail_sum,
    pmf,
    pmf_moments,
    psi_limit,
    rate_function,
    realize_level,
    upper_tail,
)
from core.errors import GuardError, InvalidParameterError
from core.special import log_gamma, normal_cdf, normal_pdf, reciprocal_gamma

# Valores de alta precisión de formas cerradas (sqrt(pi), factoriales) y de Φ
SPECIAL_VALUES = json.loads(
    (Path(__file__).parent / "fixtures" / "special_values.json").read_text(encoding="utf-8")
)


# ============================================================
# 1. PMF
# ============================================================

class TestPmf:
    """Valores exactos, convolución y límites de tamaño."""

    def test_type_a_n3(self):
        distribution = pmf(3, "A")
        assert distribution.exact == (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1, 6))

    def test_type_b_n2(self):
        distribution = pmf(2, "B")
        assert distribution.exact == (Fraction(3, 8), Fraction(1, 2), Fraction(1, 8))

    def test_n_zero_is_point_mass(self):
        assert pmf(0, "A").exact == (Fraction(1),)

    @pytest.mark.parametrize("variant", ["A", "B"])
    def test_float_matches_exact(self, variant):
        exact = pmf(20, variant, exact=True)
        convolved = pmf(20, variant, exact=False)
        assert not convolved.is_exact
        np.testing.assert_allclose(convolved.probs, exact.probs, rtol=1e-12, atol=1e-300)

    @pytest.mark.parametrize("variant", ["A", "B"])
    def test_large_n_normalized(self, variant):
        distribution = pmf(2000, variant)
        assert math.fsum(distribution.probs) == pytest.approx(1.0, abs=1e-12)
        assert np.all(distribution.probs >= 0.0)

    def test_matches_polynomial_product(self):
        # pmf de una suma de Bernoulli por producto de polinomios
        coefficients = np.array([1.0])
        for k in range(1, 31):
            coefficients = np.convolve(coefficients, [1.0 - 1.0 / k, 1.0 / k])
        np.testing.assert_allclose(pmf(30, "A", exact=False).probs, coefficients, atol=1e-15)

    def test_probs_read_only(self):
        with pytest.raises(ValueError):
            pmf(5, "A").probs[0] = 1.0

    def test_negative_n(self):
        with pytest.raises(InvalidParameterError):
            pmf(-1, "A")

    def test_hard_cap(self):
        with pytest.raises(GuardError):
            pmf(50_001, "A")


# ============================================================
# 2. COLAS Y MOMENTOS
# ============================================================

class TestTails:
    """Sumas de índice impar por encima de m."""

    def test_odd_tail_examples(self):
        assert odd_tail_sum(pmf(3, "A"), 0) == pytest.approx(0.5)
        assert odd_tail_sum(pmf(3, "A"), 3) == 0.0
        assert odd_tail_sum(pmf(2, "B"), 0) == pytest.approx(0.5)

    def test_odd_tail_exact(self):
        assert odd_tail_exact(pmf(3, "A"), 0) == Fraction(1, 2)
        assert odd_tail_exact(pmf(3, "A"), 1) == Fraction(1, 2)
        assert odd_tail_exact(pmf(3, "A"), 2) == Fraction(1, 6)

    def test_odd_tail_exact_requires_exact_pmf(self):
        with pytest.raises(InvalidParameterError):
            odd_tail_exact(pmf(30, "A", exact=False), 0)

    @pytest.mark.parametrize("variant", ["A", "B"])
    def test_half_mass_on_odd_values(self, variant):
        assert odd_tail_sum(pmf(400, variant), 0) == pytest.approx(0.5, abs=1e-12)

    def test_negative_m(self):
        with pytest.raises(InvalidParameterError):
            odd_tail_sum(pmf(3, "A"), -1)

    def test_profile_matches_individual_pmfs(self):
        tails = odd_tail_profile(40, "B", 5)
        for j in (6, 10, 25, 40):
            assert tails[j] == pytest.approx(odd_tail_sum(pmf(j, "B", exact=False), 5), rel=1e-12)
        assert tails[5] == 0.0

    def test_upper_tail(self):
        assert upper_tail(pmf(3, "A"), 2) == pytest.approx(2 / 3)
        assert upper_tail(pmf(3, "A"), 0) == pytest.approx(1.0)

    @pytest.mark.parametrize("variant, sigma", [("A", 1.0), ("B", 0.5)])
    def test_moments_tie_in(self, variant, sigma):
        summary = moment_summary(500, variant)
        mean, variance = pmf_moments(pmf(500, variant))
        harmonic = math.fsum(1.0 / k for k in range(1, 501))
        assert summary.mean == pytest.approx(sigma * harmonic, rel=1e-14)
        assert mean == pytest.approx(summary.mean, rel=1e-10)
        assert variance == pytest.approx(summary.variance, rel=1e-9)


# ============================================================
# 3. MOD-POISSON
# ============================================================

class TestModPoisson:
    """Cociente de funciones generadoras y su límite."""

    def test_mgf_ratio_example(self):
        assert mgf_ratio(100, math.log(2.0), "A") == pytest.approx(1.01, rel=1e-12)

    @pytest.mark.parametrize("z, variant", [(0.0, "A"), (math.log(2.0), "A"), (math.log(3.0), "B")])
    def test_psi_equals_one(self, z, variant):
        assert psi_limit(z, variant) == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize("variant", ["A", "B"])
    @pytest.mark.parametrize("z", [-0.5, 0.5, 1.0])
    def test_closed_form_agrees(self, variant, z):
        assert mgf_ratio(500, z, variant) == pytest.approx(mgf_ratio_closed_form(500, z, variant), rel=1e-10)

    @pytest.mark.parametrize("variant", ["A", "B"])
    @pytest.mark.parametrize("z", [-0.5, 0.5, math.log(2.0)])
    def test_convergence_at_large_n(self, variant, z):
        assert abs(mgf_ratio(100_000, z, variant) - psi_limit(z, variant)) <= 1e-4

    def test_psi_against_scipy(self):
        for z in (-1.0, 0.3, 1.2):
            assert psi_limit(z, "A") == pytest.approx(1.0 / scipy_gamma(math.exp(z)), rel=1e-12)
            assert psi_limit(z, "B") == pytest.approx(1.0 / scipy_gamma(0.5 * (math.exp(z) + 1.0)), rel=1e-12)

    def test_special_functions(self):
        assert log_gamma(5.0) == pytest.approx(math.log(24.0))
        assert reciprocal_gamma(0.0) == 0.0
        assert reciprocal_gamma(-2.0) == 0.0
        assert normal_cdf(0.0) == 0.5
        with pytest.raises(ValueError):
            log_gamma(0.0)

    @pytest.mark.parametrize("name, function", [
        ("log_gamma", log_gamma),
        ("reciprocal_gamma", reciprocal_gamma),
        ("normal_cdf", normal_cdf),
        ("normal_pdf", normal_pdf),
    ])
    def test_special_functions_against_pinned_values(self, name, function):
        for entry in SPECIAL_VALUES[name]:
            assert function(entry["x"]) == pytest.approx(entry["value"], rel=1e-13), entry


# ============================================================
# 4. TCL Y ASINTÓTICA
# ============================================================

class TestCentralLimit:
    """Distancia de Kolmogorov y cantidades de tipo TCL."""

    @pytest.mark.parametrize("variant", ["A", "B"])
    def test_kolmogorov_decreases(self, variant):
        distances = [clt_diagnostics(n, variant) for n in (100, 1000, 10_000)]
        assert distances[0] > distances[1] > distances[2]
        assert distances[2] <= 0.2

    def test_kolmogorov_helper_against_uniform(self):
        # dos átomos de masa 1/2 frente a la uniforme en [-1/2, 3/2]: distancia 1/4
        uniform = stats.uniform(loc=-0.5, scale=2.0)
        assert kolmogorov_to_cdf(np.array([0.5, 0.5]), lambda k: k, uniform.cdf) == pytest.approx(0.25)

    def test_clt_diagnostics_small_n(self):
        with pytest.raises(InvalidParameterError):
            clt_diagnostics(1, "A")

    def test_clt_odd_sum(self):
        center, realized = clt_odd_sum(20_000, 0.0, "A")
        upper, _ = clt_odd_sum(20_000, 2.0, "A")
        assert abs(realized) < 0.2
        assert 0.0 < center < upper < 1.0
        assert abs(center - normal_cdf(realized)) < 0.25

    def test_lln_deviation_decreases(self):
        assert lln_deviation(10_000, "A", 0.5) < lln_deviation(100, "A", 0.5)

    def test_rate_function(self):
        assert rate_function(0.0) == 1.0
        assert rate_function(1.0) == 0.0
        assert rate_function(2.0) == pytest.approx(2.0 * math.log(2.0) - 1.0)
        with pytest.raises(InvalidParameterError):
            rate_function(-1.0)

    def test_realize_level(self):
        m, z_n = realize_level(1000, 2.0, "A")
        assert m == round(2.0 * math.log(1000))
        assert z_n == pytest.approx(m / math.log(1000))

    def test_realize_level_out_of_range(self):
        with pytest.raises(InvalidParameterError):
            realize_level(10, 100.0, "A")

    def test_asymptotic_point_order_of_magnitude(self):
        n, z = 20_000, 2.0
        m, _ = realize_level(n, z, "A")
        exact = pmf(n, "A")[m]
        approx = asymptotic_point(n, z, 0, "A")
        assert 0.5 < approx / exact < 2.0

    def test_asymptotic_odd_tail_below_one(self):
        assert asymptotic_odd_tail(20_000, 0.5, "A") == pytest.approx(0.5, abs=0.05)

    def test_asymptotic_odd_tail_rejects_one(self):
        with pytest.raises(InvalidParameterError):
            asymptotic_odd_tail(1000, 1.0, "A")

    def test_asymptotic_upper_tail(self):
        n, z = 20_000, 2.0
        m, _ = realize_level(n, z, "A")
        ratio = asymptotic_upper_tail(n, z, "A") / upper_tail(pmf(n, "A"), m)
        assert 0.5 < ratio < 2.0
        with pytest.raises(InvalidParameterError):
            asymptotic_upper_tail(n, 0.5, "A")
