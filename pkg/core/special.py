"""
WeylCone - Funciones especiales sobre math.lgamma y math.erfc.
"""
import math


def log_gamma(x: float) -> float:
    """log Γ(x) para x > 0."""
    if x <= 0:
        raise ValueError(f"log Γ solo se define aquí para x > 0 (recibido {x})")
    return math.lgamma(x)


def reciprocal_gamma(x: float) -> float:
    """1/Γ(x); vale 0 en los polos y no desborda para |x| grande."""
    if x <= 0 and x == math.floor(x):
        return 0.0
    if x > 0:
        return math.exp(-math.lgamma(x))
    # signo de Γ en (-k, -k+1) es (-1)^k
    sign = -1.0 if math.ceil(-x) % 2 else 1.0
    return sign * math.exp(-math.lgamma(x))


def normal_cdf(x: float) -> float:
    """Φ(x) = erfc(-x/√2)/2."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def normal_pdf(x: float) -> float:
    return math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)
