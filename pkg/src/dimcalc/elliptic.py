"""Complete elliptic integral of the first kind via the arithmetic-geometric mean."""

import math


def agm(a: float, b: float) -> float:
    if a < 0 or b < 0:
        raise ValueError("agm is defined for non-negative arguments")
    for _ in range(64):
        if abs(a - b) <= 1e-16 * max(a, b):
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def ellipk_modulus(k: float) -> float:
    """K(k) = int_0^{pi/2} dphi / sqrt(1 - k^2 sin^2 phi), modulus convention, |k| < 1."""
    if not abs(k) < 1:
        raise ValueError(f"K(k) diverges for |k| >= 1 (k={k})")
    return math.pi / (2.0 * agm(1.0, math.sqrt((1.0 - k) * (1.0 + k))))
