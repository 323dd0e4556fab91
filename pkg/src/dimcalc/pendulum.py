"""Pendulum theories and laws used by the Pi-reduction examples."""

import math
from typing import Sequence

from .dimension import DimensionSystem
from .elliptic import ellipk_modulus
from .pi import DimMatrix

LT = DimensionSystem(("L", "T"))

# columns: length ell, gravitational acceleration g, angular frequency omega
PENDULUM = DimMatrix(LT, ("ell", "g", "omega"), ((1, 1, 0), (0, -2, -1)))
# plus the (dimensionless) release amplitude theta0
PENDULUM_FINITE = DimMatrix(LT, ("ell", "g", "omega", "theta0"), ((1, 1, 0, 0), (0, -2, -1, 0)))


def small_angle_law(m: Sequence[float]) -> float:
    """omega^2 ell / g - 1."""
    ell, g, omega = m
    return omega * omega * ell / g - 1.0


def finite_amplitude_omega(ell: float, g: float, theta0: float) -> float:
    """Angular frequency of a pendulum released from rest at theta0 (radians, |theta0| < pi)."""
    return (math.pi / 2) * math.sqrt(g / ell) / ellipk_modulus(math.sin(theta0 / 2))


def finite_amplitude_law(m: Sequence[float]) -> float:
    """omega / omega_exact(ell, g, theta0) - 1."""
    ell, g, omega, theta0 = m
    return omega / finite_amplitude_omega(ell, g, theta0) - 1.0
