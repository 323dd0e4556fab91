"""Pi reduction of the pendulum, small-angle and finite-amplitude.

Small angles: omega^2 ell / g = 1, so F(Pi_1) = Pi_1 - 1 after reduction.
Finite amplitude: omega = (pi/2) sqrt(g/ell) / K(sin(theta0/2)); the reduced
law is F(Pi_1, theta0) = Pi_1 - (pi / (2 K(sin(theta0/2))))^2.
"""

import argparse
import math

from dimcalc.elliptic import ellipk_modulus
from dimcalc.pendulum import PENDULUM, PENDULUM_FINITE, finite_amplitude_law, small_angle_law
from dimcalc.pi import kernel_basis, reduce_law


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    A = PENDULUM
    B = kernel_basis(A)
    F = reduce_law(A, B, small_angle_law, samples=args.samples, seed=args.seed)
    print("\n".join(B.render(A.derived_names)))
    print(f"F(1) = {F(1.0)!r}; {F.report.dilation_violations} dilation violations in {F.report.samples} samples")

    A4 = PENDULUM_FINITE
    B4 = kernel_basis(A4)
    F4 = reduce_law(A4, B4, finite_amplitude_law, samples=args.samples, seed=args.seed)
    print("\n".join(B4.render(A4.derived_names)))
    for theta0 in (0.1, 0.5, 1.0, 2.0, 3.0):
        pi1 = (math.pi / 2 / ellipk_modulus(math.sin(theta0 / 2))) ** 2
        print(f"theta0 = {theta0:3.1f}: Pi_1 = {pi1:.15f}, F(Pi_1, theta0) = {F4(pi1, theta0):+.2e}")


if __name__ == "__main__":
    main()
