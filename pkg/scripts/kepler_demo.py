"""Similarity transformations of a circular two-body orbit.

Integrates the orbit, applies (lambda, tau, mu) dilations and reports whether
each image still solves the equations of motion with Gamma held fixed.
(4, 8, 1) is the Kepler instance: four times the size, eight times the period.
"""

import argparse

from dimcalc.gravsim import (
    DilationLTM,
    circular_two_body,
    integrate,
    orbital_period,
    residual_summary,
    similarity_transform,
)

DEFAULT_DILATIONS = ["1,1,1", "4,8,1", "1,1,2", "2,1,8", "9,27,1", "2,2,2"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("dilations", nargs="*", default=DEFAULT_DILATIONS, help="lambda,tau,mu triples")
    ap.add_argument("--samples", type=int, default=12501)
    args = ap.parse_args()

    system, init, period = circular_two_body(5e10, 5e10, 1.0)
    traj = integrate(system, init, 0.0, 1.25 * period, tol=1e-10, samples=args.samples)
    base = residual_summary(traj)
    p0 = orbital_period(traj)
    print(f"base orbit: period {p0:.12g} s, relative residual {base.relative:.3e}")
    print(f"{'lambda,tau,mu':>14} {'l^3 t^-2 m^-1':>14} {'rel.res':>10} {'a factor':>9} {'period x':>10}  verdict")
    for text in args.dilations:
        lam, tau, mu = (float(x) for x in text.split(","))
        d = DilationLTM(lam, tau, mu)
        img = similarity_transform(traj, d)
        s = residual_summary(img)
        ratio = orbital_period(img) / p0
        print(f"{text:>14} {d.constraint_value:14.6g} {s.relative:10.3e} {s.accel_factor:9.4g} {ratio:10.6g}  "
              f"{'PASS' if s.passes else 'FAIL'}")


if __name__ == "__main__":
    main()
