"""Signed ranges built from positive ranges, and homogeneous-function powers.

This is a verification substructure rather than a runtime representation.
Positive reals (``float`` or, for exact checks, ``Fraction``) serve as the
concrete positive range P. A signed value is a class of pairs (p, q) read as
the formal difference p - q; two pairs are equivalent when p1 + q2 == q1 + p2.

The second half models the q-th power of a range through functions that are
homogeneous of degree q, and the unit functional ``R0 -> (f -> f(R0))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

from .dimension import RationalLike, as_rational
from .errors import DomainError


@dataclass(frozen=True)
class PosPair:
    """Representative (p, q) of a class in (P x P)/~."""

    p: Real
    q: Real

    def __post_init__(self):
        if not (self.p > 0 and self.q > 0):
            raise DomainError(f"positive-range representatives must be > 0, got ({self.p}, {self.q})")

    def value(self) -> float:
        """The signed real this class stands for (only meaningful for the model P = R_{>0})."""
        return self.p - self.q


def pr_class_of(p: Real, q: Real) -> PosPair:
    return PosPair(p, q)


def _same(a: Real, b: Real, rel_tol: float) -> bool:
    if rel_tol == 0:
        return a == b
    return math.isclose(a, b, rel_tol=rel_tol)


def pr_eq(x: PosPair, y: PosPair, rel_tol: float = 0.0) -> bool:
    """(p1, q1) ~ (p2, q2)  iff  p1 + q2 == q1 + p2."""
    return _same(x.p + y.q, x.q + y.p, rel_tol)


def pr_add(x: PosPair, y: PosPair) -> PosPair:
    return PosPair(x.p + y.p, x.q + y.q)


def pr_scale(lam: Real, x: PosPair) -> PosPair:
    if lam > 0:
        return PosPair(lam * x.p, lam * x.q)
    if lam < 0:
        return PosPair(abs(lam) * x.q, abs(lam) * x.p)
    return PosPair(x.p, x.p)


def pr_less(x: PosPair, y: PosPair) -> bool:
    return x.p + y.q < x.q + y.p


def pr_zero(base: Real = 1) -> PosPair:
    return PosPair(base, base)


def pr_neg(x: PosPair) -> PosPair:
    return PosPair(x.q, x.p)


def pr_embed(p: Real, q: Real = 1) -> PosPair:
    """Embed a positive element as the class [q + p, q]; the class does not depend on q."""
    if not p > 0:
        raise DomainError(f"only positive elements embed, got {p}")
    return PosPair(q + p, q)


@dataclass(frozen=True)
class HomogeneousFunction:
    """f(r) = coefficient * r**degree on positive numerals r.

    Numerals are taken relative to a fixed reference unit, so f(kappa * r) ==
    kappa**degree * f(r) is a genuine floating-point check rather than a
    definition.
    """

    degree: Fraction
    coefficient: float

    def __post_init__(self):
        object.__setattr__(self, "degree", as_rational(self.degree))
        if not self.coefficient > 0:
            raise DomainError("homogeneous functions in H^q take positive values")

    def __call__(self, r: float) -> float:
        if not r > 0:
            raise DomainError(f"H^q functions are defined on the positive range only, got {r}")
        return self.coefficient * r ** (self.degree.numerator / self.degree.denominator)

    def __add__(self, other: HomogeneousFunction) -> HomogeneousFunction:
        if other.degree != self.degree:
            raise DomainError("cannot add homogeneous functions of different degree")
        return HomogeneousFunction(self.degree, self.coefficient + other.coefficient)

    def scaled(self, lam: float) -> HomogeneousFunction:
        return HomogeneousFunction(self.degree, lam * self.coefficient)


def unit_functional(unit: float):
    """The unit of R^q induced by a unit of R: evaluation at that unit."""
    if not unit > 0:
        raise DomainError("units are positive")

    def hat(f: HomogeneousFunction) -> float:
        return f(unit)

    hat.unit = unit
    return hat


def power_consistency(kappa: float, q: RationalLike) -> float:
    """kappa**m * kappa**(-n*q) for q = m/n; equals 1 when the power construction is unit-independent."""
    q = as_rational(q)
    m, n = q.numerator, q.denominator
    kq = kappa ** (m / n)
    return kappa ** m / kq ** n
