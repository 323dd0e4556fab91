"""Euclidean 3-vectors whose components are numerals of one scalar dimension."""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass
from typing import Iterable

from .dimension import Dimension
from .errors import DimensionMismatchError, DomainError, FrameMismatchError
from .quantity import Quantity, UnitFrame


@dataclass(frozen=True)
class Vec3Q:
    components: tuple[float, float, float]
    dim: Dimension
    frame: UnitFrame

    def __post_init__(self):
        comps = tuple(float(c) for c in self.components)
        if len(comps) != 3:
            raise ValueError(f"Vec3Q needs 3 components, got {len(comps)}")
        if not all(math.isfinite(c) for c in comps):
            raise DomainError(f"non-finite component in {comps}")
        if self.dim.system != self.frame.system:
            raise FrameMismatchError("dimension system does not match frame system")
        object.__setattr__(self, "components", comps)

    @classmethod
    def zero(cls, dim: Dimension, frame: UnitFrame) -> Vec3Q:
        return cls((0.0, 0.0, 0.0), dim, frame)

    @property
    def is_zero(self) -> bool:
        return not any(self.components)

    def _check(self, other: Vec3Q) -> None:
        if self.frame != other.frame:
            raise FrameMismatchError("vectors expressed in different frames")

    def __add__(self, other: Vec3Q) -> Vec3Q:
        self._check(other)
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dimension mismatch {self.dim} vs {other.dim}")
        return Vec3Q(tuple(a + b for a, b in zip(self.components, other.components)), self.dim, self.frame)

    def __sub__(self, other: Vec3Q) -> Vec3Q:
        return self + (-other)

    def __neg__(self) -> Vec3Q:
        return Vec3Q(tuple(-a for a in self.components), self.dim, self.frame)

    def __mul__(self, s):
        if isinstance(s, Quantity):
            return scale_q(self, s)
        return Vec3Q(tuple(a * float(s) for a in self.components), self.dim, self.frame)

    __rmul__ = __mul__

    def render(self) -> str:
        x, y, z = self.components
        return f"({x!r}, {y!r}, {z!r}) {self.frame.render(self.dim)}"

    def __str__(self) -> str:
        return self.render()


def dot(v: Vec3Q, w: Vec3Q) -> Quantity:
    v._check(w)
    if v.dim != w.dim:
        raise DimensionMismatchError(
            f"dot needs equal dimensions ({v.dim} vs {w.dim}); rescale with scale_q first"
        )
    return Quantity(sum(a * b for a, b in zip(v.components, w.components)), v.dim * w.dim, v.frame)


def scale_q(v: Vec3Q, s: Quantity) -> Vec3Q:
    if v.frame != s.frame:
        raise FrameMismatchError("vector and scalar expressed in different frames")
    return Vec3Q(tuple(a * s.magnitude for a in v.components), v.dim * s.dim, v.frame)


def norm(v: Vec3Q) -> Quantity:
    # |v| = sqrt(v.v) has dimension (dim^2)^(1/2); hypot avoids under/overflow of the squares
    return Quantity(math.hypot(*v.components), (v.dim * v.dim) ** Fraction(1, 2), v.frame)


def direction(v: Vec3Q) -> Vec3Q:
    """v / |v|, a dimensionless unit vector."""
    if v.is_zero:
        raise DomainError("the zero vector has no direction")
    n = norm(v).magnitude
    return Vec3Q(tuple(a / n for a in v.components), v.dim.system.dimensionless(), v.frame)


def vsum(vectors: Iterable[Vec3Q], dim: Dimension, frame: UnitFrame) -> Vec3Q:
    total = Vec3Q.zero(dim, frame)
    for v in vectors:
        total = total + v
    return total
