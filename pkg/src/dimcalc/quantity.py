"""Scalar quantities: a real numeral times the frame's unit for its dimension.

A :class:`UnitFrame` picks one positive unit per fundamental range. A
:class:`Quantity` stores the numeral relative to that frame; arithmetic is only
defined between quantities of the same frame, so changing units is always an
explicit :func:`q_convert`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dimension import Dimension, DimensionSystem, RationalLike, as_rational
from .errors import DimensionMismatchError, DomainError, FrameMismatchError, ParseError

# Conventional unit symbols for common fundamentals; anything else defaults to its own name.
DEFAULT_UNITS = {"L": "m", "T": "s", "M": "kg", "I": "A", "U": "V", "Theta": "K", "N": "mol"}


@dataclass(frozen=True)
class UnitFrame:
    """One positive unit per fundamental.

    ``unit_scales`` records each unit relative to a fixed reference unit; two
    frames that differ only by scales describe the same physics with different
    numerals.
    """

    system: DimensionSystem
    unit_names: tuple[str, ...]
    unit_scales: tuple[float, ...] = field(default=())

    def __post_init__(self):
        names = tuple(self.unit_names)
        object.__setattr__(self, "unit_names", names)
        scales = tuple(float(s) for s in self.unit_scales) or (1.0,) * self.system.count
        object.__setattr__(self, "unit_scales", scales)
        if len(names) != self.system.count:
            raise ValueError(f"need {self.system.count} unit names, got {len(names)}")
        if any(not isinstance(n, str) or not n.strip() for n in names):
            raise ValueError(f"unit names must be non-empty strings: {names}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate unit names: {names}")
        if len(scales) != self.system.count or not all(s > 0 and math.isfinite(s) for s in scales):
            raise ValueError(f"unit scales must be {self.system.count} positive finite numbers")

    @classmethod
    def default(cls, system: DimensionSystem) -> UnitFrame:
        return cls(system, tuple(DEFAULT_UNITS.get(f, f) for f in system.fundamentals))

    def rescaled(self, scale: Sequence[float]) -> UnitFrame:
        """Frame whose i-th unit is ``scale[i]`` times the current one."""
        scale = _check_scale(scale, self.system)
        return UnitFrame(self.system, self.unit_names,
                         tuple(a * b for a, b in zip(self.unit_scales, scale)))

    def render(self, dim: Dimension) -> str:
        return dim.render(self.unit_names)

    def parse_units(self, text: str) -> Dimension:
        return self.system.parse(text, self.unit_names)

    def quantity(self, magnitude: float, dim: Dimension | str) -> Quantity:
        if isinstance(dim, str):
            dim = self.system.parse(dim)
        return Quantity(magnitude, dim, self)

    def parse_quantity(self, text: str) -> Quantity:
        """Parse ``"6.6743e-11 m^3 s^-2 kg^-1"``."""
        text = text.strip()
        head, _, rest = text.partition(" ")
        try:
            magnitude = float(head)
        except ValueError:
            raise ParseError(f"expected a number at start of {text!r}") from None
        return Quantity(magnitude, self.parse_units(rest), self)


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Quantity:
    magnitude: float
    dim: Dimension
    frame: UnitFrame

    def __post_init__(self):
        object.__setattr__(self, "magnitude", float(self.magnitude))
        if not math.isfinite(self.magnitude):
            raise DomainError(f"quantity magnitude must be finite, got {self.magnitude}")
        if self.dim.system != self.frame.system:
            raise FrameMismatchError(
                f"dimension system {self.dim.system.label} does not match frame system {self.frame.system.label}"
            )

    @property
    def is_positive(self) -> bool:
        return self.magnitude > 0

    def render(self) -> str:
        units = self.frame.render(self.dim)
        return repr(self.magnitude) if units == "1" else f"{self.magnitude!r} {units}"

    def __str__(self) -> str:
        return self.render()

    def __mul__(self, other):
        if isinstance(other, Quantity):
            return q_mul(self, other)
        return Quantity(self.magnitude * float(other), self.dim, self.frame)

    def __rmul__(self, other):
        return Quantity(float(other) * self.magnitude, self.dim, self.frame)

    def __truediv__(self, other):
        if isinstance(other, Quantity):
            return q_mul(self, q_inv(other))
        return Quantity(self.magnitude / float(other), self.dim, self.frame)

    def __add__(self, other: Quantity) -> Quantity:
        return q_add(self, other)

    def __sub__(self, other: Quantity) -> Quantity:
        return q_add(self, -other)

    def __neg__(self) -> Quantity:
        return Quantity(-self.magnitude, self.dim, self.frame)

    def __abs__(self) -> Quantity:
        return Quantity(abs(self.magnitude), self.dim, self.frame)

    def __pow__(self, q: RationalLike) -> Quantity:
        return q_pow(self, q)

    def __lt__(self, other: Quantity) -> bool:
        return q_cmp(self, other) is Ordering.LESS

    def __le__(self, other: Quantity) -> bool:
        return q_cmp(self, other) is not Ordering.GREATER

    def __gt__(self, other: Quantity) -> bool:
        return q_cmp(self, other) is Ordering.GREATER

    def __ge__(self, other: Quantity) -> bool:
        return q_cmp(self, other) is not Ordering.LESS


def _same_frame(a: Quantity, b: Quantity) -> None:
    if a.frame != b.frame:
        raise FrameMismatchError(
            f"frame mismatch: {a.frame.unit_names}{a.frame.unit_scales} vs {b.frame.unit_names}{b.frame.unit_scales}"
        )


def _same_dim(a: Quantity, b: Quantity) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimension mismatch {a.dim} vs {b.dim}")


def q_mul(a: Quantity, b: Quantity) -> Quantity:
    _same_frame(a, b)
    return Quantity(a.magnitude * b.magnitude, a.dim * b.dim, a.frame)


def q_inv(a: Quantity) -> Quantity:
    if a.magnitude == 0:
        raise DomainError(f"division by zero: cannot invert zero quantity of dimension {a.dim}")
    return Quantity(1.0 / a.magnitude, a.dim.inv(), a.frame)


def q_add(a: Quantity, b: Quantity) -> Quantity:
    _same_frame(a, b)
    _same_dim(a, b)
    return Quantity(a.magnitude + b.magnitude, a.dim, a.frame)


def q_sqrt(a: Quantity, strict: bool = False) -> Quantity:
    """Square root; ``strict`` additionally demands even integer exponents."""
    if a.magnitude < 0:
        raise DomainError(f"square root of negative quantity {a}")
    half = a.dim ** Fraction(1, 2)
    if strict and not half.is_integral:
        raise DomainError(f"square root of {a.dim} leaves non-integer exponents (strict mode)")
    return Quantity(math.sqrt(a.magnitude), half, a.frame)


def q_pow(a: Quantity, q: RationalLike) -> Quantity:
    q = as_rational(q)
    if q.denominator == 1:
        if q < 0 and a.magnitude == 0:
            raise DomainError(f"zero quantity raised to negative power {q}")
        magnitude = a.magnitude ** int(q)
    else:
        if a.magnitude <= 0:
            raise DomainError(f"fractional power {q} of non-positive quantity {a}")
        magnitude = a.magnitude ** (q.numerator / q.denominator)
    return Quantity(magnitude, a.dim ** q, a.frame)


def q_cmp(a: Quantity, b: Quantity) -> Ordering:
    _same_frame(a, b)
    _same_dim(a, b)
    if a.magnitude < b.magnitude:
        return Ordering.LESS
    if a.magnitude > b.magnitude:
        return Ordering.GREATER
    return Ordering.EQUAL


def _check_scale(scale: Sequence[float], system: DimensionSystem) -> tuple[float, ...]:
    scale = tuple(float(s) for s in scale)
    if len(scale) != system.count:
        raise ValueError(f"need {system.count} scale factors, got {len(scale)}")
    if not all(s > 0 and math.isfinite(s) for s in scale):
        raise DomainError(f"scale factors must be positive and finite: {scale}")
    return scale


def unit_factor(dim: Dimension, scale: Sequence[float]) -> float:
    """prod_i scale_i ** exponent_i, the factor by which the dim's unit grows."""
    factor = 1.0
    for s, e in zip(scale, dim.exponents):
        if e:
            factor *= s ** (e.numerator if e.denominator == 1 else e.numerator / e.denominator)
    return factor


def q_convert(a: Quantity, from_frame: UnitFrame, to_frame: UnitFrame,
              scale: Sequence[float] | None = None) -> Quantity:
    """Re-express ``a`` in ``to_frame`` whose units are ``scale`` times those of ``from_frame``.

    The quantity itself is unchanged; its numeral picks up prod scale_i^(-n_i).
    With ``scale=None`` the factors are read off the frames' ``unit_scales``.
    """
    if a.frame != from_frame:
        raise FrameMismatchError("quantity is not expressed in from_frame")
    if from_frame.system != to_frame.system:
        raise FrameMismatchError(
            f"frames use different systems: {from_frame.system.label} vs {to_frame.system.label}"
        )
    implied = tuple(t / f for t, f in zip(to_frame.unit_scales, from_frame.unit_scales))
    if scale is None:
        scale = implied
    else:
        scale = _check_scale(scale, from_frame.system)
        if any(not math.isclose(s, i, rel_tol=1e-12) for s, i in zip(scale, implied)):
            raise FrameMismatchError(f"scale {scale} inconsistent with frames (implied {implied})")
    return Quantity(a.magnitude / unit_factor(a.dim, scale), a.dim, to_frame)
