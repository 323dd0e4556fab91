"""Exact exponent arithmetic for physical dimensions.

A dimension is the exponent vector of a derived quantity over a fixed, ordered
list of fundamental quantities. Products of quantities add exponent vectors,
inverses negate them, and rational powers scale them. All exponents are
:class:`fractions.Fraction`, so nothing in this module touches floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import ParseError, SystemMismatchError

RationalLike = Union[int, Fraction, str]


def as_rational(q: RationalLike) -> Fraction:
    """Coerce ``q`` to a Fraction, refusing floats (they are never exact enough)."""
    if isinstance(q, bool):
        raise TypeError("bool is not a rational exponent")
    if isinstance(q, (int, Fraction)):
        return Fraction(q)
    if isinstance(q, str):
        return Fraction(q.strip().strip("()"))
    raise TypeError(f"exponent must be int, Fraction or str, not {type(q).__name__}")


@dataclass(frozen=True)
class DimensionSystem:
    """Ordered list of fundamental quantity names, e.g. ``("L", "T", "M")``."""

    fundamentals: tuple[str, ...]
    name: str = ""

    def __post_init__(self):
        fundamentals = tuple(self.fundamentals)
        object.__setattr__(self, "fundamentals", fundamentals)
        if not fundamentals:
            raise ValueError("a dimension system needs at least one fundamental")
        for f in fundamentals:
            if not isinstance(f, str) or not f.strip():
                raise ValueError(f"invalid fundamental name {f!r}")
        if len(set(fundamentals)) != len(fundamentals):
            raise ValueError(f"duplicate fundamental names in {fundamentals}")

    @property
    def count(self) -> int:
        return len(self.fundamentals)

    @property
    def label(self) -> str:
        return self.name or "(" + ",".join(self.fundamentals) + ")"

    def index(self, name: str) -> int:
        try:
            return self.fundamentals.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a fundamental of {self.label}") from None

    def dimensionless(self) -> Dimension:
        return Dimension(self, (Fraction(0),) * self.count)

    def base(self, name: str) -> Dimension:
        exps = [Fraction(0)] * self.count
        exps[self.index(name)] = Fraction(1)
        return Dimension(self, tuple(exps))

    def dim(self, exponents: Union[Sequence[RationalLike], Mapping[str, RationalLike], None] = None,
            **kwargs: RationalLike) -> Dimension:
        """Build a dimension from a full exponent list or from ``name=exponent`` pairs.

        >>> LTM.dim(L=1, T=-2)
        Dimension(L T^-2)
        """
        if exponents is not None and not isinstance(exponents, Mapping):
            return Dimension(self, tuple(as_rational(e) for e in exponents))
        mapping = dict(exponents or {})
        mapping.update(kwargs)
        exps = [Fraction(0)] * self.count
        for key, value in mapping.items():
            exps[self.index(key)] = as_rational(value)
        return Dimension(self, tuple(exps))

    def parse(self, text: str, names: Sequence[str] | None = None) -> Dimension:
        """Parse a monomial such as ``L^3 T^-2 M^-1`` (or ``1``).

        ``names`` optionally substitutes unit names for the fundamental symbols.
        """
        symbols = tuple(names) if names is not None else self.fundamentals
        exps = [Fraction(0)] * self.count
        for name, exp in parse_monomial(text):
            if name not in symbols:
                raise ParseError(f"unknown symbol {name!r}; expected one of {', '.join(symbols)}")
            exps[symbols.index(name)] += exp
        return Dimension(self, tuple(exps))


@dataclass(frozen=True)
class Dimension:
    system: DimensionSystem
    exponents: tuple[Fraction, ...]

    def __post_init__(self):
        exps = tuple(as_rational(e) for e in self.exponents)
        object.__setattr__(self, "exponents", exps)
        if len(exps) != self.system.count:
            raise ValueError(
                f"{len(exps)} exponents given for {self.system.count} fundamentals of {self.system.label}"
            )

    def _check(self, other: Dimension) -> None:
        if not isinstance(other, Dimension):
            raise TypeError(f"expected Dimension, got {type(other).__name__}")
        if other.system != self.system:
            raise SystemMismatchError(
                f"dimension systems differ: {self.system.label} vs {other.system.label}"
            )

    def __mul__(self, other: Dimension) -> Dimension:
        self._check(other)
        return Dimension(self.system, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: Dimension) -> Dimension:
        return self * other.inv()

    def inv(self) -> Dimension:
        return Dimension(self.system, tuple(-a for a in self.exponents))

    def __pow__(self, q: RationalLike) -> Dimension:
        q = as_rational(q)
        return Dimension(self.system, tuple(q * a for a in self.exponents))

    @property
    def is_dimensionless(self) -> bool:
        return not any(self.exponents)

    @property
    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.exponents)

    def as_dict(self) -> dict[str, Fraction]:
        return {n: e for n, e in zip(self.system.fundamentals, self.exponents) if e}

    def render(self, names: Sequence[str] | None = None) -> str:
        return render_monomial(names if names is not None else self.system.fundamentals, self.exponents)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Dimension({self.render()})"


LTM = DimensionSystem(("L", "T", "M"))


def dim_mul(a: Dimension, b: Dimension) -> Dimension:
    return a * b


def dim_inv(a: Dimension) -> Dimension:
    return a.inv()


def dim_pow(a: Dimension, q: RationalLike) -> Dimension:
    return a ** q


def is_dimensionless(a: Dimension) -> bool:
    return a.is_dimensionless


def render_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"({q.numerator}/{q.denominator})"


def render_monomial(names: Sequence[str], exponents: Iterable[Fraction], show_one: bool = False) -> str:
    """``L^3 T^-2``; exponent 1 omitted unless ``show_one``; all-zero renders ``1``."""
    parts = []
    for name, e in zip(names, exponents):
        if e == 0:
            continue
        if e == 1 and not show_one:
            parts.append(name)
        else:
            parts.append(f"{name}^{render_rational(Fraction(e))}")
    return " ".join(parts) if parts else "1"


_MONO_TOKEN = re.compile(
    r"\s*(?P<name>[^\W\d]\w*)"
    r"(?:\s*\^\s*(?P<exp>[+-]?\d+|\(\s*[+-]?\d+\s*(?:/\s*[+-]?\d+\s*)?\)))?"
)


def parse_monomial(text: str) -> list[tuple[str, Fraction]]:
    """Split ``"m^3 s^-2 kg^(1/2)"`` into ``[("m", 3), ("s", -2), ("kg", 1/2)]``."""
    stripped = text.strip()
    if stripped in ("", "1"):
        return []
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _MONO_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"malformed monomial near {text[pos:]!r}", 1, pos + 1)
        exp_text = m.group("exp")
        if exp_text is None:
            exp = Fraction(1)
        else:
            inner = exp_text.strip().strip("()").replace(" ", "")
            num, _, den = inner.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator in exponent", 1, m.start("exp") + 1)
            exp = Fraction(int(num), int(den) if den else 1)
        out.append((m.group("name"), exp))
        pos = m.end()
    return out
