"""Typed physical quantities, Buckingham Pi reduction and dimension-checked N-body gravitation."""

from .dimension import LTM, Dimension, DimensionSystem
from .errors import (
    DimcalcError,
    DimensionMismatchError,
    DomainError,
    FrameMismatchError,
    IndeterminateError,
    ParseError,
    SingularityError,
    SystemMismatchError,
)
from .quantity import Quantity, UnitFrame, q_add, q_cmp, q_convert, q_inv, q_mul, q_pow, q_sqrt
from .vec3q import Vec3Q, dot, norm, scale_q

__all__ = [
    "LTM", "Dimension", "DimensionSystem",
    "DimcalcError", "DimensionMismatchError", "DomainError", "FrameMismatchError",
    "IndeterminateError", "ParseError", "SingularityError", "SystemMismatchError",
    "Quantity", "UnitFrame", "q_add", "q_cmp", "q_convert", "q_inv", "q_mul", "q_pow", "q_sqrt",
    "Vec3Q", "dot", "norm", "scale_q",
]
