import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dimcalc.dimension import LTM, DimensionSystem
from dimcalc.errors import DimensionMismatchError, DomainError, FrameMismatchError, ParseError
from dimcalc.quantity import (
    Ordering,
    Quantity,
    UnitFrame,
    q_add,
    q_cmp,
    q_convert,
    q_inv,
    q_mul,
    q_pow,
    q_sqrt,
    unit_factor,
)

SI = UnitFrame.default(LTM)
L, T, M = (LTM.base(n) for n in "LTM")

mags = st.floats(min_value=1e-6, max_value=1e6)
scales = st.floats(min_value=1e-3, max_value=1e3)
small_ints = st.integers(min_value=-3, max_value=3)


def q(x, dim):
    return Quantity(x, dim, SI)


def test_default_frame_units():
    assert SI.unit_names == ("m", "s", "kg")
    assert SI.unit_scales == (1.0, 1.0, 1.0)
    assert UnitFrame.default(DimensionSystem(("U", "I"))).unit_names == ("V", "A")


def test_product_and_quotient_track_dimensions():
    v = q(3.0, L) / q(2.0, T)
    assert v.magnitude == 1.5 and v.dim == L / T
    a = q_mul(v, q_inv(q(2.0, T)))
    assert a.dim == LTM.dim(L=1, T=-2) and a.magnitude == 0.75


def test_addition_requires_equal_dimensions():
    assert q_add(q(1.0, L), q(2.0, L)).magnitude == 3.0
    with pytest.raises(DimensionMismatchError):
        q_add(q(1.0, L), q(1.0, T))


def test_mixed_frames_are_an_error():
    km = SI.rescaled((1000.0, 1.0, 1.0))
    with pytest.raises(FrameMismatchError):
        q_add(q(1.0, L), Quantity(1.0, L, km))
    with pytest.raises(FrameMismatchError):
        q_mul(q(1.0, L), Quantity(1.0, L, km))


def test_zero_is_a_quantity_but_has_no_inverse():
    z = q(0.0, L)
    assert q_add(z, q(2.0, L)).magnitude == 2.0
    with pytest.raises(DomainError):
        q_inv(z)
    with pytest.raises(DomainError):
        q_pow(z, -1)


def test_non_finite_magnitudes_rejected():
    with pytest.raises(DomainError):
        q(math.inf, L)
    with pytest.raises(DomainError):
        q(math.nan, L)


def test_sqrt():
    r = q_sqrt(q(9.0, LTM.dim(L=2, T=-2)))
    assert r.magnitude == 3.0 and r.dim == L / T
    half = q_sqrt(q(4.0, L))
    assert half.dim.exponents[0] == Fraction(1, 2)
    with pytest.raises(DomainError):
        q_sqrt(q(4.0, L), strict=True)
    with pytest.raises(DomainError):
        q_sqrt(q(-1.0, L))


def test_fractional_power_of_negative_rejected():
    with pytest.raises(DomainError):
        q_pow(q(-2.0, L), Fraction(1, 3))
    assert q_pow(q(-2.0, L), 3).magnitude == -8.0


def test_comparison():
    assert q_cmp(q(1.0, L), q(2.0, L)) is Ordering.LESS
    assert q_cmp(q(2.0, L), q(2.0, L)) is Ordering.EQUAL
    assert q(3.0, L) > q(2.0, L) and q(2.0, L) <= q(2.0, L)
    with pytest.raises(DimensionMismatchError):
        q_cmp(q(1.0, L), q(1.0, T))


def test_render_and_parse():
    g = SI.parse_quantity("6.6743e-11 m^3 s^-2 kg^-1")
    assert g.magnitude == 6.6743e-11
    assert g.dim == LTM.dim(L=3, T=-2, M=-1)
    assert g.render() == "6.6743e-11 m^3 s^-2 kg^-1"
    assert q(2.5, LTM.dimensionless()).render() == "2.5"
    with pytest.raises(ParseError):
        SI.parse_quantity("fast m")
    with pytest.raises(ParseError):
        SI.parse_quantity("1 furlong")


def test_convert_kilometres():
    km = SI.rescaled((1000.0, 1.0, 1.0))
    assert q_convert(q(1500.0, L), SI, km).magnitude == 1.5
    speed = q_convert(q(30.0, L / T), SI, km)
    assert math.isclose(speed.magnitude, 0.03, rel_tol=1e-15)


def test_convert_is_contravariant_in_the_unit():
    half_kg = SI.rescaled((1.0, 1.0, 0.5))
    assert q_convert(q(2.3, M), SI, half_kg).magnitude == 4.6
    # Gamma carries kg^-1, so its numeral halves
    g = q_convert(SI.parse_quantity("6.6743e-11 m^3 s^-2 kg^-1"), SI, half_kg)
    assert math.isclose(g.magnitude, 3.33715e-11, rel_tol=1e-15)


def test_convert_checks_explicit_scale():
    km = SI.rescaled((1000.0, 1.0, 1.0))
    assert q_convert(q(1.0, L), SI, km, scale=(1000.0, 1.0, 1.0)).magnitude == 0.001
    with pytest.raises(FrameMismatchError):
        q_convert(q(1.0, L), SI, km, scale=(10.0, 1.0, 1.0))
    with pytest.raises(FrameMismatchError):
        q_convert(q(1.0, L), km, SI)
    with pytest.raises(DomainError):
        SI.rescaled((0.0, 1.0, 1.0))


@given(mags, small_ints, small_ints, small_ints, scales, scales, scales)
def test_convert_round_trip(x, a, b, c, s1, s2, s3):
    dim = LTM.dim((a, b, c))
    other = SI.rescaled((s1, s2, s3))
    there = q_convert(q(x, dim), SI, other)
    back = q_convert(there, other, SI)
    assert math.isclose(back.magnitude, x, rel_tol=1e-12)
    assert math.isclose(there.magnitude * unit_factor(dim, (s1, s2, s3)), x, rel_tol=1e-12)


@given(mags, mags, small_ints, small_ints, scales, scales, scales)
def test_convert_commutes_with_products(x, y, a, b, s1, s2, s3):
    other = SI.rescaled((s1, s2, s3))
    u, v = q(x, LTM.dim(L=a)), q(y, LTM.dim(T=b, M=1))
    lhs = q_convert(q_mul(u, v), SI, other)
    rhs = q_mul(q_convert(u, SI, other), q_convert(v, SI, other))
    assert lhs.dim == rhs.dim
    assert math.isclose(lhs.magnitude, rhs.magnitude, rel_tol=1e-12)


@given(mags, mags, mags)
def test_multiplication_associates_within_rounding(x, y, z):
    a, b, c = q(x, L), q(y, T), q(z, M)
    lhs, rhs = (a * b) * c, a * (b * c)
    assert lhs.dim == rhs.dim
    assert math.isclose(lhs.magnitude, rhs.magnitude, rel_tol=1e-15)


def test_frame_validation():
    with pytest.raises(ValueError):
        UnitFrame(LTM, ("m", "m", "kg"))
    with pytest.raises(ValueError):
        UnitFrame(LTM, ("m", "s"))
    with pytest.raises(FrameMismatchError):
        Quantity(1.0, DimensionSystem(("U",)).base("U"), SI)
