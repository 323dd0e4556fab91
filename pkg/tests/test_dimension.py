from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dimcalc.dimension import (
    LTM,
    Dimension,
    DimensionSystem,
    as_rational,
    dim_inv,
    dim_mul,
    dim_pow,
    is_dimensionless,
    parse_monomial,
    render_monomial,
)
from dimcalc.errors import ParseError, SystemMismatchError

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)
dims = st.tuples(rationals, rationals, rationals).map(lambda e: Dimension(LTM, e))


@given(dims, dims, dims)
def test_multiplication_is_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(dims, dims)
def test_multiplication_is_commutative(a, b):
    assert dim_mul(a, b) == dim_mul(b, a)


@given(dims)
def test_identity_and_inverse(a):
    one = LTM.dimensionless()
    assert a * one == a
    assert is_dimensionless(a * dim_inv(a))
    assert a / a == one


@given(dims, rationals, rationals)
def test_power_laws(a, p, q):
    assert dim_pow(dim_pow(a, p), q) == a ** (p * q)
    assert a ** (p + q) == a ** p * a ** q


@given(dims, dims, rationals)
def test_power_distributes_over_product(a, b, q):
    assert (a * b) ** q == a ** q * b ** q


@given(dims)
def test_render_parse_round_trip(a):
    assert LTM.parse(a.render()) == a


@given(dims)
def test_render_parse_round_trip_with_unit_names(a):
    names = ("m", "s", "kg")
    assert LTM.parse(a.render(names), names) == a


@pytest.mark.parametrize("exps, text", [
    ((3, -2, -1), "L^3 T^-2 M^-1"),
    ((Fraction(1, 2), -1, 0), "L^(1/2) T^-1"),
    ((0, 0, 0), "1"),
    ((1, 0, 0), "L"),
    ((0, Fraction(-3, 2), 0), "T^(-3/2)"),
])
def test_render_examples(exps, text):
    assert LTM.dim(exps).render() == text


def test_gravitational_constant_dimension_by_name():
    assert LTM.dim(L=3, T=-2, M=-1) == LTM.parse("L^3 T^-2 M^-1")
    assert LTM.dim({"M": 1}).as_dict() == {"M": 1}


def test_mixing_systems_names_both():
    other = DimensionSystem(("U", "I"), name="electric")
    with pytest.raises(SystemMismatchError, match=r"\(L,T,M\).*electric"):
        LTM.base("L") * other.base("U")


def test_float_exponents_are_refused():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)
    assert as_rational("(2/3)") == Fraction(2, 3)


def test_system_validation():
    with pytest.raises(ValueError):
        DimensionSystem(())
    with pytest.raises(ValueError):
        DimensionSystem(("L", "L"))
    with pytest.raises(ValueError):
        Dimension(LTM, (1, 2))
    with pytest.raises(KeyError):
        LTM.base("Q")


def test_parse_monomial_forms():
    assert parse_monomial("m^3 s^-2 kg^(1/2)") == [("m", 3), ("s", -2), ("kg", Fraction(1, 2))]
    assert parse_monomial("1") == []
    assert LTM.parse("L L T^-1") == LTM.dim(L=2, T=-1)


@pytest.mark.parametrize("bad", ["L^", "L^(1/0)", "3L", "L^x", "Q"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        LTM.parse(bad)


def test_render_monomial_show_one():
    assert render_monomial(["a", "b"], [Fraction(1), Fraction(-1)], show_one=True) == "a^1 b^-1"
    assert render_monomial(["a", "b"], [Fraction(1), Fraction(0)]) == "a"


def test_integral_flag():
    assert LTM.dim(L=2).is_integral
    assert not (LTM.dim(L=1) ** Fraction(1, 2)).is_integral
