"""Exact dyadic arithmetic against the Fraction reference."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ddecide.dyadic import (
    Dyadic,
    ONE,
    ZERO,
    dmax,
    dmin,
    fraction_ceil_to_grid,
    fraction_floor_to_grid,
)

dyadics = st.builds(
    Dyadic,
    st.integers(min_value=-(1 << 40), max_value=1 << 40),
    st.integers(min_value=-60, max_value=60),
)

rationals = st.fractions(
    min_value=Fraction(-1000), max_value=Fraction(1000), max_denominator=1 << 20
)


def test_canonical_zero():
    z = Dyadic(0, 17)
    assert z.m == 0 and z.e == 0
    assert z == ZERO
    assert z.to_fraction() == 0


def test_canonical_mantissa_is_odd():
    d = Dyadic(12, 0)  # 12 = 3 * 2**2
    assert d.m == 3 and d.e == 2
    assert d.to_fraction() == 12


@given(dyadics)
def test_mantissa_odd_or_zero(d):
    assert d.m == 0 or d.m % 2 != 0


@given(dyadics, dyadics)
def test_add_matches_fraction(a, b):
    assert (a + b).to_fraction() == a.to_fraction() + b.to_fraction()


@given(dyadics, dyadics)
def test_sub_matches_fraction(a, b):
    assert (a - b).to_fraction() == a.to_fraction() - b.to_fraction()


@given(dyadics, dyadics)
def test_mul_matches_fraction(a, b):
    assert (a * b).to_fraction() == a.to_fraction() * b.to_fraction()


@given(dyadics)
def test_neg_abs_sign(d):
    assert (-d).to_fraction() == -d.to_fraction()
    assert abs(d).to_fraction() == abs(d.to_fraction())
    f = d.to_fraction()
    assert d.sign == (f > 0) - (f < 0)


@given(dyadics, st.integers(min_value=-30, max_value=30))
def test_scale2_is_exact_power_shift(d, k):
    assert d.scale2(k).to_fraction() == d.to_fraction() * Fraction(2) ** k


@given(dyadics, dyadics)
def test_ordering_matches_fraction(a, b):
    fa, fb = a.to_fraction(), b.to_fraction()
    assert (a < b) == (fa < fb)
    assert (a <= b) == (fa <= fb)
    assert (a == b) == (fa == fb)


@given(dyadics, dyadics)
def test_equality_is_canonical(a, b):
    # equal values compare equal even when built from different spellings
    if a.to_fraction() == b.to_fraction():
        assert a.m == b.m and a.e == b.e


@given(dyadics, dyadics)
def test_dmin_dmax(a, b):
    assert dmin(a, b).to_fraction() == min(a.to_fraction(), b.to_fraction())
    assert dmax(a, b).to_fraction() == max(a.to_fraction(), b.to_fraction())


@given(dyadics)
def test_from_fraction_round_trip(d):
    assert Dyadic.from_fraction(d.to_fraction()) == d


def test_from_fraction_rejects_non_dyadic():
    with pytest.raises(ValueError):
        Dyadic.from_fraction(Fraction(1, 3))


def test_one_constant():
    assert ONE.to_fraction() == 1


@given(rationals, st.integers(min_value=0, max_value=40))
def test_floor_to_grid(value, p):
    got = fraction_floor_to_grid(value, p).to_fraction()
    step = Fraction(1, 1 << p)
    assert got <= value < got + step
    assert (got / step).denominator == 1


@given(rationals, st.integers(min_value=0, max_value=40))
def test_ceil_to_grid(value, p):
    got = fraction_ceil_to_grid(value, p).to_fraction()
    step = Fraction(1, 1 << p)
    assert got - step < value <= got
    assert (got / step).denominator == 1


@given(dyadics, st.integers(min_value=0, max_value=50))
def test_grid_rounding_fixes_grid_points(d, p):
    value = d.to_fraction()
    if value.denominator <= (1 << p):
        assert fraction_floor_to_grid(value, p).to_fraction() == value
        assert fraction_ceil_to_grid(value, p).to_fraction() == value


def test_grid_rounding_directed_pair():
    v = Fraction(1, 3)
    lo = fraction_floor_to_grid(v, 4).to_fraction()
    hi = fraction_ceil_to_grid(v, 4).to_fraction()
    assert lo == Fraction(5, 16)
    assert hi == Fraction(6, 16)


@given(dyadics, st.integers(min_value=0, max_value=40))
def test_member_grid_rounding_targets(d, p):
    lo = d.floor_to_grid(p)
    hi = d.ceil_to_grid(p)
    assert lo <= d <= hi
    assert lo.to_fraction() * (1 << p) % 1 == 0
    assert hi.to_fraction() * (1 << p) % 1 == 0
    assert (hi - lo).to_fraction() <= Fraction(1, 1 << p)
