import math

from hypothesis import given
from hypothesis import strategies as st
from pytest import approx, mark, raises

from ofip.fuzzy_number import (
    AlphaLevelError,
    FuzzyNumber,
    MembershipError,
    alpha_cut,
    indicator_on,
)
from ofip.ordered_interval import CanonicalInterval, make

levels = st.floats(min_value=1e-6, max_value=1.0)


@mark.parametrize("interval point expected".split(),
                  (((2, 3), 2.5, 1.0), ((3, 2), 2.5, 1.0), ((2, 3), 4, 0.0), ((2, 3), 3, 1.0)))
def test_indicator_membership(interval, point, expected):
    assert indicator_on(make(*interval)).membership(point) == expected


def test_widened_indicator_keeps_its_cut():
    u = indicator_on(make(2, 3), rel=1e-12)
    assert u.membership(3 + 1e-13) == 1.0
    assert u.membership(3.01) == 0.0
    assert alpha_cut(u, 1.0).cut == CanonicalInterval(2, 3)


def test_indicator_cut_is_its_support():
    cut = alpha_cut(indicator_on(make(2, 3)), 0.5)
    assert cut.cut == CanonicalInterval(2, 3)
    assert alpha_cut(indicator_on(make(3, 2)), 1.0).cut == CanonicalInterval(2, 3)


def test_constant_cuts():
    assert alpha_cut(FuzzyNumber.constant(0), 0.5).is_empty
    whole = alpha_cut(FuzzyNumber.constant(0.7), 0.5)
    assert whole.cut == CanonicalInterval(-math.inf, math.inf)
    assert alpha_cut(FuzzyNumber.constant(0.7), 0.8).is_empty


def test_triangle_cut():
    cut = alpha_cut(FuzzyNumber.triangular(0, 1, 2), 0.5)
    assert cut.cut.lo == approx(0.5)
    assert cut.cut.hi == approx(1.5)


def test_trapezoid_cut_and_membership():
    u = FuzzyNumber.trapezoidal(0, 1, 3, 5)
    assert u(2) == 1.0
    assert u(4) == approx(0.5)
    assert u(-1) == 0.0
    cut = u.alpha_cut(0.5)
    assert (cut.cut.lo, cut.cut.hi) == (approx(0.5), approx(4.0))


def test_cut_above_peak_is_empty():
    u = FuzzyNumber.piecewise_linear([(0, 0.0), (1, 0.6), (2, 0.0)])
    assert u.alpha_cut(0.7).is_empty


@mark.parametrize("alpha", (0, -0.1, 1.5, math.nan))
def test_alpha_outside_unit_interval(alpha):
    with raises(AlphaLevelError):
        alpha_cut(FuzzyNumber.triangular(0, 1, 2), alpha)


def test_non_quasi_concave_rejected():
    with raises(MembershipError):
        FuzzyNumber.piecewise_linear([(0, 1.0), (1, 0.0), (2, 1.0)])


def test_unsorted_breakpoints_rejected():
    with raises(MembershipError):
        FuzzyNumber.piecewise_linear([(1, 0.0), (0, 1.0)])


def test_callable_membership_has_no_exact_cut():
    u = FuzzyNumber.from_callable(lambda x: math.exp(-x * x))
    assert u(0) == 1.0
    with raises(MembershipError):
        u.alpha_cut(0.5)


def test_membership_out_of_range_rejected():
    u = FuzzyNumber.from_callable(lambda x: 2.0)
    with raises(MembershipError):
        u(0)


@given(levels, levels)
def test_cuts_are_nested(first, second):
    low, high = sorted((first, second))
    u = FuzzyNumber.triangular(-1, 0.5, 4)
    assert u.alpha_cut(high).issubset(u.alpha_cut(low))


@given(levels)
def test_cut_endpoints_reach_the_level(alpha):
    u = FuzzyNumber.triangular(-1, 0.5, 4)
    cut = u.alpha_cut(alpha).cut
    assert u(cut.lo) == approx(alpha, abs=1e-9)
    assert u(cut.hi) == approx(alpha, abs=1e-9)
