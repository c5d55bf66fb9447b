import logging
import math

import numpy as np
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from pytest import approx, mark, raises

from ofip.classical_space import ClassicalInnerProduct, ClassicalNorm, DimensionMismatchError, p_norm
from ofip.fuzzy_number import AlphaLevelError
from ofip.fuzzy_structures import (
    EXAMPLE_SIMPLIFIED_LOWER,
    AlphaProfile,
    MixingError,
    MixingFunction,
    ProfileError,
    defining_predicate,
    derive_norm_triple,
    example_interval,
    example_magnitude,
    example_norm_triple,
    global_bound,
    make_adversarial_fip,
    make_general_fip,
    make_scaled_fip,
    make_scaled_fnorm,
    norm_defining_predicate,
    example_norm,
)

GRID = tuple(k / 10 for k in range(1, 11))
ELEVEN_POINT_GRID = (0.05,) + GRID

entries = st.floats(min_value=-10, max_value=10, allow_nan=False).map(lambda v: round(v, 6))
plane = arrays(np.float64, 2, elements=entries)
grid_levels = st.sampled_from(GRID)


def test_profile_rejects_reversed_constants():
    with raises(ProfileError):
        AlphaProfile.constant(2, 1, GRID)
    assert not AlphaProfile.constant(2, 1, GRID, ordered=False).ordered


@mark.parametrize("lower upper".split(), ((0, 1), (-1, 1), (1, math.inf)))
def test_profile_rejects_non_positive_or_infinite(lower, upper):
    with raises(ProfileError):
        AlphaProfile.constant(lower, upper, GRID)


def test_profile_grid_must_be_in_unit_interval():
    with raises(AlphaLevelError):
        AlphaProfile.constant(1, 2, (0.0, 0.5))
    with raises(ProfileError):
        AlphaProfile.constant(1, 2, (0.5, 0.2))


def test_table_profile_is_grid_only():
    profile = AlphaProfile.table([1, 2], [3, 4], (0.5, 1.0))
    assert profile.bounds(1.0) == (2.0, 4.0)
    with raises(ProfileError):
        profile.lower(0.75)


def test_affine_profile():
    profile = AlphaProfile.affine([0.5, 0.5], [1, 1], GRID)
    assert profile.bounds(1.0) == (1.0, 2.0)
    assert profile.bounds(0.2) == approx((0.6, 1.2))


@mark.parametrize("profile expected".split(),
                  ((AlphaProfile.constant(1, 2, GRID), 2.0),
                   (AlphaProfile.affine([0, 1], [1, 0], GRID), 10.0),
                   (AlphaProfile.constant(3, 3, GRID), 1.0)))
def test_global_bound(profile, expected):
    assert global_bound(profile) == approx(expected)


def test_mixing_range_is_validated():
    with raises(MixingError):
        MixingFunction.constant(1.5).t(0.5, None, None)
    with raises(MixingError):
        MixingFunction.constant(0.5, 7.0).phase(0.5, None, None)


def test_affine_mixing_is_clipped():
    mix = MixingFunction.affine(-1, 2)
    assert mix.t(0.2, None, None) == 0.0
    assert mix.t(1.0, None, None) == 1.0


def test_hashed_mixing_is_deterministic():
    x, y = np.array([1.0, 2.0]), np.array([3.0, -1.0])
    first, second = MixingFunction.hashed(5, 1), MixingFunction.hashed(5, 1)
    assert first.t(0.3, x, y) == second.t(0.3, x, y)
    assert 0 <= first.t(0.3, x, y) <= 1
    assert 0 <= first.phase(0.3, x, y) < 2 * math.pi
    assert first.t(0.3, x, y) != MixingFunction.hashed(5, 2).t(0.3, x, y)


@mark.parametrize("t expected".split(), ((0.0, 11), (1.0, 22), (0.5, 16.5)))
def test_scaled_values(scaled, t, expected):
    fip = scaled(t=t)
    assert fip(0.5, [1, 2], [3, 4]) == approx(expected)


def test_crisp_scaled_recovers_base(standard):
    profile = AlphaProfile.constant(1, 1, GRID)
    fip = make_scaled_fip(standard, profile, MixingFunction.hashed(0))
    x, y = np.array([1 + 1j, 2]), np.array([3, -1j])
    assert abs(fip(0.7, x, y)) == approx(abs(standard.inner(x, y)))


def test_phase_rotates_value(scaled):
    fip = scaled(t=0.0, phase=math.pi / 2)
    assert fip(1.0, [1, 2], [3, 4]) == approx(11j)


def test_scaled_rejects_unordered_profile(standard):
    with raises(ProfileError):
        make_scaled_fip(standard, AlphaProfile.constant(2, 1, GRID, ordered=False), MixingFunction.constant(0))


def test_alpha_is_validated(scaled):
    with raises(AlphaLevelError):
        scaled()(0, [1], [1])


def test_general_fip_hits_labels(standard):
    base2 = ClassicalInnerProduct.weighted([4, 4])
    profile = AlphaProfile.constant(3, 1, GRID, ordered=False)
    for t, expected in ((0.0, 3.0), (1.0, 4.0), (0.5, 3.5)):
        fip = make_general_fip(standard, base2, profile, MixingFunction.constant(t))
        assert abs(fip(0.5, [1, 0], [1, 0])) == approx(expected)
        assert defining_predicate(fip, 0.5, [1, 0], [1, 0])
    assert not fip.simplified


def test_general_fip_dimension_mismatch():
    with raises(DimensionMismatchError):
        make_general_fip(ClassicalInnerProduct.weighted([1, 2]), ClassicalInnerProduct.weighted([1, 2, 3]),
                         AlphaProfile.constant(1, 2, GRID), MixingFunction.constant(0))


@given(plane, plane, grid_levels)
def test_defining_predicate_holds_for_scaled(x, y, alpha):
    fip = make_scaled_fip(ClassicalInnerProduct.standard(), AlphaProfile.constant(1, 2, GRID),
                          MixingFunction.hashed(9))
    assert defining_predicate(fip, alpha, x, y)


def test_defining_predicate_at_zero(scaled):
    assert defining_predicate(scaled(), 0.5, [0, 0], [1, 2])


def test_adversarial_violates_defining_predicate(standard, caplog):
    caplog.set_level(logging.DEBUG, logger="ofip.fuzzy_structures")
    fip = make_adversarial_fip(standard, AlphaProfile.constant(1, 2, GRID))
    assert abs(fip(1.0, [1, 2], [3, 4])) == approx(44)
    assert not defining_predicate(fip, 1.0, [1, 2], [3, 4])
    assert "adversarial: K(44" in caplog.text
    # the band collapses to {0} on orthogonal pairs, so nothing is detectable there
    assert defining_predicate(fip, 1.0, [1, 0], [0, 1])


def test_derived_norm_examples(standard, scaled):
    crisp = derive_norm_triple(scaled(1, 1))
    assert abs(crisp(0.5, [3, 4])) == approx(5)
    assert crisp(0.5, [0, 0]) == 0
    wide = derive_norm_triple(scaled(1, 4, t=1.0))
    assert abs(wide(0.5, [1, 0])) == approx(2)
    assert wide.profile.bounds(0.5) == (1.0, 2.0)
    assert norm_defining_predicate(wide, 0.5, [1, 0])


def test_derive_needs_simplified_form(standard):
    fip = make_general_fip(standard, standard, AlphaProfile.constant(3, 1, GRID, ordered=False),
                           MixingFunction.constant(0))
    with raises(ProfileError):
        derive_norm_triple(fip)


@mark.parametrize("x expected".split(), (([1, 0], 3.0), ([3, 4], 15.0), ([0, 0], 0.0)))
def test_example_norm_at_alpha_one(x, expected):
    assert abs(example_norm(1.0, x)) == approx(expected, rel=1e-14, abs=1e-14)
    assert example_interval(x).contains(example_magnitude(1.0, x))


def test_example_interval_labels_are_unordered():
    interval = example_interval([1, 0])
    assert (interval.lo_label, interval.hi_label) == (3.0, 2.0)


def test_example_rejects_non_planar_input():
    with raises(DimensionMismatchError):
        example_norm(0.5, [1, 2, 3])


@given(plane, st.sampled_from(ELEVEN_POINT_GRID))
def test_example_magnitude_identity(x, alpha):
    magnitude = abs(example_norm(alpha, x))
    closed = 3 * alpha ** 2 * p_norm(x, 2) + 2 * (1 - alpha ** 2) * p_norm(x, 3)
    assert magnitude == approx(closed, rel=0, abs=1e-12 * (1 + p_norm(x, 2)))
    bounds = example_interval(x).canonical()
    slack = 1e-12 * (1 + p_norm(x, 2))
    assert bounds.lo - slack <= magnitude <= bounds.hi + slack


def test_verbatim_variant_differs_inside_the_unit_interval():
    x = [1.0, 2.0]
    residual = abs(example_norm(0.5, x, verbatim=True)) - example_magnitude(0.5, x)
    assert residual > 1e-6
    assert abs(example_norm(1.0, x, verbatim=True)) == approx(example_magnitude(1.0, x))


@given(plane, grid_levels)
def test_example_triples_contain_their_values(x, alpha):
    general = example_norm_triple(GRID)
    simplified = example_norm_triple(GRID, simplified=True)
    assert norm_defining_predicate(general, alpha, x)
    lower, upper = simplified.profile.bounds(alpha)
    assert lower == EXAMPLE_SIMPLIFIED_LOWER
    size = abs(simplified(alpha, x))
    n2 = p_norm(x, 2)
    assert lower * n2 * (1 - 1e-12) <= size <= upper * n2 * (1 + 1e-12)


def test_scaled_norm_over_a_p_norm():
    fnorm = make_scaled_fnorm(ClassicalNorm.p_norm(1), AlphaProfile.constant(1, 3, GRID), MixingFunction.constant(0.5))
    assert abs(fnorm(0.5, [1, -2])) == approx(6)
    assert norm_defining_predicate(fnorm, 0.5, [1, -2])
    with raises(ProfileError):
        make_scaled_fnorm(ClassicalNorm.p_norm(1), AlphaProfile.constant(3, 1, GRID, ordered=False),
                          MixingFunction.constant(0))
