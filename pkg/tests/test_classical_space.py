import logging

import numpy as np
import numpy.testing as npt
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from pytest import approx, mark, raises

from ofip.classical_space import (
    ClassicalInnerProduct,
    ClassicalNorm,
    DependentVectorsError,
    DimensionMismatchError,
    NotOrthonormalError,
    OrthonormalSystem,
    UnsupportedNormError,
    axiom_residuals,
    classical_oracles,
    gram_schmidt,
    inner,
    p_norm,
    polarization,
)

entries = st.floats(min_value=-10, max_value=10, allow_nan=False)
vectors3 = arrays(np.float64, 3, elements=entries)


def test_standard_inner_examples(standard):
    assert inner(standard, [1, 0], [0, 1]) == 0
    assert inner(standard, [1, 2, 3], [1, 2, 3]) == 14
    assert inner(standard, np.array([1j, 0]), np.array([1, 0])) == 1j


def test_conjugate_linear_in_second_argument(standard):
    x, y = np.array([1 + 2j, 3]), np.array([2 - 1j, 1j])
    assert inner(standard, x, 2j * y) == approx(np.conj(2j) * inner(standard, x, y))


def test_weighted_inner():
    ip = ClassicalInnerProduct.weighted([4, 4])
    assert ip.inner([1, 0], [1, 0]) == 4
    assert ip.norm([1, 0]) == 2


@mark.parametrize("weights", ([0, 1], [-1, 2], []))
def test_weights_must_be_positive(weights):
    with raises(ValueError):
        ClassicalInnerProduct.weighted(weights)


def test_dimension_mismatch(standard):
    with raises(DimensionMismatchError):
        standard.inner([1, 2], [1, 2, 3])
    with raises(DimensionMismatchError):
        ClassicalInnerProduct.weighted([1, 2]).inner([1, 2, 3], [1, 2, 3])


@mark.parametrize("x p expected".split(),
                  (([3, 4], 2, 5.0), ([1, 1], 3, 2 ** (1 / 3)), ([1, 0], 3, 1.0),
                   ([1, -2], 1, 3.0), ([1, -2], np.inf, 2.0)))
def test_p_norm(x, p, expected):
    assert p_norm(x, p) == approx(expected, rel=1e-12)


def test_unsupported_p():
    with raises(UnsupportedNormError):
        p_norm([1, 2], 4)
    with raises(UnsupportedNormError):
        ClassicalNorm.p_norm(0.5)


def test_induced_norm(standard):
    assert ClassicalNorm.induced_by(standard)([3, 4]) == approx(5)


def test_gram_schmidt_canonical_basis_is_fixed(standard):
    system = gram_schmidt(np.eye(3), standard)
    npt.assert_allclose(system.vectors, np.eye(3))


def test_gram_schmidt_one_projection(standard):
    system = gram_schmidt([[1, 0], [1, 1]], standard)
    npt.assert_allclose(system.vectors, [[1, 0], [0, 1]], atol=1e-15)


def test_gram_schmidt_dependent_index(standard, caplog):
    caplog.set_level(logging.DEBUG, logger="ofip.classical_space")
    with raises(DependentVectorsError) as info:
        gram_schmidt([[1, 0], [2, 0]], standard)
    assert info.value.index == 2
    assert "input 2" in caplog.text


def test_gram_schmidt_weighted_complex():
    ip = ClassicalInnerProduct.weighted([1, 2, 3])
    vectors = [[1, 1j, 0], [0, 1, 1 - 1j], [2, 0, 1j]]
    system = gram_schmidt(vectors, ip)
    gram = np.array([[ip.inner(a, b) for b in system.vectors] for a in system.vectors])
    npt.assert_allclose(gram, np.eye(3), atol=1e-12)


def test_orthonormal_system_validates(standard):
    with raises(NotOrthonormalError) as info:
        OrthonormalSystem(np.array([[1.0, 0.0], [1.0, 1.0]]), standard)
    assert info.value.pair == (1, 2)


def test_oracles_parseval_case(standard):
    record = classical_oracles(standard, [1, 2, 3], [0, 1, 0], OrthonormalSystem.canonical_basis(3), 3)
    assert record.bessel_partial_sum == approx(14)
    assert record.bessel_bound == approx(14)


def test_oracles_orthogonal_pair(standard):
    record = classical_oracles(standard, [1, 0], [0, 1], OrthonormalSystem.canonical_basis(2), 2)
    assert record.parallelogram_residual == approx(0, abs=1e-12)
    assert record.cs_slack == approx(1)


def test_real_polarization(standard):
    assert polarization(standard, [1, 2], [3, 4]) == approx(11)
    record = classical_oracles(standard, [1, 2], [3, 4], OrthonormalSystem.canonical_basis(2), 2)
    assert record.polarization_residual == approx(0, abs=1e-12)


def test_complex_polarization(standard):
    x, y = np.array([1 + 1j, 2]), np.array([3j, 1 - 1j])
    assert polarization(standard, x, y) == approx(standard.inner(x, y), abs=1e-12)


def test_axiom_residuals_vanish():
    ip = ClassicalInnerProduct.weighted([1, 3])
    residuals = axiom_residuals(ip, np.array([1 + 1j, 2]), np.array([0.5, -1j]), np.array([2, 1]), 2 - 3j)
    assert max(residuals.values()) == approx(0, abs=1e-12)


@given(vectors3, vectors3)
def test_classical_results_hold(x, y):
    ip = ClassicalInnerProduct.weighted([1, 2, 0.5])
    record = classical_oracles(ip, x, y, gram_schmidt(np.eye(3), ip), 3)
    scale = 1 + ip.norm(x) ** 2 + ip.norm(y) ** 2
    assert record.cs_slack >= -1e-9 * scale
    assert record.parallelogram_residual <= 1e-9 * scale
    assert record.polarization_bound_slack >= -1e-9 * scale
    assert record.bessel_partial_sum <= record.bessel_bound + 1e-9 * scale


@given(vectors3)
def test_bessel_partial_sums_are_monotone(x):
    standard = ClassicalInnerProduct.standard()
    system = OrthonormalSystem.canonical_basis(3)
    sums = [classical_oracles(standard, x, x, system, n).bessel_partial_sum for n in range(4)]
    assert all(a <= b for a, b in zip(sums, sums[1:]))
