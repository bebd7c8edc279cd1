import numpy as np
import pytest

from chaoskit.errors import DimensionCap, DimensionMismatch, SingularOperator
from chaoskit.numerics import (
    adjoint,
    apply,
    as_operator,
    condition_number,
    eigenvalues,
    invert,
    operator_norm,
    singular_values,
)
from chaoskit.rng import SplitMix64


def random_matrix(rng, n):
    return rng.complex_normal_matrix(n, n)


def well_conditioned(rng, n, gate=1e6):
    m = random_matrix(rng, n)
    while condition_number(m) > gate:
        m = random_matrix(rng, n)
    return m


def test_as_operator_rejects_nonsquare():
    with pytest.raises(DimensionMismatch):
        as_operator(np.zeros((2, 3)))
    with pytest.raises(DimensionMismatch):
        as_operator(np.zeros(4))


def test_apply_shape_check():
    with pytest.raises(DimensionMismatch):
        apply(np.eye(3), np.zeros(4))


def test_adjoint_involution_exact():
    rng = SplitMix64(7)
    for n in (2, 5, 16):
        m = random_matrix(rng, n)
        assert np.array_equal(adjoint(adjoint(m)), m)


def test_adjoint_conjugate_transpose():
    m = np.array([[1 + 2j, 3], [4j, 5]])
    expected = np.array([[1 - 2j, -4j], [3, 5]])
    assert np.array_equal(adjoint(m), expected)


def test_operator_norm_examples():
    assert operator_norm(np.eye(5)) == pytest.approx(1.0, abs=1e-14)
    assert operator_norm(2 * np.eye(3)) == pytest.approx(2.0, abs=1e-14)
    eps = 0.3
    m = np.array([[0, 2 * eps], [0, 0]])
    assert operator_norm(m) == pytest.approx(0.6, abs=1e-14)


def test_invert_residual_small():
    rng = SplitMix64(11)
    for n in (4, 16, 64):
        m = well_conditioned(rng, n)
        res = np.linalg.norm(invert(m) @ m - np.eye(n))
        assert res <= 1e-10 * n


def test_invert_rejects_singular():
    m = np.zeros((3, 3), dtype=complex)
    m[0, 1] = 1.0
    with pytest.raises(SingularOperator):
        invert(m)


def test_singular_values_match_gram_eigenvalues():
    rng = SplitMix64(13)
    m = random_matrix(rng, 12)
    s = singular_values(m)
    gram = np.sort(np.abs(eigenvalues(adjoint(m) @ m)))[::-1]
    assert np.all(np.abs(s - np.sqrt(gram)) <= 1e-9 * s)


def test_operator_norm_submultiplicative():
    rng = SplitMix64(17)
    for _ in range(5):
        a = random_matrix(rng, 8)
        b = random_matrix(rng, 8)
        assert operator_norm(a @ b) <= operator_norm(a) * operator_norm(b) + 1e-10


def test_eigenvalues_of_triangular_matrix():
    rng = SplitMix64(19)
    m = np.triu(random_matrix(rng, 24))
    w = eigenvalues(m)
    diag = np.sort_complex(np.diag(m))
    assert np.allclose(np.sort_complex(w), diag, atol=1e-10)


def test_eigenvalues_dimension_cap():
    with pytest.raises(DimensionCap):
        eigenvalues(np.eye(300))
    # explicit override works
    w = eigenvalues(np.eye(300), dim_cap=512)
    assert np.allclose(w, 1.0)


def test_eigenvalues_sorted_by_modulus():
    w = eigenvalues(np.diag([1.0, -3.0, 2.0]))
    assert np.allclose(np.abs(w), [3.0, 2.0, 1.0])
