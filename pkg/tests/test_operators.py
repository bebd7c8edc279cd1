import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chaoskit.errors import (
    DegreeTooLarge,
    DimensionCap,
    InvalidWeights,
    OddGrid,
    OutsideDisk,
    SingularBlock,
)
from chaoskit.numerics import eigenvalues, invert
from chaoskit.operators import (
    BlockDiagonalOperator,
    BlockPerturbationSpec,
    LebesgueDiscretizationSpec,
    WeightedShiftSpec,
    block_inverse_closed_form,
    make_block_perturbation,
    make_lebesgue_operator,
    make_multiplication_truncation,
    make_weighted_backward_shift,
    perturbation_block,
    reproducing_kernel_vector,
    scalar_perturb,
    star_number,
    weighted_adjoint,
    weighted_inner,
    weights_from_rule,
)
from chaoskit.rng import SplitMix64


# --- weighted shifts -------------------------------------------------------


def test_unit_shift_matrix():
    m = make_weighted_backward_shift(WeightedShiftSpec(dim=3, weights=(1, 1)))
    assert np.array_equal(m, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])


def test_harmonic_weights_superdiagonal():
    w = weights_from_rule("1/n", 3)
    m = make_weighted_backward_shift(WeightedShiftSpec(dim=4, weights=tuple(w)))
    assert np.allclose(np.diag(m, k=1), [1.0, 0.5, 1.0 / 3.0])
    assert np.count_nonzero(m) == 3


def test_two_dim_shift_is_nilpotent_block():
    eps = 0.3
    m = make_weighted_backward_shift(WeightedShiftSpec(dim=2, weights=(2 * eps,)))
    assert np.array_equal(m, [[0, 0.6], [0, 0]])


def test_shift_rejects_zero_weight_and_bad_length():
    with pytest.raises(InvalidWeights):
        WeightedShiftSpec(dim=3, weights=(1.0, 0.0))
    with pytest.raises(InvalidWeights):
        WeightedShiftSpec(dim=3, weights=(1.0,))


def test_shift_nilpotency_exact():
    for dim in (2, 5, 9):
        m = make_weighted_backward_shift(
            WeightedShiftSpec(dim=dim, weights=tuple(weights_from_rule("1/n", dim - 1)))
        )
        assert np.array_equal(np.linalg.matrix_power(m, dim), np.zeros((dim, dim)))


def test_weights_from_rule():
    assert weights_from_rule("1/n", 3) == [1.0, 0.5, 1.0 / 3.0]
    assert weights_from_rule("const:2", 2) == [2.0, 2.0]
    assert weights_from_rule("pow:-0.5", 4)[3] == pytest.approx(0.5)
    with pytest.raises(InvalidWeights):
        weights_from_rule("cubic", 3)


# --- scalar perturbation ---------------------------------------------------


def test_scalar_perturb_examples():
    t = np.array([[0, 1], [2, 3]], dtype=complex)
    assert np.array_equal(scalar_perturb(0, t), t)
    assert np.array_equal(scalar_perturb(1, np.zeros((2, 2))), np.eye(2))
    eps = 0.5
    b = scalar_perturb(1 - eps, make_weighted_backward_shift(
        WeightedShiftSpec(dim=2, weights=(2 * eps,))))
    assert np.array_equal(b, perturbation_block(2, eps, lam=1.0))


# --- block perturbations ---------------------------------------------------


def pow_rule(p):
    return lambda j: float(j) ** p


def test_single_block_example():
    spec = BlockPerturbationSpec(lam=1.0, block_count=1, eps_rule=lambda j: 0.5,
                                 size_rule=lambda j: 1)
    assert np.array_equal(make_block_perturbation(spec), [[0.5]])


def test_two_block_example():
    spec = BlockPerturbationSpec(lam=1.0, block_count=2, eps_rule=pow_rule(-0.5))
    m = make_block_perturbation(spec)
    e2 = 2 ** -0.5
    expected = np.zeros((3, 3), dtype=complex)
    expected[0, 0] = 0.0  # 1 - eps_1 with eps_1 = 1
    expected[1, 1] = expected[2, 2] = 1 - e2
    expected[1, 2] = 2 * e2
    assert np.allclose(m, expected, atol=1e-14)


def test_block_diagonal_and_superdiagonal_structure():
    spec = BlockPerturbationSpec(lam=1.0, block_count=4, eps_rule=pow_rule(-0.5))
    m = make_block_perturbation(spec)
    eps = spec.epsilons()
    off = 0
    for j, size in enumerate(spec.sizes(), start=1):
        blk = m[off:off + size, off:off + size]
        assert np.allclose(np.diag(blk), 1 - eps[j - 1])
        if size > 1:
            assert np.allclose(np.diag(blk, k=1), 2 * eps[j - 1])
        off += size


def test_block_eigenvalues_are_diagonal():
    spec = BlockPerturbationSpec(lam=1.0, block_count=9, eps_rule=pow_rule(-0.5))
    w = eigenvalues(make_block_perturbation(spec), dim_cap=64)
    assert float(np.abs(w[0])) == pytest.approx(1 - 1.0 / 3.0, abs=1e-10)


def test_block_spec_validation():
    with pytest.raises(InvalidWeights):
        BlockPerturbationSpec(lam=1.0, block_count=3, eps_rule=lambda j: float(j))
    with pytest.raises(InvalidWeights):
        BlockPerturbationSpec(lam=1.0, block_count=2, eps_rule=lambda j: -1.0)
    with pytest.raises(DimensionCap):
        BlockPerturbationSpec(lam=1.0, block_count=10, eps_rule=pow_rule(-0.5),
                              size_rule=lambda j: 1000)


def test_block_diagonal_operator_matches_dense():
    spec = BlockPerturbationSpec(lam=0.4 + 0.3j, block_count=6, eps_rule=pow_rule(-0.5))
    op = BlockDiagonalOperator.from_spec(spec)
    dense = make_block_perturbation(spec)
    rng = SplitMix64(3)
    x = rng.complex_normal_vector(op.dim)
    assert np.allclose(op.matmat(x), dense @ x, atol=1e-13)
    assert np.array_equal(op.to_dense(), dense)
    f3 = op.unit_block_vector(3)
    assert np.linalg.norm(f3) == pytest.approx(1.0, abs=1e-14)
    assert np.linalg.norm(op.block_component(f3, 3)) == pytest.approx(1.0, abs=1e-14)
    assert np.linalg.norm(op.block_component(f3, 2)) == 0.0


# --- closed-form block inverse --------------------------------------------


def test_block_inverse_size_one():
    assert np.allclose(block_inverse_closed_form(1, 0.25), [[1 / 0.75]])


def test_block_inverse_size_two_hand_elimination():
    got = block_inverse_closed_form(2, 0.25)
    expected = (1 / 0.75) * np.array([[1, -0.5 / 0.75], [0, 1]])
    assert np.allclose(got, expected, atol=1e-14)


def test_block_inverse_matches_brute_force():
    for size in (3, 7, 12):
        for eps in (0.1, 0.5, 0.8):
            blk = perturbation_block(size, eps)
            assert np.allclose(
                block_inverse_closed_form(size, eps), invert(blk), atol=1e-10
            )


@given(size=st.integers(min_value=1, max_value=40),
       eps=st.sampled_from([0.1, 0.3, 0.5]))
@settings(max_examples=30, deadline=None)
def test_block_inverse_times_block_is_identity(size, eps):
    blk = perturbation_block(size, eps)
    prod = block_inverse_closed_form(size, eps) @ blk
    assert np.linalg.norm(prod - np.eye(size)) <= 1e-10 * size


def test_block_inverse_singular_case():
    with pytest.raises(SingularBlock):
        block_inverse_closed_form(3, 1.0, lam=1.0)


# --- star numbers ----------------------------------------------------------


def test_star_number_examples():
    assert star_number(3, 1) == 6
    assert star_number(1, 5) == 1
    assert star_number(3, 2) == 10
    assert star_number(4, 0) == 4


def test_star_number_triangular():
    for j in range(1, 12):
        assert star_number(j, 1) == j * (j + 1) // 2


@given(j=st.integers(min_value=1, max_value=30), m=st.integers(min_value=0, max_value=6))
@settings(max_examples=60, deadline=None)
def test_star_number_recursion(j, m):
    assert star_number(j, m + 1) == sum(star_number(k, m) for k in range(1, j + 1))


# --- multiplication truncations --------------------------------------------


def test_multiplication_shift_symbol():
    m = make_multiplication_truncation([0, 1], 3)
    assert np.array_equal(m, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    # its adjoint is the unweighted backward shift
    back = make_weighted_backward_shift(WeightedShiftSpec(dim=3, weights=(1, 1)))
    assert np.array_equal(m.conj().T, back)


def test_multiplication_constant_symbol():
    c = 2.5 - 1j
    assert np.array_equal(make_multiplication_truncation([c], 2), c * np.eye(2))


def test_multiplication_coefficient_placement():
    m = make_multiplication_truncation([0.5, 0, 1], 4)
    assert np.allclose(np.diag(m), 0.5)
    assert np.allclose(np.diag(m, k=-2), 1.0)
    assert np.count_nonzero(m) == 6


def test_multiplication_degree_cap():
    with pytest.raises(DegreeTooLarge):
        make_multiplication_truncation([1, 2, 3], 2)


@given(
    a=st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=4),
    b=st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=4),
)
@settings(max_examples=40, deadline=None)
def test_multiplication_truncation_multiplicative(a, b):
    n = 10  # deg a + deg b <= 6 < 10
    prod_coeffs = np.convolve(a, b)
    lhs = make_multiplication_truncation(prod_coeffs, n)
    rhs = make_multiplication_truncation(a, n) @ make_multiplication_truncation(b, n)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12


# --- reproducing kernel -----------------------------------------------------


def test_kernel_vector_examples():
    assert np.array_equal(reproducing_kernel_vector(0, 4), [1, 0, 0, 0])
    assert np.allclose(reproducing_kernel_vector(0.5, 3), [1, 0.5, 0.25])
    z = 0.3 + 0.4j
    v = reproducing_kernel_vector(z, 20)
    geom = (1 - abs(z) ** 40) / (1 - abs(z) ** 2)
    assert np.linalg.norm(v) ** 2 == pytest.approx(geom, rel=1e-12)


def test_kernel_vector_outside_disk():
    with pytest.raises(OutsideDisk):
        reproducing_kernel_vector(1.0, 4)


# --- lebesgue discretization ------------------------------------------------


def test_lebesgue_spec_validation():
    with pytest.raises(OddGrid):
        LebesgueDiscretizationSpec(a=0.5, b=2.0, grid_size=5)
    with pytest.raises(InvalidWeights):
        LebesgueDiscretizationSpec(a=0.5, b=3.0, grid_size=4)
    with pytest.raises(InvalidWeights):
        LebesgueDiscretizationSpec(a=1.5, b=1 / 1.5, grid_size=4)


def test_lebesgue_two_cell_structure():
    spec = LebesgueDiscretizationSpec(a=0.5, b=2.0, grid_size=2)
    t = make_lebesgue_operator(spec)
    # antidiagonal swap: only the two off-diagonal entries are nonzero
    assert t[0, 0] == 0 and t[1, 1] == 0
    assert t[0, 1] != 0 and t[1, 0] != 0
    x = spec.midpoints()
    # the measure-corrected swap preserves the product of the entries
    assert abs(t[0, 1] * t[1, 0] - x[0] * x[1]) < 1e-14


def test_lebesgue_diagonal_factor_self_adjoint():
    spec = LebesgueDiscretizationSpec(a=0.5, b=2.0, grid_size=8)
    d = np.diag(spec.midpoints()).astype(complex)
    assert np.allclose(weighted_adjoint(spec, d), d, atol=1e-13)


def test_lebesgue_modulus_spectrum():
    spec = LebesgueDiscretizationSpec(a=0.5, b=2.0, grid_size=16)
    t = make_lebesgue_operator(spec)
    gram = weighted_adjoint(spec, t) @ t
    got = np.sort(np.abs(eigenvalues(gram, dim_cap=16)))
    assert np.allclose(got, np.sort(spec.midpoints() ** 2), rtol=1e-10)


def test_lebesgue_weighted_inner_positive():
    spec = LebesgueDiscretizationSpec(a=0.5, b=2.0, grid_size=64)
    v = np.ones(64)
    ip = weighted_inner(spec, v, v)
    assert ip.imag == 0.0 and ip.real > 0.0
    # the weights integrate f over [a, b]: int |ln x|/x dx = ln(2)^2 here
    assert ip.real == pytest.approx(math.log(2.0) ** 2, rel=1e-3)
