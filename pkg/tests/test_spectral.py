import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chaoskit.errors import (
    DegenerateIntegral,
    NonpositiveArgument,
    SingularOperator,
)
from chaoskit.numerics import condition_number, operator_norm
from chaoskit.operators import (
    BlockPerturbationSpec,
    WeightedShiftSpec,
    make_block_perturbation,
    make_weighted_backward_shift,
    weights_from_rule,
)
from chaoskit.rng import SplitMix64
from chaoskit.spectral import (
    DensityFamily,
    base_density,
    check_density_reciprocal_identity,
    check_integral_transfer_identity,
    check_singular_reciprocity,
    density_fn,
    gauss_legendre_grid,
    integrate,
    polar_decompose,
    spectral_radius_estimate,
)


def sample_invertible(rng, n, gate=1e4):
    m = rng.complex_normal_matrix(n, n)
    while condition_number(m) > gate:
        m = rng.complex_normal_matrix(n, n)
    return m


# --- polar decomposition ----------------------------------------------------


def test_polar_identity():
    pol = polar_decompose(np.eye(3))
    assert np.allclose(pol.U, np.eye(3), atol=1e-14)
    assert np.allclose(pol.P, np.eye(3), atol=1e-14)


def test_polar_positive_diagonal():
    pol = polar_decompose(np.diag([2.0, 3.0]))
    assert np.allclose(pol.U, np.eye(2), atol=1e-14)
    assert np.allclose(pol.P, np.diag([2.0, 3.0]), atol=1e-14)


def test_polar_swap_example():
    t = np.array([[0, 2], [1, 0]], dtype=complex)
    pol = polar_decompose(t)
    assert np.allclose(pol.U, [[0, 1], [1, 0]], atol=1e-12)
    assert np.allclose(pol.P, np.diag([1.0, 2.0]), atol=1e-12)


def test_polar_properties_random():
    rng = SplitMix64(23)
    for n in (3, 16, 64):
        t = sample_invertible(rng, n)
        pol = polar_decompose(t)
        assert operator_norm(pol.U.conj().T @ pol.U - np.eye(n)) <= 1e-10
        assert operator_norm(pol.U @ pol.P - t) <= 1e-10 * operator_norm(t)
        herm = 0.5 * (pol.P + pol.P.conj().T)
        assert np.min(np.linalg.eigvalsh(herm)) >= -1e-10
        assert operator_norm(pol.P - herm) <= 1e-10


def test_polar_rejects_singular():
    with pytest.raises(SingularOperator):
        polar_decompose(np.diag([1.0, 0.0]))


# --- singular reciprocity ---------------------------------------------------


def test_reciprocity_identity_and_diagonal():
    assert check_singular_reciprocity(np.eye(4)).passed
    rep = check_singular_reciprocity(np.diag([2.0, 4.0]))
    assert rep.passed
    assert np.allclose(rep.forward, [4.0, 2.0])
    assert np.allclose(rep.inverse, [0.5, 0.25])


def test_reciprocity_random_matrices():
    rng = SplitMix64(29)
    for _ in range(10):
        t = sample_invertible(rng, 32)
        assert check_singular_reciprocity(t).passed


# --- density family ---------------------------------------------------------


def test_base_density_values():
    assert base_density(2.0) == pytest.approx(math.log(2.0) / 2.0, rel=1e-15)
    assert base_density(1.0) == 0.0
    with pytest.raises(NonpositiveArgument):
        base_density(-1.0)


def test_density_fn_reduces_to_base_at_n1():
    fam = DensityFamily(a=0.5, b=2.0, n=1)
    for t in (0.6, 1.0, 1.7):
        assert density_fn(t, fam) == pytest.approx(base_density(t), rel=1e-14)


def test_density_fn_substitution_example():
    fam = DensityFamily(a=0.5, b=2.0, n=2)
    expected = 0.5 * (math.log(2.0) / 2.0) * 0.5
    assert density_fn(4.0, fam) == pytest.approx(expected, rel=1e-14)
    assert density_fn(4.0 + 1e-9, fam) == 0.0  # outside the support
    with pytest.raises(NonpositiveArgument):
        density_fn(0.0, fam)


def test_density_family_validation():
    with pytest.raises(NonpositiveArgument):
        DensityFamily(a=0.5, b=3.0, n=1)
    with pytest.raises(NonpositiveArgument):
        DensityFamily(a=0.5, b=2.0, n=0)


def test_reciprocal_identity_hand_value():
    fam = DensityFamily(a=0.5, b=2.0, n=1)
    # 4 f(2) = 4 (ln2 / 2) = 2 ln2 = f(1/2) = (ln2) / (1/2)
    assert check_density_reciprocal_identity(fam, [2.0]) <= 1e-15


@given(n=st.integers(min_value=1, max_value=5),
       u=st.floats(min_value=1e-3, max_value=1 - 1e-3))
@settings(max_examples=60, deadline=None)
def test_reciprocal_identity_pointwise(n, u):
    fam = DensityFamily(a=0.5, b=2.0, n=n)
    lo, hi = fam.support
    t = lo * (hi / lo) ** u  # interior point
    assert check_density_reciprocal_identity(fam, [t]) <= 1e-12


# --- quadrature and the integral identity -----------------------------------


def test_gauss_legendre_polynomial_exactness():
    grid = gauss_legendre_grid(0.0, 2.0, panels=4)
    # degree-7 polynomial integrated exactly by 16-node panels
    val = integrate(lambda x: x**7, grid)
    assert val == pytest.approx(2.0**8 / 8.0, rel=1e-14)


def test_gauss_legendre_degenerate_domain():
    with pytest.raises(DegenerateIntegral):
        gauss_legendre_grid(1.0, 1.0, panels=2)


def test_integral_identity_constant_g_against_closed_form():
    # analytic oracle for I1 = int_{1/2}^{2} x |ln x| dx:
    # on [1,2]: 2 ln2 - 3/4; on [1/2,1]: 3/16 - (ln 2)/8
    i1_exact = (2 * math.log(2) - 0.75) + (3.0 / 16.0 - math.log(2) / 8.0)
    fam = DensityFamily(a=0.5, b=2.0, n=1)
    grid = gauss_legendre_grid(0.5, 2.0, panels=64, breakpoints=(1.0,))
    i1 = integrate(lambda x: x**2 * density_fn(x, fam), grid)
    assert i1 == pytest.approx(i1_exact, rel=1e-12)
    assert check_integral_transfer_identity([1.0], fam) <= 1e-10


def test_integral_identity_linear_and_cubic():
    for coeffs in ([0.0, 1.0], [1.0, 0.0, 0.0, 1.0]):
        for n in (1, 2, 3):
            fam = DensityFamily(a=0.5, b=2.0, n=n)
            assert check_integral_transfer_identity(coeffs, fam) <= 1e-8


def test_integral_identity_zero_g():
    fam = DensityFamily(a=0.5, b=2.0, n=1)
    with pytest.raises(DegenerateIntegral):
        check_integral_transfer_identity([0.0], fam)


# --- spectral radius --------------------------------------------------------


def test_spectral_radius_nilpotent_shift():
    m = make_weighted_backward_shift(
        WeightedShiftSpec(dim=16, weights=tuple(weights_from_rule("1/n", 15)))
    )
    assert spectral_radius_estimate(m, mode="eigen") <= 1e-8


def test_spectral_radius_block_perturbation():
    spec = BlockPerturbationSpec(lam=1.0, block_count=9,
                                 eps_rule=lambda j: float(j) ** -0.5)
    m = make_block_perturbation(spec)
    r = spectral_radius_estimate(m, mode="eigen")
    assert r == pytest.approx(1 - 1.0 / 3.0, abs=1e-10)


def test_spectral_radius_identity():
    assert spectral_radius_estimate(np.eye(4)) == pytest.approx(1.0, abs=1e-14)


def test_gelfand_bounds_for_normal_operator():
    d = np.diag([0.9, 0.5, -0.3]).astype(complex)
    eigen = spectral_radius_estimate(d, mode="eigen")
    for n in (1, 2, 4, 8, 16):
        g = spectral_radius_estimate(d, mode="gelfand", n_max=n)
        assert g >= eigen - 1e-8
    g8 = spectral_radius_estimate(d, mode="gelfand", n_max=8)
    g16 = spectral_radius_estimate(d, mode="gelfand", n_max=16)
    assert g16 <= g8 + 1e-8


def test_gelfand_requires_power_of_two():
    with pytest.raises(NonpositiveArgument):
        spectral_radius_estimate(np.eye(2), mode="gelfand", n_max=3)
