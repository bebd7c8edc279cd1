"""Polar decomposition, singular-value reciprocity, and the density /
integral identities of the reciprocal-symmetric measure family.

The density family is f_n(t) = (1/n) f(t**(1/n)) t**((1/n)-1) on
[a**n, b**n], built from the base density f(x) = |ln x| / x.  Two exact
identities are checked numerically: the pointwise reciprocal identity
t**2 f_n(t) = f_n(1/t), and the integral identity

    int x**2 |g(x)|**2 f_n(x) dx = int x**-2 |g(1/x)|**2 f_n(x) dx

(the substitution x -> 1/x maps one side onto the other because
x**2 f_n(x) = f_n(1/x)).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceFailure,
    DegenerateIntegral,
    NonpositiveArgument,
)
from .numerics import (
    EIG_DIM_CAP,
    as_operator,
    eigenvalues,
    invert,
    operator_norm,
    singular_values,
)

#: Quadrature refinement stops when two successive defects agree to this
#: relative tolerance.
QUAD_REL_TOL = 1e-2

#: Hard cap on the number of quadrature panels.
QUAD_PANEL_CAP = 2**14


# ---------------------------------------------------------------------------
# polar decomposition and reciprocity


@dataclass(frozen=True)
class PolarDecomposition:
    """T = U P with U unitary and P positive semidefinite."""

    U: np.ndarray
    P: np.ndarray


def polar_decompose(t):
    """Polar factors from one SVD: T = W S V* gives U = W V* and
    P = V S V*.  The condition gate of :func:`chaoskit.numerics.invert`
    applies (a singular T has no unitary factor in this convention)."""
    m = as_operator(t)
    invert(m)  # raises SingularOperator past the condition gate
    w, s, vh = np.linalg.svd(m)
    u = w @ vh
    p = vh.conj().T @ (s[:, None] * vh)
    return PolarDecomposition(U=u, P=p)


@dataclass(frozen=True)
class ReciprocityReport:
    """Evidence behind a singular-value reciprocity check."""

    passed: bool
    max_rel_defect: float
    forward: np.ndarray
    inverse: np.ndarray


def check_singular_reciprocity(t, tol=1e-10):
    """Check that the singular values of T**-1 are the reciprocals of
    those of T (in reversed order), to relative tolerance ``tol``."""
    m = as_operator(t)
    s_fwd = singular_values(m)
    s_inv = singular_values(invert(m))
    recip = 1.0 / s_fwd[::-1]
    defect = float(np.max(np.abs(s_inv - recip) / recip))
    return ReciprocityReport(
        passed=defect <= tol, max_rel_defect=defect, forward=s_fwd, inverse=s_inv
    )


# ---------------------------------------------------------------------------
# density family


@dataclass(frozen=True)
class DensityFamily:
    """Power-index family over [a, b] with 0 < a < 1 < b and a b = 1."""

    a: float
    b: float
    n: int

    def __post_init__(self):
        if not (0.0 < self.a < 1.0 < self.b):
            raise NonpositiveArgument(f"need 0 < a < 1 < b, got {self.a}, {self.b}")
        if abs(self.a * self.b - 1.0) > 1e-12:
            raise NonpositiveArgument(f"need a*b = 1, got {self.a * self.b}")
        if self.n < 1:
            raise NonpositiveArgument(f"need n >= 1, got {self.n}")

    @property
    def support(self):
        return (self.a**self.n, self.b**self.n)


def base_density(x):
    """f(x) = |ln x| / x for x > 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise NonpositiveArgument("base density needs x > 0")
    return np.abs(np.log(x)) / x


def density_fn(t, family):
    """f_n(t) = (1/n) f(t**(1/n)) t**((1/n) - 1) on [a**n, b**n], 0 outside.

    Accepts scalars or arrays; t must be strictly positive.
    """
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr)
    if np.any(t_arr <= 0):
        raise NonpositiveArgument("density needs t > 0")
    lo, hi = family.support
    n = family.n
    out = np.zeros_like(t_arr)
    mask = (t_arr >= lo) & (t_arr <= hi)
    ts = t_arr[mask]
    out[mask] = (1.0 / n) * base_density(ts ** (1.0 / n)) * ts ** (1.0 / n - 1.0)
    return float(out[0]) if scalar else out


def check_density_reciprocal_identity(family, grid):
    """Max over the grid of |t**2 f_n(t) - f_n(1/t)|.

    Grid points should avoid the support endpoints, where the indicator
    cutoff makes the two sides differ by a full density value.
    """
    t = np.asarray(grid, dtype=float)
    lhs = t**2 * density_fn(t, family)
    rhs = density_fn(1.0 / t, family)
    return float(np.max(np.abs(lhs - rhs))) if t.size else 0.0


# ---------------------------------------------------------------------------
# quadrature


@dataclass(frozen=True)
class QuadratureGrid:
    """Composite Gauss-Legendre nodes/weights over [lo, hi]."""

    nodes: np.ndarray
    weights: np.ndarray
    panels: int


def gauss_legendre_grid(lo, hi, panels, nodes_per_panel=16, breakpoints=()):
    """Composite Gauss-Legendre rule; ``breakpoints`` (e.g. an integrand
    kink) become panel boundaries so every panel sees a smooth piece."""
    if not hi > lo:
        raise DegenerateIntegral(f"need lo < hi, got [{lo}, {hi}]")
    cuts = sorted({lo, hi, *(p for p in breakpoints if lo < p < hi)})
    xg, wg = np.polynomial.legendre.leggauss(nodes_per_panel)
    nodes, weights = [], []
    for left, right in zip(cuts[:-1], cuts[1:]):
        # split each smooth piece into panels proportionally
        edges = np.linspace(left, right, panels + 1)
        for a, b in zip(edges[:-1], edges[1:]):
            half = 0.5 * (b - a)
            mid = 0.5 * (a + b)
            nodes.append(mid + half * xg)
            weights.append(half * wg)
    return QuadratureGrid(
        nodes=np.concatenate(nodes), weights=np.concatenate(weights),
        panels=panels * (len(cuts) - 1),
    )


def integrate(fn, grid):
    """Weighted sum of fn over the grid nodes (fixed summation order)."""
    return float(np.sum(grid.weights * fn(grid.nodes)))


def check_integral_transfer_identity(g_coefficients, family, panels=None):
    """Relative defect between I1 = int x**2 |g|**2 f_n dx and
    I2 = int x**-2 |g(1/x)|**2 f_n dx over the support of f_n.

    With ``panels=None`` the rule is refined (panel count doubled from
    32, kink at x=1 as a panel boundary) until two successive defects
    agree to 1e-2 relative or the panel cap is reached.

    Raises
    ------
    DegenerateIntegral
        If both integrals vanish (g identically zero on the support).
    """
    coeffs = np.asarray(g_coefficients, dtype=complex)
    lo, hi = family.support

    def defect_for(p):
        grid = gauss_legendre_grid(lo, hi, p, breakpoints=(1.0,))
        x = grid.nodes
        f = density_fn(x, family)
        g_x = np.polyval(coeffs[::-1], x)
        g_inv = np.polyval(coeffs[::-1], 1.0 / x)
        i1 = float(np.sum(grid.weights * x**2 * np.abs(g_x) ** 2 * f))
        i2 = float(np.sum(grid.weights * x**-2 * np.abs(g_inv) ** 2 * f))
        if max(abs(i1), abs(i2)) < 1e-300:
            raise DegenerateIntegral("both integrals vanish")
        return abs(i1 - i2) / max(abs(i1), abs(i2))

    if panels is not None:
        return defect_for(panels)
    p = 32
    prev = defect_for(p)
    while p < QUAD_PANEL_CAP:
        p *= 2
        cur = defect_for(p)
        scale = max(prev, cur, 1e-14)
        if abs(cur - prev) / scale <= QUAD_REL_TOL:
            return cur
        prev = cur
    return prev


# ---------------------------------------------------------------------------
# spectral radius


def spectral_radius_estimate(t, mode="eigen", n_max=64, dim_cap=EIG_DIM_CAP):
    """Spectral radius estimate.

    ``mode="eigen"``: max eigenvalue modulus.  ``mode="gelfand"``: the
    Gelfand-formula proxy ||T**n_max||**(1/n_max), computed by repeated
    squaring with norm rescaling (n_max must be a power of two).
    """
    m = as_operator(t)
    if mode == "eigen":
        try:
            w = eigenvalues(m, dim_cap=dim_cap)
        except np.linalg.LinAlgError as exc:  # pragma: no cover
            raise ConvergenceFailure(str(exc)) from exc
        return float(np.abs(w[0]))
    if mode == "gelfand":
        if n_max < 1 or n_max & (n_max - 1):
            raise NonpositiveArgument(f"gelfand n_max must be a power of two, got {n_max}")
        log_scale = 0.0
        a = m
        n = 1
        while n < n_max:
            norm = operator_norm(a)
            if norm == 0.0:
                return 0.0
            a = (a / norm) @ (a / norm)
            log_scale = 2.0 * (log_scale + math.log(norm))
            n *= 2
        norm = operator_norm(a)
        if norm == 0.0:
            return 0.0
        return math.exp((log_scale + math.log(norm)) / n_max)
    raise NonpositiveArgument(f"unknown mode {mode!r}")
