"""Constructors for the concrete operator families under study.

Four families are provided: weighted backward shifts, block-diagonal
scalar perturbations built from nilpotent superdiagonal blocks,
lower-triangular Toeplitz truncations of multiplication operators on
the Hardy space of the disk, and a discretized composition-times-
multiplication operator on a reciprocal-symmetric interval.  The
star-number combinatorics used by the closed-form block inverses live
here too.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DegreeTooLarge,
    DimensionCap,
    DimensionMismatch,
    InvalidWeights,
    OddGrid,
    OutsideDisk,
    SingularBlock,
)
from .numerics import as_operator

#: Default cap on the total dimension of a block-diagonal construction.
BLOCK_DIM_CAP = 4096


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class WeightedShiftSpec:
    """Backward shift S e_n = w_n e_{n-1}, S e_0 = 0, truncated to C^dim.

    ``weights`` has length dim-1 and every weight must be nonzero.
    """

    dim: int
    weights: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatch(f"dim must be positive, got {self.dim}")
        w = tuple(complex(v) for v in self.weights)
        if len(w) != self.dim - 1:
            raise InvalidWeights(
                f"need {self.dim - 1} weights for dim {self.dim}, got {len(w)}"
            )
        if any(v == 0 for v in w):
            raise InvalidWeights("zero weight not allowed")
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class BlockPerturbationSpec:
    """Block-diagonal operator: block j is (lam - eps_j) I + S_j, where
    S_j is the j-indexed superdiagonal matrix with entries 2 eps_j and
    the block size comes from ``size_rule`` (default: size j).

    ``eps_rule`` must produce a positive, nonincreasing sequence.
    """

    lam: complex
    block_count: int
    eps_rule: Callable[[int], float]
    size_rule: Callable[[int], int] = field(default=lambda j: j)
    dim_cap: int = BLOCK_DIM_CAP

    def __post_init__(self):
        if self.block_count < 1:
            raise DimensionMismatch(f"block_count must be positive, got {self.block_count}")
        object.__setattr__(self, "lam", complex(self.lam))
        eps = self.epsilons()
        if any(e <= 0 for e in eps):
            raise InvalidWeights("epsilon values must be strictly positive")
        if any(eps[k + 1] > eps[k] for k in range(len(eps) - 1)):
            raise InvalidWeights("epsilon values must be nonincreasing")
        if self.total_dim() > self.dim_cap:
            raise DimensionCap(
                f"total dimension {self.total_dim()} exceeds cap {self.dim_cap}"
            )

    def epsilons(self):
        return [float(self.eps_rule(j)) for j in range(1, self.block_count + 1)]

    def sizes(self):
        return [int(self.size_rule(j)) for j in range(1, self.block_count + 1)]

    def total_dim(self):
        return sum(self.sizes())


@dataclass(frozen=True)
class LebesgueDiscretizationSpec:
    """Uniform grid on [a, b] with 0 < a < 1 < b and a*b = 1; grid_size
    must be even so the half-interval swap is a permutation of cells."""

    a: float
    b: float
    grid_size: int

    def __post_init__(self):
        if not (0.0 < self.a < 1.0 < self.b):
            raise InvalidWeights(f"need 0 < a < 1 < b, got a={self.a}, b={self.b}")
        if abs(self.a * self.b - 1.0) > 1e-12:
            raise InvalidWeights(f"need a*b = 1, got {self.a * self.b}")
        if self.grid_size < 2 or self.grid_size % 2 != 0:
            raise OddGrid(f"grid_size must be even and >= 2, got {self.grid_size}")

    def midpoints(self):
        """Cell midpoints x_k of the uniform grid."""
        dx = (self.b - self.a) / self.grid_size
        return self.a + dx * (np.arange(self.grid_size) + 0.5)

    def cell_weights(self):
        """Quadrature weights f(x_k) dx with f(x) = |ln x| / x."""
        x = self.midpoints()
        dx = (self.b - self.a) / self.grid_size
        return np.abs(np.log(x)) / x * dx


# ---------------------------------------------------------------------------
# rules (string grammar shared with the command line)


def weights_from_rule(rule, count):
    """Expand a weight/epsilon rule string into ``count`` values.

    Recognized rules: ``"1/n"``, ``"const:<v>"``, ``"pow:<p>"`` (value
    n**p at index n).
    """
    if rule == "1/n":
        return [1.0 / n for n in range(1, count + 1)]
    if rule.startswith("const:"):
        v = float(rule.split(":", 1)[1])
        return [v] * count
    if rule.startswith("pow:"):
        p = float(rule.split(":", 1)[1])
        return [float(n) ** p for n in range(1, count + 1)]
    raise InvalidWeights(f"unknown rule {rule!r}")


# ---------------------------------------------------------------------------
# constructors


def make_weighted_backward_shift(spec):
    """Dense matrix of the truncated weighted backward shift.

    Entry [n-1, n] = w_n on the superdiagonal; everything else zero.
    """
    m = np.zeros((spec.dim, spec.dim), dtype=complex)
    for n in range(1, spec.dim):
        m[n - 1, n] = spec.weights[n - 1]
    return m


def scalar_perturb(lam, t):
    """lam * I + T."""
    m = as_operator(t)
    return complex(lam) * np.eye(m.shape[0], dtype=complex) + m


def perturbation_block(size, eps, lam=1.0):
    """One block (lam - eps) I + S with superdiagonal entries 2 eps."""
    b = (complex(lam) - eps) * np.eye(size, dtype=complex)
    for i in range(size - 1):
        b[i, i + 1] = 2.0 * eps
    return b


def make_block_perturbation(spec):
    """Dense block-diagonal matrix assembled from perturbation blocks."""
    blocks = block_list(spec)
    n = spec.total_dim()
    m = np.zeros((n, n), dtype=complex)
    off = 0
    for b in blocks:
        k = b.shape[0]
        m[off : off + k, off : off + k] = b
        off += k
    return m


def block_list(spec):
    """The individual dense blocks of a block perturbation, in order."""
    eps = spec.epsilons()
    sizes = spec.sizes()
    return [perturbation_block(sizes[j], eps[j], spec.lam) for j in range(spec.block_count)]


class BlockDiagonalOperator:
    """Block-diagonal operator kept as a list of dense blocks.

    Orbit computations over hundreds of steps are much cheaper this way
    than through the assembled dense matrix; ``matmat`` applies the
    operator to a whole batch of column vectors at once.
    """

    def __init__(self, blocks):
        self.blocks = [as_operator(b) for b in blocks]
        self.offsets = np.cumsum([0] + [b.shape[0] for b in self.blocks])
        self.dim = int(self.offsets[-1])
        self.shape = (self.dim, self.dim)

    @classmethod
    def from_spec(cls, spec):
        return cls(block_list(spec))

    def matmat(self, x):
        """Apply to a (dim, k) batch of columns (or a single vector)."""
        v = np.asarray(x, dtype=complex)
        single = v.ndim == 1
        if single:
            v = v[:, None]
        if v.shape[0] != self.dim:
            raise DimensionMismatch(f"expected leading dim {self.dim}, got {v.shape[0]}")
        out = np.empty_like(v)
        for b, lo, hi in zip(self.blocks, self.offsets[:-1], self.offsets[1:]):
            out[lo:hi] = b @ v[lo:hi]
        return out[:, 0] if single else out

    def to_dense(self):
        m = np.zeros((self.dim, self.dim), dtype=complex)
        for b, lo, hi in zip(self.blocks, self.offsets[:-1], self.offsets[1:]):
            m[lo:hi, lo:hi] = b
        return m

    def block_component(self, x, j):
        """Slice of x belonging to block j (1-based)."""
        lo, hi = self.offsets[j - 1], self.offsets[j]
        return np.asarray(x, dtype=complex)[lo:hi]

    def unit_block_vector(self, j):
        """Normalized all-ones vector supported on block j (1-based)."""
        lo, hi = self.offsets[j - 1], self.offsets[j]
        v = np.zeros(self.dim, dtype=complex)
        v[lo:hi] = 1.0 / math.sqrt(hi - lo)
        return v

    def inverse(self):
        """Blockwise inverse as another BlockDiagonalOperator."""
        from .numerics import invert

        return BlockDiagonalOperator([invert(b) for b in self.blocks])


def block_inverse_closed_form(size, eps, lam=1.0):
    """Closed-form inverse of one perturbation block.

    ((lam - eps) I + S)^{-1} has the Neumann-series form with entry
    (i, i+k) = (lam - eps)^{-1} (-2 eps / (lam - eps))^k for k >= 0.
    """
    d = complex(lam) - eps
    if d == 0:
        raise SingularBlock(f"lam = eps = {eps}: block is singular")
    m = np.zeros((size, size), dtype=complex)
    ratio = -2.0 * eps / d
    for k in range(size):
        val = (ratio**k) / d
        for i in range(size - k):
            m[i, i + k] = val
    return m


def star_number(j, m):
    """Iterated partial sums: star(j, 0) = j, star(j, m+1) = sum of
    star(k, m) for k = 1..j.  Exact integer arithmetic."""
    if j < 1 or m < 0:
        raise DimensionMismatch(f"need j >= 1 and m >= 0, got j={j}, m={m}")
    row = list(range(1, j + 1))
    for _ in range(m):
        acc = 0
        for k in range(j):
            acc += row[k]
            row[k] = acc
    return row[j - 1]


def make_multiplication_truncation(phi_coefficients, dim):
    """Truncation of multiplication by a polynomial to the span of the
    first ``dim`` monomials: lower-triangular Toeplitz with the Taylor
    coefficients down the subdiagonals."""
    a = np.asarray(phi_coefficients, dtype=complex)
    if a.ndim != 1 or a.size == 0:
        raise DimensionMismatch("coefficients must be a nonempty 1-d sequence")
    deg = a.size - 1
    if deg >= dim:
        raise DegreeTooLarge(f"degree {deg} must be < dim {dim}")
    m = np.zeros((dim, dim), dtype=complex)
    for k in range(a.size):
        m += a[k] * np.eye(dim, k=-k, dtype=complex)
    return m


def reproducing_kernel_vector(z, dim):
    """Coefficient vector (1, conj(z), conj(z)^2, ...) of the kernel at z.

    Only defined strictly inside the unit disk.
    """
    z = complex(z)
    if abs(z) >= 1.0:
        raise OutsideDisk(f"|z| = {abs(z)} must be < 1")
    return np.conj(z) ** np.arange(dim)


def make_lebesgue_operator(spec):
    """U D on the weighted grid space: D multiplies by the cell
    midpoints and U performs the interval swap (first half of the cells
    with the second half).

    The discrete swap does not preserve the cell weights, so U carries
    the usual sqrt-of-weight-ratio normalization that makes it exactly
    unitary on the weighted space; |T| then has spectrum {x_k}.
    """
    x = spec.midpoints()
    w = spec.cell_weights()
    n = spec.grid_size
    half = n // 2
    perm = np.concatenate([np.arange(half, n), np.arange(half)])
    m = np.zeros((n, n), dtype=complex)
    m[np.arange(n), perm] = np.sqrt(w[perm] / w) * x[perm]
    return m


def weighted_inner(spec, u, v):
    """Inner product with the cell weights f(x_k) dx."""
    w = spec.cell_weights()
    return complex(np.sum(w * np.conj(np.asarray(u)) * np.asarray(v)))


def weighted_adjoint(spec, t):
    """Adjoint of t with respect to the weighted inner product."""
    w = spec.cell_weights()
    m = as_operator(t)
    return (m.conj().T * w[None, :]) / w[:, None]
