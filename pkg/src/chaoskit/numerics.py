"""Dense linear-algebra primitives used by the rest of the package.

Operators are plain complex numpy matrices.  The helpers here add the
shape/validity checking that the higher-level modules rely on, plus a
few conventions (sorted singular values, eigenvalue size caps) that
keep results deterministic.
"""

import numpy as np

from .errors import DimensionCap, DimensionMismatch, SingularOperator

#: Condition-number gate above which :func:`invert` refuses to proceed.
COND_CAP = 1e12

#: Default dimension cap for dense eigenvalue extraction.
EIG_DIM_CAP = 256


def as_operator(a):
    """Coerce to a square complex matrix.

    Raises
    ------
    DimensionMismatch
        If the input is not a 2-d square array.
    """
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def as_vector(x, dim=None):
    """Coerce to a 1-d complex vector, optionally checking its length."""
    v = np.asarray(x, dtype=complex)
    if v.ndim != 1:
        raise DimensionMismatch(f"expected a vector, got shape {v.shape}")
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatch(f"expected length {dim}, got {v.shape[0]}")
    return v


def adjoint(t):
    """Conjugate transpose."""
    return as_operator(t).conj().T


def apply(t, x):
    """Matrix-vector product with shape checking."""
    m = as_operator(t)
    v = as_vector(x, dim=m.shape[0])
    return m @ v


def condition_number(t):
    """2-norm condition number, inf for a rank-deficient matrix."""
    s = singular_values(t)
    if s[-1] == 0.0:
        return np.inf
    return s[0] / s[-1]


def invert(t, cond_cap=COND_CAP):
    """Matrix inverse, gated on the condition number.

    Raises
    ------
    SingularOperator
        If the condition number exceeds ``cond_cap``.
    """
    m = as_operator(t)
    c = condition_number(m)
    if not np.isfinite(c) or c > cond_cap:
        raise SingularOperator(f"condition number {c:.3e} exceeds cap {cond_cap:.3e}")
    return np.linalg.inv(m)


def operator_norm(t):
    """Largest singular value."""
    return float(singular_values(t)[0])


def singular_values(t):
    """Singular values in descending order."""
    return np.linalg.svd(as_operator(t), compute_uv=False)


def eigenvalues(t, dim_cap=EIG_DIM_CAP):
    """Eigenvalues sorted by descending modulus (ties by angle).

    Raises
    ------
    DimensionCap
        If the matrix dimension exceeds ``dim_cap``; pass a larger cap
        explicitly to override.
    """
    m = as_operator(t)
    if m.shape[0] > dim_cap:
        raise DimensionCap(
            f"dimension {m.shape[0]} exceeds eigenvalue cap {dim_cap}; "
            "pass dim_cap explicitly to override"
        )
    w = np.linalg.eigvals(m)
    order = np.lexsort((np.angle(w), -np.abs(w)))
    return w[order]
