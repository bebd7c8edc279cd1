"""Orbit-norm computation and chaos functionals.

Everything here reports finite-horizon *evidence*, never proof: a
finite-dimensional truncation is never literally Li-Yorke chaotic, so
chaos signatures show up as transient rise-then-decay orbits and as
escalation across a family of growing blocks.

Operators may be dense numpy matrices or any object with a ``matmat``
method (see :class:`chaoskit.operators.BlockDiagonalOperator`); orbits
over candidate sets are computed as one batched iteration.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, NotUnimodular
from .numerics import as_vector, invert
from .operators import BlockDiagonalOperator, make_weighted_backward_shift

#: Orbit norms below this multiple of the start norm count as "vanished".
DELTA_LOW = 1e-6

#: Orbit norms above this multiple of the start norm count as "escaped".
DELTA_HIGH = 10.0

#: Distributional-chaos envelope gap threshold.
DC_ETA = 0.05

#: Orbit iteration stops once a norm exceeds this cap.
OVERFLOW_CAP = 1e300


def _apply(t, x):
    if hasattr(t, "matmat"):
        return t.matmat(x)
    return np.asarray(t, dtype=complex) @ x


def _op_dim(t):
    if hasattr(t, "matmat"):
        return t.shape[0]
    m = np.asarray(t)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square operator, got shape {m.shape}")
    return m.shape[0]


# ---------------------------------------------------------------------------
# orbit records


@dataclass(frozen=True)
class OrbitRecord:
    """Norms ||T^n x|| for n = 0..horizon (or up to the overflow step).

    ``norms[n]`` is nan for every step after an overflow;
    ``overflow_index`` records the first step whose norm exceeded the
    cap (None when the full orbit stayed finite).
    """

    horizon: int
    norms: np.ndarray
    tail_start: int
    overflow_index: Optional[int] = None

    def finite_norms(self):
        return self.norms[np.isfinite(self.norms)]

    def tail_min(self):
        tail = self.norms[self.tail_start :]
        tail = tail[np.isfinite(tail)]
        return float(tail.min()) if tail.size else math.inf

    def full_max(self):
        return float(self.finite_norms().max())

    def last_finite(self):
        return float(self.finite_norms()[-1])


def orbit_norms(t, x, horizon, tail_start=None):
    """Single-orbit record; see :func:`orbit_norms_batch` for the policy."""
    batch = orbit_norms_batch(t, np.asarray(x, dtype=complex)[:, None], horizon)
    norms, overflow = batch
    if tail_start is None:
        tail_start = horizon // 2
    return OrbitRecord(
        horizon=horizon,
        norms=norms[:, 0],
        tail_start=tail_start,
        overflow_index=overflow[0],
    )


def orbit_norms_batch(t, columns, horizon):
    """Orbit norms for a batch of start vectors (as matrix columns).

    Returns ``(norms, overflow)`` where norms has shape
    (horizon+1, k) with nan after a column's overflow step, and
    overflow is a per-column first-overflow index (or None).
    """
    if horizon < 1:
        raise DimensionMismatch(f"horizon must be >= 1, got {horizon}")
    v = np.asarray(columns, dtype=complex)
    if v.ndim != 2:
        raise DimensionMismatch("columns must be a 2-d array of column vectors")
    if v.shape[0] != _op_dim(t):
        raise DimensionMismatch(
            f"operator dim {_op_dim(t)} vs vector dim {v.shape[0]}"
        )
    k = v.shape[1]
    norms = np.full((horizon + 1, k), np.nan)
    overflow = [None] * k
    v = v.copy()
    active = np.ones(k, dtype=bool)
    norms[0] = np.linalg.norm(v, axis=0)
    for n in range(1, horizon + 1):
        if not active.any():
            break
        # entry-level overflow just past the cap is expected and handled
        # by the overflow policy below
        with np.errstate(over="ignore", invalid="ignore"):
            v[:, active] = _apply(t, v[:, active])
            step = np.linalg.norm(v[:, active], axis=0)
        idx = np.flatnonzero(active)
        bad = ~np.isfinite(step) | (step > OVERFLOW_CAP)
        for j, col in enumerate(idx):
            if bad[j]:
                overflow[col] = n
                active[col] = False
                v[:, col] = 0.0
            else:
                norms[n, col] = step[j]
    return norms, overflow


# ---------------------------------------------------------------------------
# Li-Yorke evidence


@dataclass(frozen=True)
class ChaosVerdict:
    """kind is one of "LiYorkeEvidence", "NoEvidence", "Inconclusive"."""

    kind: str
    liminf_est: float
    limsup_est: float
    witness: Optional[np.ndarray] = None


def li_yorke_evidence(record, delta_low=DELTA_LOW, delta_high=DELTA_HIGH, witness=None):
    """Classify one orbit record.

    Evidence requires both a dip of the tail minimum below
    delta_low * ||x|| and a rise of the full-record maximum above
    delta_high * ||x||.  Anything else is NoEvidence; an overflowed
    record is Inconclusive (the tail was never reached).
    """
    if record.horizon < 16:
        raise DimensionMismatch("horizon must be >= 16 for a verdict")
    n0 = float(record.norms[0])
    liminf_est = record.tail_min()
    limsup_est = record.full_max()
    if record.overflow_index is not None:
        kind = "Inconclusive"
    elif liminf_est < delta_low * n0 and limsup_est > delta_high * n0:
        kind = "LiYorkeEvidence"
    else:
        kind = "NoEvidence"
    return ChaosVerdict(
        kind=kind, liminf_est=liminf_est, limsup_est=limsup_est, witness=witness
    )


# ---------------------------------------------------------------------------
# distributional profiles


@dataclass(frozen=True)
class DistributionalProfile:
    """Tail envelopes of the orbit-norm distribution functions
    F^n(tau) = (1/n) #{0 <= i <= n : ||T^i x|| < tau} (clamped to 1)."""

    tau_grid: np.ndarray
    F_lower: np.ndarray
    F_upper: np.ndarray
    horizon: int


def distributional_profile(t, x, horizon, tau_grid, tail_start=None):
    """Exact counting of sub-tau orbit norms over the tail window
    [tail_start, horizon] (default tail_start = 3*horizon//4)."""
    tau = np.asarray(tau_grid, dtype=float)
    if tau.ndim != 1 or tau.size == 0 or np.any(np.diff(tau) <= 0) or np.any(tau <= 0):
        raise DimensionMismatch("tau_grid must be ascending and positive")
    if tail_start is None:
        tail_start = 3 * horizon // 4
    record = orbit_norms(t, x, horizon, tail_start=tail_start)
    norms = record.norms
    f_lo = np.full(tau.size, np.inf)
    f_hi = np.zeros(tau.size)
    for n in range(tail_start, horizon + 1):
        prefix = norms[: n + 1]
        prefix = prefix[np.isfinite(prefix)]
        counts = np.sum(prefix[:, None] < tau[None, :], axis=0)
        f_n = np.minimum(counts / n, 1.0)
        f_lo = np.minimum(f_lo, f_n)
        f_hi = np.maximum(f_hi, f_n)
    return DistributionalProfile(tau_grid=tau, F_lower=f_lo, F_upper=f_hi, horizon=horizon)


def classify_dc(profile, eta=DC_ETA):
    """Finite-horizon distributional-chaos evidence.

    Returns "DC-I", "DC-II", "DC-III", or None.  The reading used:
    DC-I needs some tau with F_lower <= eta while F_upper >= 1-eta at
    every grid tau; DC-II keeps the F_upper condition plus an envelope
    gap; DC-III needs only the gap (> eta somewhere).
    """
    if profile.horizon < 64:
        raise DimensionMismatch("horizon must be >= 64 for a DC verdict")
    top = bool(np.all(profile.F_upper >= 1.0 - eta))
    low = bool(np.any(profile.F_lower <= eta))
    gap = bool(np.any(profile.F_upper - profile.F_lower > eta))
    if top and low:
        return "DC-I"
    if top and gap:
        return "DC-II"
    if gap:
        return "DC-III"
    return None


# ---------------------------------------------------------------------------
# criterion search


@dataclass(frozen=True)
class CriterionEvidence:
    """Evidence for the two-clause chaos criterion: a vanishing set of
    candidates plus norm-bounded vectors with escalating orbit peaks."""

    vanishing: tuple  # candidate indices whose orbit dipped below delta_low
    pairs: tuple  # (n, candidate index, ||T^n a||) at each ladder rung
    ladder: tuple  # strictly increasing rung levels that were reached

    def witnessed(self, candidate_count, growth=1e3):
        """Both clauses hold: every candidate vanishes and the
        escalation ladder reached at least ``growth``."""
        all_vanish = len(self.vanishing) == candidate_count
        return all_vanish and bool(self.ladder) and self.ladder[-1] >= growth


def criterion_search(t, candidates, bound=1.0, horizon=400, delta_low=DELTA_LOW):
    """Scan candidate orbits for the two criterion clauses.

    Candidates must be nonzero with norm <= bound.  The escalation
    ladder starts at 10 and multiplies by 10 each time some
    (step, candidate) pair exceeds the current rung.
    """
    cols = np.stack([as_vector(c) for c in candidates], axis=1)
    start = np.linalg.norm(cols, axis=0)
    if np.any(start == 0):
        raise DimensionMismatch("candidates must be nonzero")
    if np.any(start > bound * (1 + 1e-12)):
        raise DimensionMismatch(f"candidate norm exceeds bound {bound}")
    norms, _overflow = orbit_norms_batch(t, cols, horizon)
    vanishing = tuple(
        int(j)
        for j in range(cols.shape[1])
        if np.nanmin(norms[:, j]) < delta_low * start[j]
    )
    pairs = []
    ladder = []
    rung = 10.0
    for n in range(1, horizon + 1):
        row = norms[n]
        while True:
            hits = np.flatnonzero(np.nan_to_num(row, nan=-1.0) >= rung)
            if hits.size == 0:
                break
            j = int(hits[np.argmax(row[hits])])
            pairs.append((n, j, float(row[j])))
            ladder.append(rung)
            rung *= 10.0
    return CriterionEvidence(
        vanishing=vanishing, pairs=tuple(pairs), ladder=tuple(ladder)
    )


# ---------------------------------------------------------------------------
# inverse orbits and adjoint rigidity


@dataclass(frozen=True)
class InverseOrbitStat:
    """Floor statistics of one orbit under the inverse operator."""

    floor: float
    argmin: int
    final: float
    overflow_index: Optional[int] = None


def inverse_orbit_floor(t, samples, horizon):
    """Orbit floors under T**-1 for each sample vector.

    ``final`` is the last finite orbit norm (the horizon norm when no
    overflow occurred).
    """
    if isinstance(t, BlockDiagonalOperator):
        inv = t.inverse()
    else:
        inv = invert(t)
    cols = np.stack([as_vector(c) for c in samples], axis=1)
    norms, overflow = orbit_norms_batch(inv, cols, horizon)
    out = []
    for j in range(cols.shape[1]):
        col = norms[:, j]
        finite = np.flatnonzero(np.isfinite(col))
        floor_idx = finite[np.argmin(col[finite])]
        out.append(
            InverseOrbitStat(
                floor=float(col[floor_idx]),
                argmin=int(floor_idx),
                final=float(col[finite[-1]]),
                overflow_index=overflow[j],
            )
        )
    return out


def first_coordinate_invariance(lam, spec, x, horizon):
    """Max deviation of |((lam I + S*)^n x)_1| from |x_1|.

    lam I + S* is lower triangular, so the first coordinate is exactly
    lam**n x_1; the reported deviation measures only rounding.
    """
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > 1e-12:
        raise NotUnimodular(f"|lam| = {abs(lam)} must be 1")
    shift = make_weighted_backward_shift(spec)
    op = lam * np.eye(spec.dim, dtype=complex) + shift.conj().T
    v = as_vector(x, dim=spec.dim)
    x1 = abs(v[0])
    dev = 0.0
    for _ in range(horizon):
        v = op @ v
        dev = max(dev, abs(abs(v[0]) - x1))
    return dev
