"""Polynomial symbols on the unit disk: root-counting classification of
their adjoint multipliers and scalar-perturbation chaos maps.

The classification follows the root/range dichotomy: the adjoint
multiplier by a nonconstant polynomial phi behaves chaotically exactly
when the (open) range phi(D) crosses the unit circle, i.e.
inf |phi| < 1 < sup |phi|.  Because a nonconstant analytic map is open,
tangency (sup = 1) means no crossing.  Probing the constancy of the
in-disk root count of phi(z) - phi(z0) backs the eigenvector-bundle
("yes, rank m") reports.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .diagnostics import DELTA_LOW, li_yorke_evidence, orbit_norms_batch
from .errors import (
    BoundaryUncertain,
    ConstantPolynomial,
    DimensionMismatch,
    NotCowenDouglas,
    OutsideDisk,
    RootOnCircle,
    UnknownFamily,
)
from .numerics import adjoint, as_operator, eigenvalues, singular_values
from .operators import (
    make_multiplication_truncation,
    reproducing_kernel_vector,
)

#: Circle tolerance for root classification.
CIRCLE_TOL = 1e-8

#: sup values within this of 1 are treated as tangency (no crossing).
TANGENCY_TOL = 1e-12

#: Probe rings for folder-rank detection.
PROBE_RINGS = (0.3, 0.6, 0.85)
PROBE_ANGLES = 16

#: Power cap for the smallest-singular-value growth test.
SIGMA_POWER_CAP = 4096


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class AnalyticPolynomial:
    """Polynomial a_0 + a_1 z + ... + a_d z**d (coefficients low to high).

    Trailing zero coefficients are stripped at construction.
    """

    coefficients: tuple

    def __post_init__(self):
        c = [complex(v) for v in self.coefficients]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0j]
        if len(c) - 1 > 64:
            raise DimensionMismatch(f"degree {len(c) - 1} exceeds cap 64")
        object.__setattr__(self, "coefficients", tuple(c))

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def is_constant(self):
        return self.degree == 0

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, np.asarray(self.coefficients))

    def __mul__(self, other):
        return AnalyticPolynomial(
            tuple(np.convolve(self.coefficients, other.coefficients))
        )

    def shifted(self, c):
        """The polynomial phi + c."""
        coeffs = list(self.coefficients)
        coeffs[0] += complex(c)
        return AnalyticPolynomial(tuple(coeffs))


def polynomial_roots(p):
    """All roots of a nonconstant polynomial (companion-matrix based)."""
    if p.is_constant():
        raise ConstantPolynomial("constant polynomial has no root set")
    c = np.asarray(p.coefficients)
    if p.degree == 1:
        return np.array([-c[0] / c[1]])
    return np.roots(c[::-1])


@dataclass(frozen=True)
class RootsReport:
    inside_count: int
    on_circle_count: int
    roots: np.ndarray


def roots_in_disk(p, tol=CIRCLE_TOL):
    """Classify the roots of p against the unit circle."""
    roots = polynomial_roots(p)
    radii = np.abs(roots)
    on_circle = int(np.sum(np.abs(radii - 1.0) <= tol))
    inside = int(np.sum(radii < 1.0 - tol))
    return RootsReport(inside_count=inside, on_circle_count=on_circle, roots=roots)


# ---------------------------------------------------------------------------
# folder-rank probing


@dataclass(frozen=True)
class CowenDouglasReport:
    """is_cd is "yes", "no", or "undetermined"; "no" means the sufficient
    condition was not verified, not a disproof."""

    is_cd: str
    folder_m: Optional[int] = None
    failure_reason: Optional[str] = None


def _probe_points():
    pts = [0j]
    for r in PROBE_RINGS:
        for k in range(PROBE_ANGLES):
            theta = 2.0 * math.pi * k / PROBE_ANGLES
            pts.append(r * complex(math.cos(theta), math.sin(theta)))
    return pts


def is_cowen_douglas(phi, tol=CIRCLE_TOL):
    """Probe whether the in-disk root count of phi(z) - phi(z0) is a
    constant m over probe points z0, with no root near the circle.

    For polynomials the cofactor of the outside roots is automatically
    zero-free on the closed disk, so the outer check reduces to the
    circle-clearance check.
    """
    if phi.is_constant():
        raise ConstantPolynomial("a constant symbol has no folder rank")
    if phi.degree == 1:
        # phi(z) - phi(z0) = a_1 (z - z0): the single root is the probe
        # point itself, strictly inside the disk for every probe
        return CowenDouglasReport(is_cd="yes", folder_m=1)
    probes = _probe_points()
    values = phi(np.array(probes))
    m = None
    for z0, w in zip(probes, values):
        shifted = phi.shifted(-w)
        if phi.degree == 1:
            roots = np.array([-shifted.coefficients[0] / shifted.coefficients[1]])
        else:
            roots = polynomial_roots(shifted)
        radii = np.abs(roots)
        if np.any(np.abs(radii - 1.0) <= tol):
            return CowenDouglasReport(is_cd="undetermined", failure_reason="root_on_circle")
        count = int(np.sum(radii < 1.0))
        if m is None:
            m = count
        elif count != m:
            return CowenDouglasReport(is_cd="no", failure_reason="root_count_varies")
    return CowenDouglasReport(is_cd="yes", folder_m=m)


def kernel_dimension(phi, lam, tol=CIRCLE_TOL):
    """Number of roots of phi - lam strictly inside the disk (the
    dimension of the adjoint-multiplier eigenspace at conj(lam))."""
    if phi.is_constant():
        raise ConstantPolynomial("constant symbol")
    report = roots_in_disk(phi.shifted(-complex(lam)), tol=tol)
    if report.on_circle_count:
        raise RootOnCircle(f"{report.on_circle_count} root(s) within {tol} of the circle")
    return report.inside_count


# ---------------------------------------------------------------------------
# modulus range and chaos classification


def _golden_refine(phi, lo, hi, maximize, iters=80):
    """Golden-section search for an extremum of |phi(e^{i theta})|."""
    g = 0.5 * (math.sqrt(5.0) - 1.0)
    sign = -1.0 if maximize else 1.0
    coeffs = phi.coefficients

    def f(theta):
        z = complex(math.cos(theta), math.sin(theta))
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * z + c
        return sign * abs(acc)

    a, b = lo, hi
    c = b - g * (b - a)
    d = a + g * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    return sign * min(fc, fd)


def modulus_range_on_disk(phi, boundary_samples=512):
    """(inf, sup) of |phi| over the open unit disk.

    sup comes from the boundary (maximum modulus principle); inf is 0
    when phi has a root in the closed disk, else the boundary minimum
    (minimum modulus principle for zero-free phi).  Coarse boundary
    sampling is sharpened by golden-section refinement around the
    extreme samples.
    """
    if boundary_samples < 256:
        raise DimensionMismatch("boundary_samples must be >= 256")
    if phi.is_constant():
        v = abs(phi.coefficients[0])
        return v, v
    theta = 2.0 * math.pi * np.arange(boundary_samples) / boundary_samples
    vals = np.abs(phi(np.exp(1j * theta)))
    step = 2.0 * math.pi / boundary_samples
    k_max = int(np.argmax(vals))
    sup = _golden_refine(phi, theta[k_max] - step, theta[k_max] + step, maximize=True)
    roots = polynomial_roots(phi)
    if np.any(np.abs(roots) <= 1.0):
        inf = 0.0
    else:
        k_min = int(np.argmin(vals))
        inf = _golden_refine(phi, theta[k_min] - step, theta[k_min] + step, maximize=False)
    return float(inf), float(sup)


@dataclass(frozen=True)
class MultiplierChaosVerdict:
    chaotic_all_senses: bool
    meets_circle: bool
    inf_mod: float
    sup_mod: float


def classify_multiplier(phi, tol=CIRCLE_TOL, boundary_samples=512):
    """Chaos verdict for the adjoint multiplier of phi.

    Chaotic exactly when the open range crosses the circle:
    inf < 1 - tol and sup > 1 + tol.  Tangency from below
    (sup <= 1 + TANGENCY_TOL) is a definite no; other near-1 endpoints
    raise BoundaryUncertain.

    Raises
    ------
    NotCowenDouglas
        If the folder-rank probe does not report yes.
    BoundaryUncertain
        If a range endpoint is within tol of 1 (excluding tangency).
    """
    report = is_cowen_douglas(phi, tol=min(tol, CIRCLE_TOL))
    if report.is_cd != "yes":
        raise NotCowenDouglas(f"folder probe: {report.is_cd} ({report.failure_reason})")
    inf_mod, sup_mod = modulus_range_on_disk(phi, boundary_samples=boundary_samples)
    if sup_mod <= 1.0 + TANGENCY_TOL:
        meets = False
    elif abs(inf_mod - 1.0) <= tol or sup_mod - 1.0 <= tol:
        raise BoundaryUncertain(
            f"range endpoint near 1: inf={inf_mod!r}, sup={sup_mod!r}"
        )
    else:
        meets = inf_mod < 1.0 - tol and sup_mod > 1.0 + tol
    return MultiplierChaosVerdict(
        chaotic_all_senses=meets, meets_circle=meets, inf_mod=inf_mod, sup_mod=sup_mod
    )


def adjoint_eigen_residual(phi, z, dim):
    """Relative residual of the truncated adjoint-multiplier eigenpair
    (kernel vector at z, eigenvalue conj(phi(z)))."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise OutsideDisk(f"|z| = {abs(z)} must be < 1")
    m = make_multiplication_truncation(phi.coefficients, dim)
    f_z = reproducing_kernel_vector(z, dim)
    r = adjoint(m) @ f_z - np.conj(complex(phi(z))) * f_z
    return float(np.linalg.norm(r) / np.linalg.norm(f_z))


# ---------------------------------------------------------------------------
# parameter maps


@dataclass(frozen=True)
class ChaosMap:
    """Grid of per-lambda verdicts.

    verdicts[i][j] classifies lambda = re_values[i] + 1j * im_values[j];
    labels are "chaotic", "decay", "bounded_below", "boundary_uncertain".
    """

    family: str
    re_values: np.ndarray
    im_values: np.ndarray
    verdicts: np.ndarray
    aux: dict = field(default_factory=dict)


def _grid_values(lo, hi, step):
    count = int(math.floor((hi - lo) / step + 0.5)) + 1
    return lo + step * np.arange(count)


def _sigma_growth_bounded_below(m, cap=SIGMA_POWER_CAP):
    """True when sigma_min(M**n)**(1/n) >= 1 for some power n <= cap
    (powers by repeated squaring with norm rescaling)."""
    a = np.asarray(m, dtype=complex)
    n = 1
    log_scale = 0.0
    while True:
        s = singular_values(a)
        smin = float(s[-1])
        if smin > 0.0 and (log_scale + math.log(smin)) / n >= 0.0:
            return True
        if n >= cap:
            return False
        norm = float(s[0])
        if norm == 0.0:
            return False
        a = (a / norm) @ (a / norm)
        log_scale = 2.0 * (log_scale + math.log(norm))
        n *= 2


def _classify_multiplication(lam, symbol, band):
    phi = symbol.shifted(np.conj(lam))
    try:
        verdict = classify_multiplier(phi, tol=band)
    except BoundaryUncertain:
        return "boundary_uncertain", np.nan, np.nan
    if verdict.chaotic_all_senses:
        label = "chaotic"
    elif verdict.sup_mod <= 1.0 + TANGENCY_TOL:
        label = "decay"
    else:
        label = "bounded_below"
    return label, verdict.inf_mod, verdict.sup_mod


def _classify_spectral_bounds(lam, base, eig, band):
    if np.all(np.abs(lam + eig) < 1.0 - band):
        return "decay"
    shifted = lam * np.eye(base.shape[0], dtype=complex) + base
    if _sigma_growth_bounded_below(shifted):
        return "bounded_below"
    return "boundary_uncertain"


def _classify_orbit_evidence(lam, base, samples, horizon):
    shifted = lam * np.eye(base.shape[0], dtype=complex) + base
    norms, overflow = orbit_norms_batch(shifted, samples, horizon)
    start = norms[0]
    mins = np.nanmin(norms, axis=0)
    finite_last = np.array(
        [norms[:, j][np.isfinite(norms[:, j])][-1] for j in range(norms.shape[1])]
    )
    maxs = np.nanmax(norms, axis=0)
    rose = maxs > 10.0 * start
    vanished = mins < DELTA_LOW * start
    if np.any(rose & vanished):
        return "chaotic"
    if np.all(finite_last < DELTA_LOW * start):
        return "decay"
    if np.all(mins >= 0.5 * start):
        return "bounded_below"
    return "boundary_uncertain"


def chaos_parameter_map(
    family,
    base,
    grid=(-2.5, 2.5, 0.05),
    horizon=200,
    samples=None,
    threads=1,
):
    """Sweep a lambda lattice and classify lambda I + T per family.

    family "multiplication": base is the AnalyticPolynomial symbol of
    the unperturbed adjoint multiplier; classification goes through
    :func:`classify_multiplier` on conj(lambda) + symbol with the
    uncertainty band set to one grid step.

    family "spectral_bounds": base is a dense matrix; decay when every
    eigenvalue of lambda I + T has modulus < 1 - step, bounded_below
    when the smallest singular value of a power certifies growth.

    family "orbit_evidence": base is dense and ``samples`` (columns)
    are iterated directly; verdicts from the orbit statistics.
    """
    lo, hi, step = grid
    re_values = _grid_values(lo, hi, step)
    im_values = _grid_values(lo, hi, step)
    band = step * (1.0 - 1e-6)

    if family == "multiplication":
        symbol = base if base is not None else AnalyticPolynomial((0.0, 1.0))
        aux_inf = np.full((re_values.size, im_values.size), np.nan)
        aux_sup = np.full((re_values.size, im_values.size), np.nan)

        def row(i):
            out = []
            for j, im in enumerate(im_values):
                lam = complex(re_values[i], im)
                label, inf_mod, sup_mod = _classify_multiplication(lam, symbol, band)
                aux_inf[i, j] = inf_mod
                aux_sup[i, j] = sup_mod
                out.append(label)
            return out

        rows = _run_rows(row, re_values.size, threads)
        return ChaosMap(
            family=family,
            re_values=re_values,
            im_values=im_values,
            verdicts=np.array(rows, dtype=object),
            aux={"inf_mod": aux_inf, "sup_mod": aux_sup},
        )

    if family == "spectral_bounds":
        m = as_operator(base)
        eig = eigenvalues(m, dim_cap=max(m.shape[0], 256))

        def row(i):
            return [
                _classify_spectral_bounds(complex(re_values[i], im), m, eig, band)
                for im in im_values
            ]

        rows = _run_rows(row, re_values.size, threads)
        return ChaosMap(
            family=family,
            re_values=re_values,
            im_values=im_values,
            verdicts=np.array(rows, dtype=object),
        )

    if family == "orbit_evidence":
        m = as_operator(base)
        if samples is None:
            raise UnknownFamily("orbit_evidence needs sample columns")
        cols = np.asarray(samples, dtype=complex)

        def row(i):
            return [
                _classify_orbit_evidence(complex(re_values[i], im), m, cols, horizon)
                for im in im_values
            ]

        rows = _run_rows(row, re_values.size, threads)
        return ChaosMap(
            family=family,
            re_values=re_values,
            im_values=im_values,
            verdicts=np.array(rows, dtype=object),
        )

    raise UnknownFamily(f"unknown family {family!r}")


def _run_rows(row_fn, count, threads):
    """Evaluate rows (possibly in a thread pool) with ordered assembly."""
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(row_fn, range(count)))
    return [row_fn(i) for i in range(count)]
