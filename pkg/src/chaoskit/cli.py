"""Command-line driver.

Builds operators from JSON specs, runs the named scenarios, and writes
CSV tables, JSON verdicts, and (optionally) SVG plots.  Output is
deterministic for a fixed seed: identical configs produce byte-identical
CSV/JSON files.

Exit codes: 0 success, 1 usage/config error, 2 when at least one
scenario verdict came out false.
"""

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .diagnostics import (
    criterion_search,
    distributional_profile,
    classify_dc,
    first_coordinate_invariance,
    inverse_orbit_floor,
    li_yorke_evidence,
    orbit_norms,
)
from .errors import (
    ChaoskitError,
    InvalidConfig,
    ParseError,
    PlotDataEmpty,
    UnknownScenario,
)
from .hardy import AnalyticPolynomial, chaos_parameter_map
from .numerics import adjoint, condition_number, eigenvalues, operator_norm
from .operators import (
    BlockDiagonalOperator,
    BlockPerturbationSpec,
    LebesgueDiscretizationSpec,
    WeightedShiftSpec,
    make_block_perturbation,
    make_lebesgue_operator,
    make_multiplication_truncation,
    make_weighted_backward_shift,
    weighted_adjoint,
    weights_from_rule,
)
from .rng import SplitMix64
from .spectral import (
    DensityFamily,
    check_density_reciprocal_identity,
    check_integral_transfer_identity,
    check_singular_reciprocity,
    polar_decompose,
)

#: Condition-number gate for sampled test matrices (resample above it).
SAMPLE_COND_GATE = 1e4


# ---------------------------------------------------------------------------
# config and result containers


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    params: dict = field(default_factory=dict)
    seed: int = 42
    out: str = "chaoskit_out"
    plot: bool = False
    threads: int = 1


@dataclass(frozen=True)
class Table:
    columns: tuple
    rows: tuple
    kind: str = None  # plot kind: "orbit", "map", "profile", or None


@dataclass
class ResultBundle:
    metadata: dict
    tables: dict
    verdicts: dict
    plots: list = field(default_factory=list)

    def all_pass(self):
        return all(v.get("pass", True) for v in self.verdicts.values())


# ---------------------------------------------------------------------------
# operator spec JSON


def _as_complex(v, where):
    if isinstance(v, (int, float)):
        return complex(v)
    if (
        isinstance(v, (list, tuple))
        and len(v) == 2
        and all(isinstance(c, (int, float)) for c in v)
    ):
        return complex(v[0], v[1])
    raise InvalidConfig(f"{where}: expected a number or [re, im], got {v!r}")


def _require_keys(d, required, optional, where):
    unknown = set(d) - set(required) - set(optional) - {"kind"}
    if unknown:
        raise InvalidConfig(f"{where}: unknown keys {sorted(unknown)}")
    missing = set(required) - set(d)
    if missing:
        raise InvalidConfig(f"{where}: missing keys {sorted(missing)}")


def parse_operator_spec(text):
    """Build a dense operator from its JSON description.

    Grammar: {"kind": "weighted_backward_shift" | "block_perturbation"
    | "multiplication" | "lebesgue", ...kind-specific fields...}.
    Weight/epsilon rules are strings from {"1/n", "const:<v>",
    "pow:<p>"}.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, col {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict) or "kind" not in data:
        raise InvalidConfig("operator spec must be an object with a 'kind' field")
    kind = data["kind"]
    if kind == "weighted_backward_shift":
        _require_keys(data, ["dim", "weights"], [], kind)
        dim = data["dim"]
        if not isinstance(dim, int) or dim < 1:
            raise InvalidConfig(f"{kind}: dim must be a positive integer")
        w = data["weights"]
        if isinstance(w, str):
            weights = weights_from_rule(w, dim - 1)
        elif isinstance(w, list):
            weights = [_as_complex(v, f"{kind}.weights") for v in w]
        else:
            raise InvalidConfig(f"{kind}: weights must be a rule string or a list")
        return make_weighted_backward_shift(WeightedShiftSpec(dim=dim, weights=tuple(weights)))
    if kind == "block_perturbation":
        _require_keys(data, ["lambda", "blocks", "eps"], ["sizes"], kind)
        lam = _as_complex(data["lambda"], f"{kind}.lambda")
        blocks = data["blocks"]
        if not isinstance(blocks, int) or blocks < 1:
            raise InvalidConfig(f"{kind}: blocks must be a positive integer")
        eps = weights_from_rule(data["eps"], blocks)
        if "sizes" in data:
            sizes = weights_from_rule(data["sizes"], blocks)
            size_rule = lambda j, s=sizes: int(round(s[j - 1]))
        else:
            size_rule = lambda j: j
        spec = BlockPerturbationSpec(
            lam=lam,
            block_count=blocks,
            eps_rule=lambda j, e=eps: e[j - 1],
            size_rule=size_rule,
        )
        return make_block_perturbation(spec)
    if kind == "multiplication":
        _require_keys(data, ["coeffs", "dim"], [], kind)
        if not isinstance(data["dim"], int) or data["dim"] < 1:
            raise InvalidConfig(f"{kind}: dim must be a positive integer")
        coeffs = [_as_complex(v, f"{kind}.coeffs") for v in data["coeffs"]]
        return make_multiplication_truncation(coeffs, data["dim"])
    if kind == "lebesgue":
        _require_keys(data, ["a", "b", "dim"], [], kind)
        if not isinstance(data["dim"], int):
            raise InvalidConfig(f"{kind}: dim must be an integer")
        return make_lebesgue_operator(
            LebesgueDiscretizationSpec(a=data["a"], b=data["b"], grid_size=data["dim"])
        )
    raise InvalidConfig(f"unknown operator kind {kind!r}")


# ---------------------------------------------------------------------------
# shared helpers


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, complex):
        re, im = v.real, v.imag
        sign = "+" if im >= 0 else "-"
        return f"{re!r}{sign}{abs(im)!r}i"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _jsonable(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, (float, np.floating)):
        return float(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    return str(v)


def _sample_unit_columns(rng, dim, count):
    cols = np.empty((dim, count), dtype=complex)
    for k in range(count):
        cols[:, k] = rng.complex_normal_vector(dim)
    return cols


def _block_spec(lam, block_count, eps_rule_str, size_factor=1):
    eps = weights_from_rule(eps_rule_str, block_count)
    return BlockPerturbationSpec(
        lam=lam,
        block_count=block_count,
        eps_rule=lambda j, e=eps: e[j - 1],
        size_rule=lambda j, f=size_factor: f * j,
    )


def _orbit_table(record):
    rows = []
    for n, v in enumerate(record.norms):
        if math.isfinite(v):
            rows.append((n, float(v)))
    return Table(columns=("n", "norm"), rows=tuple(rows), kind="orbit")


def _map_table(cmap):
    has_aux = "inf_mod" in cmap.aux
    cols = ["re", "im", "verdict"]
    if has_aux:
        cols += ["inf_mod", "sup_mod"]
    rows = []
    for i, re in enumerate(cmap.re_values):
        for j, im in enumerate(cmap.im_values):
            row = [float(re), float(im), cmap.verdicts[i][j]]
            if has_aux:
                row += [float(cmap.aux["inf_mod"][i, j]), float(cmap.aux["sup_mod"][i, j])]
            rows.append(tuple(row))
    return Table(columns=tuple(cols), rows=tuple(rows), kind="map")


# ---------------------------------------------------------------------------
# scenarios


def _scenario_theorem5_check(config, rng):
    p = _params(config, {"trials": 100, "dim": 32})
    trials, dim = p["trials"], p["dim"]
    rows = []
    max_recip = 0.0
    max_recon = 0.0
    max_unit = 0.0
    min_eig = math.inf
    for t in range(trials):
        m = rng.complex_normal_matrix(dim, dim)
        while condition_number(m) > SAMPLE_COND_GATE:
            m = rng.complex_normal_matrix(dim, dim)
        rep = check_singular_reciprocity(m)
        pol = polar_decompose(m)
        recon = operator_norm(pol.U @ pol.P - m) / operator_norm(m)
        unit = operator_norm(pol.U.conj().T @ pol.U - np.eye(dim))
        p_eig = float(np.min(np.linalg.eigvalsh(0.5 * (pol.P + pol.P.conj().T))))
        rows.append(
            (t, float(condition_number(m)), rep.max_rel_defect, recon, unit, p_eig)
        )
        max_recip = max(max_recip, rep.max_rel_defect)
        max_recon = max(max_recon, recon)
        max_unit = max(max_unit, unit)
        min_eig = min(min_eig, p_eig)
    verdicts = {
        "reciprocity": {"pass": max_recip <= 1e-10, "max_rel_defect": max_recip},
        "polar": {
            "pass": max_recon <= 1e-10 and max_unit <= 1e-10 and min_eig >= -1e-10,
            "max_reconstruction_defect": max_recon,
            "max_unitary_defect": max_unit,
            "min_positive_factor_eigenvalue": min_eig,
        },
    }
    table = Table(
        columns=("trial", "cond", "reciprocity_defect", "reconstruction_defect",
                 "unitary_defect", "p_min_eigenvalue"),
        rows=tuple(rows),
    )
    return {"trials": table}, verdicts


def _scenario_theorem6_check(config, rng):
    p = _params(config, {"a": 0.5, "b": 2.0})
    symbols = (("1", (1.0,)), ("x", (0.0, 1.0)), ("x^2", (0.0, 0.0, 1.0)),
               ("1+x^3", (1.0, 0.0, 0.0, 1.0)))
    rows = []
    worst = 0.0
    for name, coeffs in symbols:
        for n in (1, 2, 3):
            fam = DensityFamily(a=p["a"], b=p["b"], n=n)
            defect = check_integral_transfer_identity(coeffs, fam)
            rows.append((name, n, defect))
            worst = max(worst, defect)
    table = Table(columns=("g", "n", "relative_defect"), rows=tuple(rows))
    verdicts = {"integral_identity": {"pass": worst <= 1e-8, "max_relative_defect": worst}}
    return {"defects": table}, verdicts


def _scenario_theorem7(config, rng):
    p = _params(config, {"a": 0.5, "b": 2.0, "points": 1000, "dim": 64})
    rows = []
    worst = 0.0
    for n in range(1, 6):
        fam = DensityFamily(a=p["a"], b=p["b"], n=n)
        lo, hi = fam.support
        grid = np.exp(np.linspace(math.log(lo), math.log(hi), p["points"] + 2))[1:-1]
        defect = check_density_reciprocal_identity(fam, grid)
        rows.append((n, defect))
        worst = max(worst, defect)
    density_table = Table(columns=("n", "max_abs_defect"), rows=tuple(rows))

    spec = LebesgueDiscretizationSpec(a=p["a"], b=p["b"], grid_size=p["dim"])
    t = make_lebesgue_operator(spec)
    tt = weighted_adjoint(spec, t) @ t
    got = np.sort(np.abs(eigenvalues(tt, dim_cap=p["dim"])))
    want = np.sort(spec.midpoints() ** 2)
    spec_defect = float(np.max(np.abs(got - want) / want))
    verdicts = {
        "density_identity": {"pass": worst <= 1e-12, "max_abs_defect": worst},
        "lebesgue_modulus_spectrum": {
            "pass": spec_defect <= 1e-8,
            "max_rel_defect": spec_defect,
        },
    }
    return {"density_defects": density_table}, verdicts


def _scenario_example2(config, rng):
    p = _params(config, {"dim": 64, "horizon": 100, "samples": 10, "lambda": 1.0})
    lam = complex(p["lambda"])
    dim, horizon = p["dim"], p["horizon"]
    spec = WeightedShiftSpec(dim=dim, weights=tuple(weights_from_rule("1/n", dim - 1)))
    shift = make_weighted_backward_shift(spec)
    op = lam * np.eye(dim, dtype=complex) + adjoint(shift)
    rows = []
    all_rigid = True
    all_no_evidence = True
    for k in range(p["samples"]):
        x = rng.complex_normal_vector(dim)
        x1 = abs(x[0])
        record = orbit_norms(op, x, horizon)
        dev = first_coordinate_invariance(lam, spec, x, horizon)
        verdict = li_yorke_evidence(record)
        floor = float(np.min(record.finite_norms()))
        rigid = floor >= x1 - 1e-10 and dev <= 1e-12 * max(x1, 1.0)
        all_rigid = all_rigid and rigid
        all_no_evidence = all_no_evidence and verdict.kind == "NoEvidence"
        rows.append((k, x1, floor, dev, verdict.kind))
    table = Table(
        columns=("sample", "x1_abs", "orbit_floor", "first_coord_deviation", "verdict"),
        rows=tuple(rows),
    )
    verdicts = {
        "adjoint_rigidity": {"pass": all_rigid and all_no_evidence,
                             "all_floors_hold": all_rigid,
                             "all_no_evidence": all_no_evidence},
    }
    return {"samples": table}, verdicts


def _scenario_example3(config, rng):
    p = _params(config, {"blocks": 36, "eps": "pow:-0.5", "horizon": 800, "samples": 20})
    blocks, horizon = p["blocks"], p["horizon"]
    spec = _block_spec(1.0, blocks, p["eps"])
    op = BlockDiagonalOperator.from_spec(spec)

    # forward orbit of the composite vector sum_j f_j / j^2
    x = sum(op.unit_block_vector(j) / j**2 for j in range(1, blocks + 1))
    record = orbit_norms(op, x, horizon)
    forward = li_yorke_evidence(record)

    # criterion search over the block unit vectors
    candidates = [op.unit_block_vector(j) for j in range(1, blocks + 1)]
    evidence = criterion_search(op, candidates, bound=1.0, horizon=horizon)
    witnessed = evidence.witnessed(len(candidates), growth=1e3)

    # inverse orbits on the invertible part (block 1 is singular when
    # eps_1 = 1, so the inverse lives on blocks 2..J)
    inv_spec = BlockPerturbationSpec(
        lam=1.0,
        block_count=blocks - 1,
        eps_rule=lambda j, s=spec: s.eps_rule(j + 1),
        size_rule=lambda j, s=spec: s.size_rule(j + 1),
    )
    inv_op = BlockDiagonalOperator.from_spec(inv_spec)
    samples = _sample_unit_columns(rng, inv_op.dim, p["samples"])
    stats = inverse_orbit_floor(inv_op, list(samples.T), horizon)
    inv_rows = []
    divergence_ok = True
    for k, st in enumerate(stats):
        xk = samples[:, k]
        norm0 = float(np.linalg.norm(xk))
        block_floor = min(
            float(np.linalg.norm(inv_op.block_component(xk, j)))
            for j in range(1, inv_spec.block_count + 1)
        )
        ok = st.floor >= 0.5 * block_floor and st.final >= 100.0 * norm0
        divergence_ok = divergence_ok and ok
        inv_rows.append((k, norm0, block_floor, st.floor, st.argmin, st.final, ok))
    tables = {
        "forward_orbit": _orbit_table(record),
        "inverse_floors": Table(
            columns=("sample", "start_norm", "min_block_norm", "floor", "argmin",
                     "final_norm", "ok"),
            rows=tuple(inv_rows),
        ),
    }
    verdicts = {
        "forward_li_yorke_evidence": {
            "pass": forward.kind == "LiYorkeEvidence",
            "kind": forward.kind,
            "liminf_est": forward.liminf_est,
            "limsup_est": forward.limsup_est,
        },
        "criterion_witnessed": {
            "pass": witnessed,
            "vanishing_count": len(evidence.vanishing),
            "ladder_top": evidence.ladder[-1] if evidence.ladder else 0.0,
        },
        "inverse_divergence": {"pass": divergence_ok},
    }
    return tables, verdicts


def _scenario_theorem13(config, rng):
    p = _params(config, {"blocks": 18, "eps": "pow:-0.5", "horizon": 400})
    spec = _block_spec(1.0, p["blocks"], p["eps"], size_factor=2)
    op = BlockDiagonalOperator.from_spec(spec)
    x = sum(op.unit_block_vector(j) / j**2 for j in range(1, p["blocks"] + 1))
    norm0 = float(np.linalg.norm(x))
    tau = norm0 * np.geomspace(1e-7, 10.0, 33)
    profile = distributional_profile(op, x, p["horizon"], tau)
    label = classify_dc(profile)
    gap = float(np.max(profile.F_upper - profile.F_lower))
    rows = tuple(
        (float(t), float(lo), float(hi))
        for t, lo, hi in zip(profile.tau_grid, profile.F_lower, profile.F_upper)
    )
    table = Table(columns=("tau", "F_lower", "F_upper"), rows=rows, kind="profile")
    verdicts = {
        "dc_evidence": {
            "pass": label is not None,
            "class": label if label is not None else "None",
            "max_envelope_gap": gap,
        }
    }
    return {"profile": table}, verdicts


def _scenario_theorem14(config, rng):
    p = _params(config, {"blocks": 36, "eps": "pow:-0.5", "horizon_floor": 400,
                         "horizon_criterion": 1500, "samples": 20})
    blocks = p["blocks"]
    bounded_thetas = (("3pi/4", 3 * math.pi / 4), ("-3pi/4", -3 * math.pi / 4),
                      ("pi", math.pi))
    chaotic_thetas = (("0", 0.0), ("pi/4", math.pi / 4), ("-pi/4", -math.pi / 4))
    rows = []
    floors_ok = True
    for name, theta in bounded_thetas:
        lam = complex(math.cos(theta), math.sin(theta))
        spec = _block_spec(lam, blocks, p["eps"])
        op = BlockDiagonalOperator.from_spec(spec)
        samples = _sample_unit_columns(rng, op.dim, p["samples"])
        worst_ratio = math.inf
        for k in range(samples.shape[1]):
            x = samples[:, k]
            record = orbit_norms(op, x, p["horizon_floor"])
            ym = None
            for j in range(1, blocks + 1):
                bn = float(np.linalg.norm(op.block_component(x, j)))
                if bn > 0.0:
                    ym = bn
                    break
            floor = float(np.min(record.finite_norms()))
            worst_ratio = min(worst_ratio, floor / ym)
        ok = worst_ratio >= 1.0 - 1e-6
        floors_ok = floors_ok and ok
        rows.append((name, "bounded_below", worst_ratio, ok))
    criterion_ok = True
    for name, theta in chaotic_thetas:
        lam = complex(math.cos(theta), math.sin(theta))
        spec = _block_spec(lam, blocks, p["eps"])
        op = BlockDiagonalOperator.from_spec(spec)
        candidates = [op.unit_block_vector(j) for j in range(1, blocks + 1)]
        evidence = criterion_search(op, candidates, bound=1.0,
                                    horizon=p["horizon_criterion"])
        witnessed = evidence.witnessed(len(candidates), growth=1e3)
        criterion_ok = criterion_ok and witnessed
        top = evidence.ladder[-1] if evidence.ladder else 0.0
        rows.append((name, "criterion", top, witnessed))
    table = Table(columns=("theta", "group", "statistic", "ok"), rows=tuple(rows))
    verdicts = {
        "floors": {"pass": floors_ok},
        "criterion": {"pass": criterion_ok},
    }
    return {"angles": table}, verdicts


def _scenario_lemma9_map(config, rng):
    p = _params(config, {"grid": (-2.5, 2.5, 0.05)})
    cmap = chaos_parameter_map(
        "multiplication",
        AnalyticPolynomial((0.0, 1.0)),
        grid=p["grid"],
        threads=config.threads,
    )
    step = p["grid"][2]
    ok = True
    for i, re in enumerate(cmap.re_values):
        for j, im in enumerate(cmap.im_values):
            r = math.hypot(re, im)
            v = cmap.verdicts[i][j]
            if step - 1e-9 <= r <= 2.0 - step + 1e-9:
                ok = ok and v == "chaotic"
            elif r >= 2.0 + step - 1e-9 or r == 0.0:
                ok = ok and v in ("decay", "bounded_below")
            else:
                ok = ok and v == "boundary_uncertain"
    verdicts = {"annulus": {"pass": ok}}
    return {"map": _map_table(cmap)}, verdicts


def _scenario_lemma8_map(config, rng):
    p = _params(config, {"grid": (-2.5, 2.5, 0.25), "dim": 32})
    dim = p["dim"]
    spec = WeightedShiftSpec(dim=dim, weights=tuple(weights_from_rule("1/n", dim - 1)))
    base = make_weighted_backward_shift(spec)
    cmap = chaos_parameter_map(
        "spectral_bounds", base, grid=p["grid"], threads=config.threads
    )
    step = p["grid"][2]
    ok = True
    for i, re in enumerate(cmap.re_values):
        for j, im in enumerate(cmap.im_values):
            r = math.hypot(re, im)
            v = cmap.verdicts[i][j]
            if r < 1.0 - step - 1e-9:
                ok = ok and v == "decay"
            elif r > 1.0 + step + 1e-9:
                ok = ok and v == "bounded_below"
    verdicts = {"disk_dichotomy": {"pass": ok}}
    return {"map": _map_table(cmap)}, verdicts


_SCENARIOS = {
    "example2": _scenario_example2,
    "example3": _scenario_example3,
    "theorem7": _scenario_theorem7,
    "theorem13": _scenario_theorem13,
    "theorem14": _scenario_theorem14,
    "lemma9_map": _scenario_lemma9_map,
    "lemma8_map": _scenario_lemma8_map,
    "theorem5_check": _scenario_theorem5_check,
    "theorem6_check": _scenario_theorem6_check,
}


def _params(config, defaults):
    unknown = set(config.params) - set(defaults)
    if unknown:
        raise InvalidConfig(
            f"{config.scenario}: unknown parameters {sorted(unknown)}"
        )
    merged = dict(defaults)
    merged.update(config.params)
    return merged


def run_scenario(config):
    """Run one scenario and return its ResultBundle (no files written)."""
    if config.scenario not in _SCENARIOS:
        raise UnknownScenario(f"unknown scenario {config.scenario!r}")
    rng = SplitMix64(config.seed)
    tables, verdicts = _SCENARIOS[config.scenario](config, rng)
    metadata = {
        "scenario": config.scenario,
        "seed": config.seed,
        "parameters": _jsonable(config.params),
        "version": __version__,
    }
    return ResultBundle(metadata=metadata, tables=tables, verdicts=verdicts)


# ---------------------------------------------------------------------------
# output


def write_bundle(bundle, out_dir, plot=False):
    """Write CSV tables and the verdicts JSON; return written paths."""
    os.makedirs(out_dir, exist_ok=True)
    scenario = bundle.metadata["scenario"]
    paths = []
    for name, table in bundle.tables.items():
        path = os.path.join(out_dir, f"{scenario}_{name}.csv")
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\r\n")
            writer.writerow(table.columns)
            for row in table.rows:
                writer.writerow([_fmt(v) for v in row])
        paths.append(path)
        if plot and table.kind is not None:
            svg = os.path.join(out_dir, f"{scenario}_{name}.svg")
            emit_plot(table, table.kind, svg)
            bundle.plots.append(svg)
            paths.append(svg)
    jpath = os.path.join(out_dir, f"{scenario}_verdicts.json")
    payload = {"metadata": bundle.metadata, "verdicts": _jsonable(bundle.verdicts)}
    with open(jpath, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    paths.append(jpath)
    return paths


_MAP_COLORS = {
    "chaotic": "#c0392b",
    "decay": "#2980b9",
    "bounded_below": "#27ae60",
    "boundary_uncertain": "#f1c40f",
}


def emit_plot(table, kind, path):
    """Render one table as a self-contained SVG."""
    if not table.rows:
        raise PlotDataEmpty(f"no rows to plot for {path}")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    cols = {c: i for i, c in enumerate(table.columns)}
    if kind == "orbit":
        n = [r[cols["n"]] for r in table.rows]
        norm = [max(r[cols["norm"]], 1e-300) for r in table.rows]
        ax.semilogy(n, norm)
        ax.set_xlabel("n")
        ax.set_ylabel("orbit norm")
    elif kind == "map":
        for label, color in _MAP_COLORS.items():
            xs = [r[cols["re"]] for r in table.rows if r[cols["verdict"]] == label]
            ys = [r[cols["im"]] for r in table.rows if r[cols["verdict"]] == label]
            if xs:
                ax.scatter(xs, ys, s=4, c=color, label=label, marker="s")
        ax.set_aspect("equal")
        ax.set_xlabel("Re lambda")
        ax.set_ylabel("Im lambda")
        ax.legend(loc="upper right", fontsize=7)
    elif kind == "profile":
        tau = [r[cols["tau"]] for r in table.rows]
        ax.semilogx(tau, [r[cols["F_lower"]] for r in table.rows], label="F_lower")
        ax.semilogx(tau, [r[cols["F_upper"]] for r in table.rows], label="F_upper")
        ax.set_xlabel("tau")
        ax.set_ylabel("F")
        ax.legend()
    else:
        raise PlotDataEmpty(f"unknown plot kind {kind!r}")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


# ---------------------------------------------------------------------------
# argument handling


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidConfig(message)


def _parse_grid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidConfig(f"grid must be lo:hi:step, got {text!r}")
    lo, hi, step = (float(v) for v in parts)
    if not (hi > lo and step > 0):
        raise InvalidConfig(f"grid needs lo < hi and step > 0, got {text!r}")
    return (lo, hi, step)


def build_config(argv):
    parser = _Parser(prog="chaoskit", description=__doc__)
    parser.add_argument("scenario", help=f"one of: {', '.join(sorted(_SCENARIOS))}")
    parser.add_argument("--config", help="JSON config file (flags override it)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--dim", type=int, default=None)
    parser.add_argument("--horizon", type=int, default=None)
    parser.add_argument("--blocks", type=int, default=None)
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--eps", default=None, help="epsilon rule, e.g. pow:-0.5")
    parser.add_argument("--grid", default=None, help="lo:hi:step")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--plot", action="store_true")
    args = parser.parse_args(argv)

    params = {}
    seed, out, plot = 42, "chaoskit_out", False
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InvalidConfig(f"cannot read config: {exc}")
        except json.JSONDecodeError as exc:
            raise ParseError(f"config line {exc.lineno}: {exc.msg}")
        if not isinstance(data, dict):
            raise InvalidConfig("config must be a JSON object")
        extra = set(data) - {"scenario", "seed", "out", "plot", "parameters"}
        if extra:
            raise InvalidConfig(f"config: unknown keys {sorted(extra)}")
        if data.get("scenario", args.scenario) != args.scenario:
            raise InvalidConfig("config scenario does not match the command line")
        seed = data.get("seed", seed)
        out = data.get("out", out)
        plot = data.get("plot", plot)
        params.update(data.get("parameters", {}))
    for key in ("dim", "horizon", "blocks", "trials", "samples", "eps"):
        v = getattr(args, key)
        if v is not None:
            params[key] = v
    if args.grid is not None:
        params["grid"] = _parse_grid(args.grid)
    elif "grid" in params:
        params["grid"] = tuple(params["grid"])
    if args.seed is not None:
        seed = args.seed
    if args.out is not None:
        out = args.out
    plot = plot or args.plot
    threads = max(1, int(os.environ.get("CHAOSKIT_THREADS", "1")))
    return ScenarioConfig(
        scenario=args.scenario, params=params, seed=seed, out=out, plot=plot,
        threads=threads,
    )


def main(argv=None):
    try:
        config = build_config(sys.argv[1:] if argv is None else argv)
        bundle = run_scenario(config)
        paths = write_bundle(bundle, config.out, plot=config.plot)
    except (InvalidConfig, ParseError, UnknownScenario) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ChaoskitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"scenario {config.scenario} (seed {config.seed})")
    for name, verdict in bundle.verdicts.items():
        status = "pass" if verdict.get("pass", True) else "FAIL"
        print(f"  verdict {name}: {status}")
    for path in paths:
        print(f"  wrote {path}")
    return 0 if bundle.all_pass() else 2


if __name__ == "__main__":
    sys.exit(main())
