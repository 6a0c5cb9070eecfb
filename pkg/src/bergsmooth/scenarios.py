"""Config-driven experiment scenarios with CSV reports and pass/fail gates.

Each scenario reproduces one family of smoothing phenomena at desk scale and
grades itself against the numbered acceptance checks (C1 through C9).  The
check functions are the single source of truth: the packaged test suite calls
the same code.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field as dc_field, asdict

import numpy as np

from . import __version__
from .bergman import build_basis, project
from .decompose import decompose, reproduction_residual
from .errors import ParameterError
from .flow import antideriv_chain, build_chart
from .functions import AngularFamily, Holo1, Poly2
from .geometry import (
    boundary_distance,
    canonical_fields,
    collar_rate,
    make_domain,
    polar_eval_grid,
    quadrature_grid,
)
from .norms import (
    directional_sobolev_norm,
    duality_sup,
    sobolev_norm,
    sup_weighted_norm,
    weighted_negative_norm,
)
from .operators import abs_moment_op, collar_ratio_grid, hardy_line_case, weighted_ratio_sweep

SCENARIOS = ("ftc", "hardy", "decomposition", "conj-smoothing", "partial-smoothing",
             "duality")

__all__ = ["ScenarioConfig", "ReportBundle", "CheckResult", "run_scenario",
           "emit_report", "SCENARIOS"]


@dataclass(frozen=True)
class CheckResult:
    criterion: str
    description: str
    passed: bool
    measured: float
    threshold: float

    def summary_line(self):
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.criterion}: {self.description} "
                f"(measured {self.measured:.6g}, threshold {self.threshold:.6g})")


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    domain_kind: str = "disk"
    rho: float = 0.5
    k: int = 2
    k1: int = 1
    k2: int = 1
    basis_size: int = 32
    n_r: int = 32
    n_theta: int = 64
    delta: float = 1e-3
    m_steps: int = 64
    q_panels: int = 32
    seed: int = 20260808
    output_dir: str = "reports"
    tolerances: dict = dc_field(default_factory=dict)

    @staticmethod
    def from_dict(data: dict) -> "ScenarioConfig":
        if not isinstance(data, dict):
            raise ParameterError("config must be a JSON object")
        unknown = set(data) - set(ScenarioConfig.__dataclass_fields__)
        if unknown:
            raise ParameterError(f"unknown config fields: {sorted(unknown)}")
        if "scenario" not in data:
            raise ParameterError("config needs a 'scenario' field")
        cfg = ScenarioConfig(**data)
        if cfg.scenario not in SCENARIOS:
            raise ParameterError(f"unknown scenario {cfg.scenario!r}; "
                                 f"choose from {', '.join(SCENARIOS)}")
        for name in ("k", "k1", "k2"):
            if not 0 <= getattr(cfg, name) <= 3:
                raise ParameterError(f"{name} must lie in 0..3")
        if cfg.n_r < 4 or cfg.n_theta < 4 or cfg.basis_size < 1:
            raise ParameterError("grid and basis sizes out of range")
        if any(t <= 0 for t in cfg.tolerances.values()):
            raise ParameterError("tolerances must be positive")
        return cfg

    @staticmethod
    def from_json(path: str) -> "ScenarioConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return ScenarioConfig.from_dict(json.load(fh))


@dataclass
class ReportBundle:
    scenario: str
    tables: dict
    checks: list
    provenance: dict

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary_lines(self):
        lines = [f"scenario: {self.scenario}", ""]
        lines += [c.summary_line() for c in self.checks]
        lines += ["", f"criteria: {sum(c.passed for c in self.checks)}"
                  f"/{len(self.checks)} passed"]
        return lines


def _provenance(cfg: ScenarioConfig) -> dict:
    dom = _domain(cfg)
    return {
        "config": asdict(cfg),
        "version": __version__,
        "numpy": np.__version__,
        "collar_rate": collar_rate(dom),
    }


def _domain(cfg: ScenarioConfig):
    return make_domain(cfg.domain_kind,
                       rho=cfg.rho if cfg.domain_kind == "annulus" else None)


def _seeded_masked(chart, rng, degree=3):
    w = Poly2.random(rng, degree=degree)
    return lambda p, w=w, chart=chart: chart.cutoff(p) * w(p)


def _band_limited(rng, n_terms=11, decay=0.65):
    c = (rng.normal(size=n_terms) + 1j * rng.normal(size=n_terms)) * decay ** np.arange(n_terms)
    return Holo1.from_coeffs(c)


# ---------------------------------------------------------------------------
# C1: reproduction of cutoff functions through the transverse flow
# ---------------------------------------------------------------------------


def check_ftc(cfg: ScenarioConfig):
    rng = np.random.default_rng(cfg.seed)
    checks, rows = [], []
    t_start = time.perf_counter()
    worst = 0.0
    for dom in (make_domain("disk"), make_domain("annulus", rho=cfg.rho)):
        chart = build_chart(dom)
        grid = polar_eval_grid(dom, 24, 48, r_inner=0.3 if dom.kind == "disk" else None)
        pts = grid.nodes().ravel()
        for i in range(10):
            w = Poly2.random(rng, degree=3)

            def ng(p, w=w, chart=chart):
                r = chart.domain.radius(p)
                wx = w.partial((1, 0), p)
                wy = w.partial((0, 1), p)
                radial = chart.speed_over_r(r) * (p.real * wx + p.imag * wy)
                return (-chart.cutoff_time_derivative(p) * w(p)
                        + chart.cutoff(p) * radial)

            g = chart.cutoff(pts) * w(pts)
            ag = antideriv_chain(chart, ng, pts, depth=1,
                                 q_panels=cfg.q_panels, m_steps=cfg.m_steps)
            err = float(np.max(np.abs(g - ag)))
            rows.append([str(dom), i, err])
            worst = max(worst, err)
    elapsed = time.perf_counter() - t_start
    checks.append(CheckResult("C1", "flow reproduction sup-defect, 10 seeded cutoff "
                              "functions on disk and annulus", worst <= 1e-6, worst, 1e-6))
    checks.append(CheckResult("C1", "flow reproduction runtime (s)", elapsed < 5.0,
                              elapsed, 5.0))
    return checks, {"ftc_residuals": (["domain", "sample", "sup_defect"], rows)}


# ---------------------------------------------------------------------------
# C2: weighted Hardy bounds for the majorant kernels
# ---------------------------------------------------------------------------


def check_hardy(cfg: ScenarioConfig):
    rng = np.random.default_rng(cfg.seed)
    chart = build_chart(make_domain("disk"))
    grid = collar_ratio_grid(chart, n_r=24, n_th=48)
    rows = []
    worst_excess = -np.inf
    for mu in (0, 1):
        expr = abs_moment_op(mu)
        sweep_max = np.zeros(9)
        for _ in range(20):
            g = _seeded_masked(chart, rng)
            ratios = weighted_ratio_sweep(expr, g, range(9), chart, grid,
                                          q_panels=cfg.q_panels, m_steps=cfg.m_steps)
            sweep_max = np.maximum(sweep_max, ratios)
        for ell, r in enumerate(sweep_max):
            bound = 2.0 / (2 * ell + 1)
            rows.append([mu, ell, float(r), bound])
            worst_excess = max(worst_excess, float(r) - bound)
    checks = [CheckResult("C2", "majorant kernel ratio minus Hardy bound, "
                          "mu in {0,1}, weights 0..8, 20 seeded functions",
                          worst_excess <= 0.05, worst_excess, 0.05)]
    lhs2, rhs2 = hardy_line_case()
    err = max(abs(lhs2 - 1.0 / 3.0), abs(rhs2 - 4.0 / 3.0))
    checks.append(CheckResult("C2", "closed line-segment case (1/3 vs 4/3)",
                              err <= 1e-10, err, 1e-10))
    return checks, {"hardy_ratios": (["mu", "weight_exponent", "max_ratio", "bound"], rows)}


# ---------------------------------------------------------------------------
# C3 and C4: the reproduction identity and the component decomposition
# ---------------------------------------------------------------------------


_H_SET = (("one", lambda: Holo1.constant(1.0)),
          ("z", lambda: Holo1.from_coeffs([0.0, 1.0])),
          ("near_pole", lambda: Holo1.inverse_power(0.9, 1.0)))


def check_reproduction(cfg: ScenarioConfig):
    chart = build_chart(make_domain("disk"))
    tol = {1: 1e-6, 2: 1e-5, 3: 1e-4}
    rows, checks = [], []
    worst = {k: 0.0 for k in tol}
    for name, mk in _H_SET:
        h = mk()
        for k in tol:
            r = reproduction_residual(h, k, chart, q_panels=cfg.q_panels, m_steps=cfg.m_steps)
            rows.append([name, k, r, tol[k]])
            worst[k] = max(worst[k], r)
    for k in tol:
        checks.append(CheckResult("C3", f"reproduction residual at order {k}",
                                  worst[k] <= tol[k], worst[k], tol[k]))
    ratio_min = np.inf
    h = Holo1.from_coeffs([0.3, 1.0])
    for k in tol:
        base = reproduction_residual(h, k, chart, q_panels=cfg.q_panels, m_steps=cfg.m_steps)
        fine = reproduction_residual(h, k, chart, q_panels=2 * cfg.q_panels,
                              m_steps=2 * cfg.m_steps)
        ratio_min = min(ratio_min, base / fine)
    checks.append(CheckResult("C3", "residual drop per resolution doubling",
                              ratio_min >= 4.0, ratio_min, 4.0))
    return checks, {"reproduction_residuals": (["h", "order", "residual", "tolerance"], rows)}


def check_decomposition(cfg: ScenarioConfig):
    dom = make_domain("disk")
    chart = build_chart(dom)
    rows, checks = [], []
    tol = {1: 1e-5, 2: 1e-4}
    worst = {k: 0.0 for k in tol}
    for name, mk in _H_SET:
        h = mk()
        for k in tol:
            res = decompose(h, k, chart, q_panels=cfg.q_panels, m_steps=cfg.m_steps)
            worst[k] = max(worst[k], res.residual)
            for j, (n, r) in enumerate(zip(res.component_norms, res.norm_ratios)):
                rows.append([name, k, j, n, r, res.residual])
    for k in tol:
        checks.append(CheckResult("C4", f"decomposition residual at order {k}",
                                  worst[k] <= tol[k], worst[k], tol[k]))

    # ratio envelope across the boundary-singular family
    env_worst = 0.0
    dump = None
    for k in (1, 2):
        ratios = {j: [] for j in range(k + 1)}
        for a in (0.9, 0.99, 0.999):
            res = decompose(Holo1.inverse_power(a, 0.75), k, chart,
                            q_panels=cfg.q_panels, m_steps=cfg.m_steps)
            for j, r in enumerate(res.norm_ratios):
                ratios[j].append(r)
                rows.append([f"pole_{a}", k, j, res.component_norms[j], r, res.residual])
            if k == 2 and a == 0.9:
                dump = res.values_csv_rows()
        for j, vals in ratios.items():
            env_worst = max(env_worst, max(vals) / min(vals))
    checks.append(CheckResult("C4", "component-to-weighted-norm ratio envelope over "
                              "the singular family", env_worst <= 10.0, env_worst, 10.0))

    # Sobolev norms of the components are stable under evaluation refinement
    from .decompose import _component_closures
    growth_worst = 0.0
    for k in (1, 2):
        closures = _component_closures(Holo1.inverse_power(0.9, 0.75), k, chart,
                                       cfg.q_panels, cfg.m_steps)
        for closure in closures:
            vals = []
            for n_r, n_th in ((48, 96), (96, 192)):
                egrid = polar_eval_grid(dom, n_r, n_th, r_inner=0.4)
                samples = np.asarray(closure(egrid.nodes().ravel())).reshape(egrid.shape)
                vals.append(sobolev_norm(samples, k, dom, eval_grid=egrid, mode="fd"))
            growth_worst = max(growth_worst, vals[1] / vals[0])
    checks.append(CheckResult("C4", "component Sobolev norms under grid doubling",
                              growth_worst <= 1.5, growth_worst, 1.5))
    header = ["h", "order", "component", "norm", "ratio", "residual"]
    tables = {"decomposition": (header, rows)}
    if dump is not None:
        tables["decomposition_components"] = dump
    return checks, tables


# ---------------------------------------------------------------------------
# C5, C6, C9: conjugate-holomorphic smoothing and the product bound
# ---------------------------------------------------------------------------


def check_conj_disk(cfg: ScenarioConfig):
    rng = np.random.default_rng(cfg.seed)
    dom = make_domain("disk")
    grid = quadrature_grid(dom, cfg.n_r, cfg.n_theta, cfg.delta)
    basis = build_basis(dom, cfg.basis_size)
    rows = []
    worst = 0.0
    for i in range(10):
        a = (rng.normal(size=9) + 1j * rng.normal(size=9)) * 0.7 ** np.arange(9)
        f = Holo1.from_coeffs(a)
        c = project(lambda z: np.conj(f(z)), basis, grid).coeffs
        expected0 = np.conj(a[0]) * np.sqrt(np.pi)
        err = float(np.sqrt(np.abs(c[0] - expected0) ** 2 + np.sum(np.abs(c[1:]) ** 2)))
        rows.append([i, err])
        worst = max(worst, err)
    checks = [CheckResult("C5", "projection of conjugates is the mean constant, "
                          "10 seeded polynomials", worst <= 1e-8, worst, 1e-8)]
    return checks, {"conj_disk": (["sample", "l2_defect"], rows)}


def check_conj_annulus(cfg: ScenarioConfig):
    rng = np.random.default_rng(cfg.seed)
    dom = make_domain("annulus", rho=cfg.rho)
    grids = {res: quadrature_grid(dom, cfg.n_r * res, cfg.n_theta * res, cfg.delta)
             for res in (1, 2)}
    basis = build_basis(dom, cfg.basis_size)
    checks, rows = [], []

    # the projection of conj(z) is an explicit multiple of 1/z
    c = project(lambda z: np.conj(z), basis, grids[1]).coeffs
    idx = {e.power: i for i, e in enumerate(basis.elements)}
    mono = c[idx[-1]] / basis.elements[idx[-1]].norm
    expected = np.pi * (1 - cfg.rho**2) / (2 * np.pi * np.log(1 / cfg.rho))
    err = abs(mono - expected)
    others = float(np.max(np.abs(np.delete(c, idx[-1]))))
    checks.append(CheckResult("C6", "projected conjugate coordinate: coefficient of 1/z",
                              err <= 1e-6 and others <= 1e-9, err, 1e-6))

    # Sobolev norms of projected conjugate powers: finite, refinement-stable
    drift_worst = 0.0
    for m in (1, 2, 3):
        for k in (0, 1, 2):
            vals = []
            for res in (1, 2):
                cv = project(lambda z: np.conj(z) ** m, basis, grids[res])
                vals.append(sobolev_norm(cv, k, dom, grid=grids[res]))
            rows.append([m, k, vals[0], vals[1]])
            drift_worst = max(drift_worst, abs(vals[1] - vals[0]) / vals[0])
    checks.append(CheckResult("C6", "projected conjugate-power norms drift under "
                              "grid doubling", drift_worst <= 1e-2, drift_worst, 1e-2))

    # bounded ratios across a seeded conjugate-holomorphic family
    env = {k: [] for k in (0, 1, 2)}
    for i in range(10):
        coeff = {p: (rng.normal() + 1j * rng.normal()) * 0.6 ** abs(p)
                 for p in range(-4, 5)}
        f = Holo1.laurent(coeff)
        fbar = lambda z, f=f: np.conj(f(z))
        fnorm = grids[1].norm(fbar(grids[1].nodes))
        cv = project(fbar, basis, grids[1])
        for k in env:
            env[k].append(sobolev_norm(cv, k, dom, grid=grids[1]) / fnorm)
    env_worst = max(max(v) / min(v) for v in env.values())
    checks.append(CheckResult("C6", "projected-to-input norm ratio envelope over the "
                              "seeded conjugate family", env_worst <= 10.0,
                              env_worst, 10.0))
    return checks, {"conj_annulus_norms": (["power", "order", "norm", "norm_refined"],
                                           rows)}


def check_product_bound(cfg: ScenarioConfig):
    rng = np.random.default_rng(cfg.seed)
    dom = _domain(cfg) if cfg.domain_kind != "ball2" else make_domain("disk")
    grid = quadrature_grid(dom, cfg.n_r, cfg.n_theta, cfg.delta)
    n = dom.complex_dimension
    d = boundary_distance(dom, grid.nodes)
    k = cfg.k
    w1 = d ** (2 * n)
    w2 = d ** (k + 2 * n)
    worst = -np.inf
    rows = []
    for i in range(10):
        f = _band_limited(rng)
        g = _band_limited(rng)
        fv, gv = f(grid.nodes), g(grid.nodes)
        s1 = float(np.max(np.abs(fv) * w1))
        s2 = float(np.max(np.abs(gv) * w2))
        lhs = np.abs(np.conj(fv) * gv) * (w1 * w2)
        margin = float(np.max(lhs) - s1 * s2)
        ok = bool(np.all(lhs <= s1 * s2))
        rows.append([i, float(np.max(lhs)), s1 * s2, ok])
        worst = max(worst, margin)
    checks = [CheckResult("C9", "pointwise weighted product bound against the "
                          "sup-weighted norms (exact inequality)", worst <= 0.0,
                          worst, 0.0)]
    return checks, {"product_bound": (["pair", "max_lhs", "sup_product", "holds"], rows)}


# ---------------------------------------------------------------------------
# C7: partial smoothing through a single tangential direction
# ---------------------------------------------------------------------------


def check_partial_smoothing(cfg: ScenarioConfig):
    dom = make_domain("disk")
    fields = canonical_fields(dom)
    profile = lambda r: np.abs(2.0 * r - 1.0) ** 0.3
    fam = AngularFamily([(3, profile)])
    f = lambda z: fam(z)
    checks, rows = [], []

    t_norms = []
    for res in (1, 2):
        grid = quadrature_grid(dom, cfg.n_r * res, cfg.n_theta * res, cfg.delta)
        t_norms.append(directional_sobolev_norm(fam, fields["T0"], 3, grid=grid))
    t_drift = abs(t_norms[1] - t_norms[0]) / t_norms[0]
    checks.append(CheckResult("C7", "tangential norm of order 3 drift under grid "
                              "doubling", t_drift < 0.02, t_drift, 0.02))

    h1 = []
    for res in (1, 2, 4):
        egrid = polar_eval_grid(dom, 64 * res, 128 * res, delta=cfg.delta)
        h1.append(sobolev_norm(f, 1, dom, eval_grid=egrid, mode="fd"))
    growths = [h1[i + 1] / h1[i] - 1.0 for i in range(2)]
    for res, v in zip((1, 2, 4), h1):
        rows.append([res, v])
    min_growth = min(growths)
    checks.append(CheckResult("C7", "full first-order norm estimate growth per "
                              "grid doubling", min_growth > 0.30, min_growth, 0.30))

    grid = quadrature_grid(dom, cfg.n_r, cfg.n_theta, cfg.delta)
    basis = build_basis(dom, cfg.basis_size)
    cv = project(f, basis, grid)
    off = np.abs(np.concatenate([cv.coeffs[:3], cv.coeffs[4:]]))
    checks.append(CheckResult("C7", "projection concentrates on the cubic mode "
                              "(off-mode coefficients)", float(np.max(off)) < 1e-9,
                              float(np.max(off)), 1e-9))

    bf_norms = []
    for res in (1, 2):
        g2 = quadrature_grid(dom, cfg.n_r * res, cfg.n_theta * res, cfg.delta)
        cvr = project(f, basis, g2)
        bf_norms.append(sobolev_norm(cvr, 3, dom, grid=g2))
    bf_drift = abs(bf_norms[1] - bf_norms[0]) / bf_norms[0]
    checks.append(CheckResult("C7", "projection Sobolev-3 norm drift under grid "
                              "doubling", bf_drift < 0.02, bf_drift, 0.02))
    from .norms import NormReport
    reports = [
        NormReport(t_norms[0], "HkT", {"k": 3, "grid": f"{cfg.n_r}x{cfg.n_theta}"}),
        NormReport(t_norms[1], "HkT", {"k": 3, "grid": f"{2 * cfg.n_r}x{2 * cfg.n_theta}"}),
        NormReport(h1[0], "Hk", {"k": 1, "grid": "64x128", "divergent": True}),
        NormReport(h1[2], "Hk", {"k": 1, "grid": "256x512", "divergent": True}),
        NormReport(bf_norms[0], "Hk", {"k": 3, "grid": f"{cfg.n_r}x{cfg.n_theta}"}),
    ]
    norm_rows = [[r.kind, r.parameters["k"], r.value, r.parameters["grid"]]
                 for r in reports]
    return checks, {"partial_smoothing": (["quantity", "value"], rows),
                    "norm_reports": (["kind", "k", "value", "grid"], norm_rows)}


# ---------------------------------------------------------------------------
# C8: duality lower bound with a stable empirical constant
# ---------------------------------------------------------------------------


def check_duality(cfg: ScenarioConfig):
    rng = np.random.default_rng(cfg.seed)
    dom = make_domain("disk")
    grid = quadrature_grid(dom, cfg.n_r, cfg.n_theta, cfg.delta)
    bases = {nb: build_basis(dom, nb) for nb in (cfg.basis_size, 2 * cfg.basis_size)}
    rows = []
    c_emp = {nb: 0.0 for nb in bases}
    fs = [_band_limited(rng) for _ in range(20)]
    for k in (1, 2):
        for i, f in enumerate(fs):
            nk = sobolev_norm(f, k, dom, grid=grid)
            for nb, basis in bases.items():
                ds = duality_sup(f, k, basis, grid)
                c_emp[nb] = max(c_emp[nb], nk / ds)
                if nb == cfg.basis_size:
                    rows.append([k, i, ds, nk, nk / ds])
    drift = c_emp[2 * cfg.basis_size] / c_emp[cfg.basis_size]
    drift = max(drift, 1.0 / drift)
    checks = [
        CheckResult("C8", "empirical duality constant (finite, single constant "
                    "across the family)", np.isfinite(c_emp[cfg.basis_size]),
                    c_emp[cfg.basis_size], float("inf")),
        CheckResult("C8", "duality constant drift under basis doubling",
                    drift < 2.0, drift, 2.0),
    ]
    return checks, {"duality": (["order", "sample", "duality_sup", "sobolev_norm",
                                 "ratio"], rows)}


# ---------------------------------------------------------------------------
# runner and reports
# ---------------------------------------------------------------------------


_SCENARIO_CHECKS = {
    "ftc": (check_ftc,),
    "hardy": (check_hardy,),
    "decomposition": (check_reproduction, check_decomposition),
    "conj-smoothing": (check_conj_disk, check_conj_annulus, check_product_bound),
    "partial-smoothing": (check_partial_smoothing,),
    "duality": (check_duality,),
}


def run_scenario(cfg: ScenarioConfig) -> ReportBundle:
    """Run one scenario; deterministic for a fixed config and seed."""
    checks, tables = [], {}
    for fn in _SCENARIO_CHECKS[cfg.scenario]:
        c, t = fn(cfg)
        checks.extend(c)
        tables.update(t)
    return ReportBundle(cfg.scenario, tables, checks, _provenance(cfg))


def _format_cell(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.17g}"
    if isinstance(x, (complex, np.complexfloating)):
        return f"{x.real:.17g},{x.imag:.17g}"
    return str(x)


def emit_report(bundle: ReportBundle, output_dir: str):
    """Write summary.txt, one CSV per table, and the config echo; stable order."""
    import os

    os.makedirs(output_dir, exist_ok=True)
    paths = []
    for name in sorted(bundle.tables):
        header, rows = bundle.tables[name]
        path = os.path.join(output_dir, f"{name}.csv")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_format_cell(x) for x in row) + "\n")
        paths.append(path)
    summary = os.path.join(output_dir, "summary.txt")
    with open(summary, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(bundle.summary_lines()) + "\n")
    paths.append(summary)
    echo = os.path.join(output_dir, "config_echo.json")
    with open(echo, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(bundle.provenance, fh, indent=2, sort_keys=True)
        fh.write("\n")
    paths.append(echo)
    return paths
