# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

"""
Checks the numerical machinery against the closed forms: grid-ladder
comparisons with the analytic solutions, randomized sweeps over the
analytic inequalities and the drag laws, and the power-functional check.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import logging

import numpy as np

from porehound import analytic
from porehound.conditions import (Driving, PrescribedNormalVelocity,
    PrescribedPressure)
from porehound.drag import drag, total_dissipation
from porehound.errors import DomainError, PorehoundError
from porehound.grid import (CARTESIAN_2D, INTERVAL_1D, RADIAL_CYLINDRICAL,
    RADIAL_SPHERICAL, StructuredGrid)
from porehound.material import (Barus, Darcy, DarcyForchheimer,
    LinearizedBarus)
from porehound.power import (default_perturbations, flux_perturbation,
    mpt_stationarity_check, through_flow_perturbation)
from porehound.primal import SolverSettings, solve_flow
from porehound.topopt import DesignProblem, OptimizerSettings, optimize
from porehound.utilities import relative_error

logger = logging.getLogger(__name__)

GENERATOR = "numpy.random.PCG64"
SWEEP_TOL = 1e-12
PERMUTATION_SAMPLES = 20
PERMUTATION_TOL = 1e-6
PARTIAL_TOL = 1e-6
STATIONARY_TOL = 1e-8
AGREEMENT_TOL = 0.1
# Differences of Φ below this (relative) are round-off.
ROUNDOFF = 1e-12

SWEEPS = ("proposition", "lemma", "amgm", "drag", "permutation")
SUITES = ("all", "cases", "mpt", "properties") + SWEEPS

CASE_SETTINGS = SolverSettings(picard_tol=1e-12, picard_max_iter=500,
    linear_solver="direct")
PERMUTATION_SETTINGS = OptimizerSettings(max_iter=60, filter_radius=0.0)


@dataclass(frozen=True)
class VerificationCase:
    """
    One analytic comparison. parameters holds the layout (xi, k1, k2 and
    r_i, r_o for radial cases) and the boundary data (p_in, p_out, v_in).
    """
    case_id: str
    geometry: str
    model: object
    driving: Driving
    parameters: dict
    tolerance: float
    ladder: tuple

    def __post_init__(self):
        if not self.tolerance > 0:
            raise DomainError("case %r: tolerance must be positive" %
                (self.case_id,))
        ladder = tuple(int(n) for n in self.ladder)
        if not ladder or any(b <= a for a, b in zip(ladder, ladder[1:])):
            raise DomainError("case %r: grid ladder must strictly refine, "
                "got %r" % (self.case_id, ladder))
        object.__setattr__(self, "ladder", ladder)
        object.__setattr__(self, "driving", Driving.parse(self.driving))

    def extents(self):
        if self.geometry == INTERVAL_1D:
            return (0.0, 1.0)
        return (self.parameters["r_i"], self.parameters.get("r_o", 1.0))

    def oracle(self):
        """The closed-form solution this case is checked against."""
        prm = self.parameters
        xi, k1, k2 = prm["xi"], prm["k1"], prm["k2"]
        p_out = prm.get("p_out", 0.0)
        if self.geometry == INTERVAL_1D:
            return analytic.solve_1d(self.model, self.driving,
                analytic.InterfaceLayout1D(xi, k1, k2),
                p_left=prm.get("p_in", 1.0), p_right=p_out,
                v_left=prm.get("v_in", 1.0))
        if self.geometry == RADIAL_CYLINDRICAL:
            layout = analytic.AnnulusLayout(prm["r_i"], prm["r_o"], xi, k1, k2)
            return analytic.solve_annulus(layout, self.driving,
                p_i=prm.get("p_in"), p_o=p_out, v_o=prm.get("v_in"),
                mu=self.model.mu0, model=self.model)
        layout = analytic.ShellLayout(prm["r_i"], xi, k1, k2)
        return analytic.solve_sphere(layout, self.driving,
            p_i=prm.get("p_in", 1.0), p_o=p_out, v_o=prm.get("v_in"),
            model=self.model)

    def conditions(self):
        inner, outer = ("left", "right") if self.geometry == INTERVAL_1D \
            else ("inner", "outer")
        p_out = PrescribedPressure(self.parameters.get("p_out", 0.0))
        if self.driving is Driving.PRESSURE_DRIVEN:
            return {inner: PrescribedPressure(self.parameters["p_in"]),
                outer: p_out}
        return {inner: PrescribedNormalVelocity(-self.parameters["v_in"]),
            outer: p_out}


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    levels: tuple
    l2_errors: tuple
    max_errors: tuple
    phi_errors: tuple
    order: float
    passed: bool
    reason: str = ""

    @property
    def order_label(self):
        return "n/a" if self.order is None else "%.3f" % self.order


@dataclass(frozen=True)
class PropertyResult:
    name: str
    samples: int
    violations: int
    worst_margin: float
    violating_sample: str = ""

    @property
    def passed(self):
        return self.violations == 0


@dataclass(frozen=True)
class MptEntry:
    entry_id: str
    label: str
    a1: float
    predicted_a1: float
    a2: float
    psi: float
    passed: bool


@dataclass
class VerificationReport:
    suite: str
    seed: int
    generator: str = GENERATOR
    cases: list = field(default_factory=list)
    properties: list = field(default_factory=list)
    mpt: list = field(default_factory=list)

    @property
    def passed(self):
        return (all(c.passed for c in self.cases) and
            all(p.passed for p in self.properties) and
            all(m.passed for m in self.mpt))

    def failures(self):
        names = [c.case_id for c in self.cases if not c.passed]
        names += [p.name for p in self.properties if not p.passed]
        names += [m.entry_id for m in self.mpt if not m.passed]
        return names

    def summary_lines(self):
        lines = ["suite: %s" % self.suite, "seed: %d" % self.seed,
            "generator: %s" % self.generator]
        for case in self.cases:
            lines.append("case %s: %s (finest L2 error %r, order %s)%s" % (
                case.case_id, "pass" if case.passed else "FAIL",
                case.l2_errors[-1] if case.l2_errors else None,
                case.order_label, " " + case.reason if case.reason else ""))
        for prop in self.properties:
            lines.append("property %s: %s (%d samples, %d violations, worst "
                "margin %r)" % (prop.name, "pass" if prop.passed else "FAIL",
                prop.samples, prop.violations, prop.worst_margin))
        for entry in self.mpt:
            lines.append("mpt %s/%s: %s (a1 %r, predicted %r)" % (
                entry.entry_id, entry.label,
                "pass" if entry.passed else "FAIL", entry.a1,
                entry.predicted_a1))
        lines.append("result: %s" % ("pass" if self.passed else "FAIL"))
        return lines


def default_cases():
    slab = {"xi": 0.25, "k1": 10.0, "k2": 1.0, "p_in": 1.0, "p_out": 0.0,
        "v_in": 1.0}
    ladder = (64, 128, 256)
    annulus = {"r_i": 0.1, "r_o": 1.0, "xi": 0.55, "k1": 10.0, "k2": 1.0,
        "p_in": 100.0, "p_out": 1.0, "v_in": 1.0}
    shell = {"r_i": 0.1, "xi": 0.55, "k1": 10.0, "k2": 1.0, "p_in": 1.0,
        "p_out": 0.0, "v_in": 1.0}
    P = Driving.PRESSURE_DRIVEN
    V = Driving.VELOCITY_DRIVEN
    cases = [
        VerificationCase("1d-darcy-pressure", INTERVAL_1D, Darcy(), P, slab,
            1e-6, ladder),
        VerificationCase("1d-barus-pressure", INTERVAL_1D, Barus(0.5), P,
            slab, 1e-4, ladder),
        VerificationCase("1d-linbarus-pressure", INTERVAL_1D,
            LinearizedBarus(0.5), P, slab, 1e-4, ladder),
        VerificationCase("1d-df-pressure", INTERVAL_1D, DarcyForchheimer(1.0),
            P, slab, 1e-6, ladder),
        VerificationCase("1d-darcy-velocity", INTERVAL_1D, Darcy(), V, slab,
            1e-6, ladder),
        VerificationCase("1d-linbarus-velocity", INTERVAL_1D,
            LinearizedBarus(0.5), V, slab, 1e-4, ladder),
        VerificationCase("1d-df-velocity", INTERVAL_1D, DarcyForchheimer(0.5),
            V, slab, 1e-6, ladder),
        VerificationCase("1d-degenerate", INTERVAL_1D, Darcy(), P,
            dict(slab, xi=0.3, k1=1.0, k2=1.0), 1e-10, ladder),
        VerificationCase("annulus-darcy", RADIAL_CYLINDRICAL, Darcy(), P,
            annulus, 1e-8, ladder),
        VerificationCase("annulus-barus", RADIAL_CYLINDRICAL, Barus(0.01), P,
            annulus, 1e-4, ladder),
        VerificationCase("annulus-velocity", RADIAL_CYLINDRICAL, Darcy(), V,
            annulus, 1e-8, ladder),
        VerificationCase("sphere-darcy", RADIAL_SPHERICAL, Darcy(), P, shell,
            1e-8, ladder),
    ]
    return cases


def richardson_order(values, ratio=2.0):
    """Observed order from the three finest values, or None."""
    if len(values) < 3:
        return None
    a, b, c = values[-3:]
    coarse = abs(a - b)
    fine = abs(b - c)
    scale = max(abs(c), 1e-300)
    if fine <= ROUNDOFF*scale or coarse <= ROUNDOFF*scale:
        return None
    return float(np.log(coarse/fine)/np.log(ratio))


def _relative_l2(values, reference, weights):
    diff = np.sqrt(np.sum(weights*(values - reference)**2))
    scale = np.sqrt(np.sum(weights*reference**2))
    return float(diff/scale) if scale > 0 else float(diff)


def run_case(case):
    """Solve the case on every ladder level and compare with its oracle."""
    try:
        oracle = case.oracle()
    except PorehoundError as e:
        return CaseResult(case.case_id, case.ladder, (), (), (), None, False,
            "oracle failed: %s" % e)
    prm = case.parameters
    l2, mx, phi_err, phis = [], [], [], []
    for cells in case.ladder:
        grid = StructuredGrid(case.geometry, cells, [case.extents()])
        k = grid.layered_permeability(prm["xi"], prm["k1"], prm["k2"])
        try:
            flow = solve_flow(grid, k, case.model, case.conditions(),
                settings=CASE_SETTINGS)
        except PorehoundError as e:
            return CaseResult(case.case_id, case.ladder, tuple(l2), tuple(mx),
                tuple(phi_err), None, False, "solver failed: %s" % e)
        exact = oracle.pressure(grid.centers[0])
        l2.append(_relative_l2(flow.pressure, exact, grid.cell_volumes))
        mx.append(float(np.max(np.abs(flow.pressure - exact))/
            max(np.max(np.abs(exact)), 1e-300)))
        phi = total_dissipation(grid, k, case.model, flow)
        phis.append(phi)
        phi_err.append(relative_error(phi, oracle.phi))
    order = richardson_order(phis)
    passed = l2[-1] <= case.tolerance
    logger.info("case %s: finest L2 error %.3e, order %s, %s", case.case_id,
        l2[-1], "n/a" if order is None else "%.3f" % order,
        "pass" if passed else "FAIL")
    return CaseResult(case.case_id, case.ladder, tuple(l2), tuple(mx),
        tuple(phi_err), order, passed)


def run_cases(cases=None, workers=None):
    cases = default_cases() if cases is None else list(cases)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(run_case, cases))
    return sorted(results, key=lambda r: r.case_id)


def _edge_samples():
    """Endpoints and the near-degenerate annulus, always swept."""
    thin = 1.0 - 1e-9
    return [(0.0, 0.1, 1.0), (1.0, 0.1, 1.0), (0.5, thin, 1.0),
        (0.0, thin, 1.0), (1.0, thin, 1.0)]


def _radii_samples(rng, n):
    gamma = rng.random(n)
    r_o = rng.uniform(0.5, 2.0, n)
    r_i = (1.0 - rng.random(n))*r_o
    # keep r_i strictly inside
    r_i = np.minimum(r_i, (1.0 - 1e-12)*r_o)
    return list(zip(gamma, r_i, r_o))


def _sweep(name, samples, margin_of):
    violations = 0
    worst = np.inf
    violating = ""
    for sample in samples:
        margin = margin_of(*sample)
        if margin < worst:
            worst = margin
        if margin < -SWEEP_TOL:
            violations += 1
            if not violating:
                violating = repr(tuple(np.asarray(v, dtype=float).tolist()
                    for v in sample))
    logger.info("property %s: %d samples, %d violations", name, len(samples),
        violations)
    return PropertyResult(name, len(samples), violations, float(worst),
        violating)


def proposition_sweep(rng, n_samples):
    """Υ⁽¹⁾min <= Υ⁽²⁾min over random (γ, r_i, r_o, kL <= kH)."""
    radii = _edge_samples() + _radii_samples(rng, n_samples)
    k_low = rng.uniform(0.1, 1.0, len(radii))
    k_high = k_low*rng.uniform(1.0, 100.0, len(radii))
    samples = [r + (kl, kh) for r, kl, kh in zip(radii, k_low, k_high)]

    def margin(gamma, r_i, r_o, kl, kh):
        opt = analytic.optimal_interface_2d(gamma, r_i, r_o, kl, kh)
        scale = abs(opt.inner_value) + abs(opt.outer_value)
        return (opt.outer_value - opt.inner_value)/scale if scale else 0.0
    return _sweep("proposition", samples, margin)


def lemma_sweep(rng, n_samples):
    samples = [(g, r_i) for g, r_i, _ in _edge_samples()]
    samples += list(zip(rng.random(n_samples), 1.0 - rng.random(n_samples)))
    return _sweep("lemma", samples, analytic.lemma_gap)


def amgm_sweep(rng, n_samples):
    """ξ̂⁽¹⁾·ξ̂⁽²⁾ >= r_i·r_o."""
    samples = _edge_samples() + _radii_samples(rng, n_samples)

    def margin(gamma, r_i, r_o):
        opt = analytic.optimal_interface_2d(gamma, r_i, r_o)
        return opt.xi_hat*opt.xi_hat_outer/(r_i*r_o) - 1.0
    return _sweep("amgm", samples, margin)


def drag_sweep(rng, n_samples):
    """Reductions at zero coefficients, partials against differences, and
    monotonicity, as one property with the worst margin over all three."""
    n = max(int(n_samples), 1)
    k = rng.uniform(0.1, 10.0, n)
    p = rng.uniform(-0.5, 2.0, n)
    s = rng.uniform(0.0, 3.0, n)
    beta = rng.uniform(0.0, 1.0, n)
    base = drag(Darcy(), k, s, p).alpha
    margins = []
    for model in (Barus(0.0), LinearizedBarus(0.0), DarcyForchheimer(0.0)):
        alpha = drag(model, k, s, p).alpha
        margins.append(-np.abs(alpha - base)/base)
    for index in range(n):
        models = (Barus(beta[index]), LinearizedBarus(beta[index]),
            DarcyForchheimer(beta[index]))
        for model in models:
            ev = drag(model, k[index], s[index], p[index])
            hp = 1e-6*max(1.0, abs(p[index]))
            hs = 1e-6*max(1.0, s[index])
            fd_p = (drag(model, k[index], s[index], p[index] + hp).alpha -
                drag(model, k[index], s[index], p[index] - hp).alpha)/(2*hp)
            fd_s = (drag(model, k[index], s[index] + hs, p[index]).alpha -
                drag(model, k[index], s[index] - hs, p[index]).alpha)/(2*hs) \
                if s[index] > hs else ev.d_alpha_d_speed
            err_p = abs(fd_p - ev.d_alpha_d_p)/max(abs(ev.d_alpha_d_p),
                ev.alpha)
            err_s = abs(fd_s - ev.d_alpha_d_speed)/max(
                abs(ev.d_alpha_d_speed), ev.alpha)
            # shift so that the partial tolerance maps to zero margin
            margins.append(np.array([PARTIAL_TOL - max(err_p, err_s) -
                SWEEP_TOL]))
            margins.append(np.array([min(ev.d_alpha_d_p, ev.d_alpha_d_speed)]))
    flat = np.concatenate([np.atleast_1d(m) for m in margins])
    violations = int(np.count_nonzero(flat < -SWEEP_TOL))
    logger.info("property drag: %d samples, %d violations", n, violations)
    return PropertyResult("drag", n, violations, float(flat.min()))


def permutation_sweep(rng, n_samples, cells=64, gamma=0.3):
    """
    Φ of the thresholded 1D pressure-driven optimum does not depend on where
    its high-permeability cells sit. The optimizer starts from a random
    layout under the volume bound; a uniform start stays uniform.
    """
    grid = StructuredGrid(INTERVAL_1D, cells, [(0.0, 1.0)])
    bcs = {"left": PrescribedPressure(1.0), "right": PrescribedPressure(0.0)}
    model = Darcy()
    design = DesignProblem(grid, bcs, gamma, settings=PERMUTATION_SETTINGS,
        solver_settings=CASE_SETTINGS)
    start = rng.random(cells)
    start = np.clip(gamma*start/start.mean(), 0.0, 1.0)*(1.0 - 1e-9)
    state = optimize(design, start, model)
    layout = (state.physical.rho >= 0.5).astype(float)
    logger.debug("permutation: optimum has %d of %d cells high after %d "
        "iterations", np.count_nonzero(layout), cells, state.iteration)

    def phi_of(layout):
        k = design.k_low + (design.k_high - design.k_low)*layout
        flow = solve_flow(grid, k, model, bcs, settings=CASE_SETTINGS)
        return total_dissipation(grid, k, model, flow)

    reference = phi_of(layout)
    samples = [rng.permutation(layout) for _ in
        range(min(int(n_samples), PERMUTATION_SAMPLES))]

    def margin(permuted):
        return PERMUTATION_TOL - relative_error(phi_of(permuted),
            reference) - SWEEP_TOL
    return _sweep("permutation", [(s,) for s in samples], margin)



def run_property_sweeps(seed, n_samples, names=SWEEPS):
    """Run the named sweeps with one PCG64 generator seeded by seed."""
    if n_samples < 1:
        raise DomainError("n_samples must be at least 1, got %r" %
            (n_samples,))
    rng = np.random.Generator(np.random.PCG64(seed))
    sweeps = {"proposition": proposition_sweep, "lemma": lemma_sweep,
        "amgm": amgm_sweep, "drag": drag_sweep,
        "permutation": permutation_sweep}
    results = [sweeps[name](rng, n_samples) for name in SWEEPS
        if name in names]
    return sorted(results, key=lambda r: r.name)


def _channel_2d(cells=16):
    grid = StructuredGrid(CARTESIAN_2D, (cells, cells), [(0.0, 1.0),
        (0.0, 1.0)])
    bcs = {"left": PrescribedPressure(1.0), "right": PrescribedPressure(0.0),
        "bottom": PrescribedNormalVelocity(0.0),
        "top": PrescribedNormalVelocity(0.0)}
    return grid, bcs


def mpt_passed(result):
    """
    Stationary when the predicted first-order term vanishes; otherwise the
    fitted term must match the prediction and a falsifying step must exist.
    """
    scale = abs(result.psi) or 1.0
    if abs(result.predicted_a1) <= STATIONARY_TOL*scale:
        return result.relative_a1 <= STATIONARY_TOL
    return (result.agreement <= AGREEMENT_TOL and
        result.falsifying_epsilon is not None)


def mpt_entries(entry_id, results):
    return [MptEntry(entry_id, r.label, r.a1, r.predicted_a1, r.a2, r.psi,
        mpt_passed(r)) for r in results]


def run_mpt_suite(seed=42):
    """Stationarity for Darcy drag and its failure for Forchheimer drag."""
    rng = np.random.Generator(np.random.PCG64(seed))
    settings = SolverSettings(picard_tol=1e-12, picard_max_iter=500,
        linear_solver="direct")
    entries = []
    slab = StructuredGrid(INTERVAL_1D, 64, [(0.0, 1.0)])
    slab_bcs = {"left": PrescribedPressure(1.0),
        "right": PrescribedPressure(0.0)}
    slab_k = slab.layered_permeability(0.3, 10.0, 1.0)
    square, square_bcs = _channel_2d()
    square_k = 1.0 + 9.0*rng.random(square.ncells)
    runs = [
        ("slab-darcy", Darcy(), slab, slab_bcs, slab_k,
            [flux_perturbation(slab, slab_bcs)]),
        ("slab-df", DarcyForchheimer(1.0), slab, slab_bcs, slab_k,
            [flux_perturbation(slab, slab_bcs)]),
        ("square-darcy", Darcy(), square, square_bcs, square_k,
            default_perturbations(square, square_bcs, 6)),
        ("square-df", DarcyForchheimer(1.0), square, square_bcs, square_k,
            [through_flow_perturbation(square, square_bcs, 0.5)]),
    ]
    for entry_id, model, grid, bcs, k, perturbations in runs:
        flow = solve_flow(grid, k, model, bcs, settings=settings)
        results = mpt_stationarity_check(model, flow, perturbations,
            permeability=k, bcs=bcs)
        entries.extend(mpt_entries(entry_id, results))
    return sorted(entries, key=lambda e: (e.entry_id, e.label))


def run_suite(suite="all", seed=42, n_samples=10000, workers=None):
    if suite not in SUITES:
        raise DomainError("unknown suite %r; choose from %s" %
            (suite, ", ".join(SUITES)))
    report = VerificationReport(suite, int(seed))
    if suite in ("all", "cases"):
        report.cases = run_cases(workers=workers)
    if suite in ("all", "properties"):
        report.properties = run_property_sweeps(seed, n_samples)
    elif suite in SWEEPS:
        report.properties = run_property_sweeps(seed, n_samples, (suite,))
    if suite in ("all", "mpt"):
        report.mpt = run_mpt_suite(seed)
    return report
