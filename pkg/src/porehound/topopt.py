# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

"""
Volume-constrained layout optimization of the total dissipation.

Design densities are filtered, interpolated to permeabilities (SIMP), fed
to the primal solver, and updated by optimality criteria. Maximization runs
as minimization of −Φ. Gradients come from the adjoint of the converged
mixed pressure/face-flux equations.
"""

from dataclasses import dataclass
import logging

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from porehound.conditions import Direction, default_direction
from porehound.drag import drag, total_dissipation
from porehound.errors import (BisectionError, DomainError,
    InfeasibleDesignError)
from porehound.filters.density import DensityFilter
from porehound.material import DensityField
from porehound.primal import FlowSolver, SolverSettings

logger = logging.getLogger(__name__)

# Volume overshoot tolerated, relative to the design measure.
VOLUME_SLACK = 1e-12
# Relative objective increase still treated as no regression.
REGRESSION_TOL = 1e-12
LAMBDA_EXPANSIONS = 60
BISECTION_TOL = 1e-6
BISECTION_MAX = 200
# Automatic continuation target: a margin over kH/kL, where a solid
# layout starts to beat every intermediate density, capped.
PENAL_MARGIN = 1.2
PENAL_CAP = 16.0


@dataclass(frozen=True)
class OptimizerSettings:
    max_iter: int = 200
    move: float = 0.2
    eta: float = 0.5
    filter_radius: float = 1.5
    tol: float = 1e-3
    rho_min: float = 1e-3
    max_halvings: int = 10
    lagged_adjoint: bool = False
    continuation: bool = True
    penal_step: float = 1.5
    penal_max: float = None
    continuation_tol: float = 1e-2
    continuation_iter: int = 20

    def __post_init__(self):
        if self.max_iter < 1:
            raise DomainError("max_iter must be at least 1")
        if not (0 < self.move <= 1):
            raise DomainError("move limit must lie in (0, 1], got %r" %
                (self.move,))
        if not self.eta > 0:
            raise DomainError("eta must be positive")
        if self.filter_radius < 0:
            raise DomainError("filter radius must be nonnegative")
        if not self.tol > 0:
            raise DomainError("tolerance must be positive")
        if not (0 < self.rho_min < 1):
            raise DomainError("rho_min must lie in (0, 1)")
        if self.max_halvings < 0:
            raise DomainError("max_halvings must be nonnegative")
        if not self.penal_step > 0:
            raise DomainError("penal_step must be positive")
        if self.penal_max is not None and self.penal_max < 1:
            raise DomainError("penal_max must be >= 1, got %r" %
                (self.penal_max,))
        if not self.continuation_tol > 0:
            raise DomainError("continuation_tol must be positive")
        if self.continuation_iter < 1:
            raise DomainError("continuation_iter must be at least 1")


class DesignProblem(object):
    """
    Everything that defines one layout optimization except the drag law.

    pinned is None or a per-cell array of prescribed pressures (NaN where
    free); pinned cells are not designed, hold passive_rho, and are left out
    of the objective and the volume measure.
    """

    def __init__(self, grid, bcs, gamma, direction=None, source=0.0,
            k_low=1.0, k_high=10.0, penal=3.0, settings=None,
            solver_settings=None, body_force=None, pinned=None,
            passive_rho=1.0):
        super(DesignProblem, self).__init__()
        if not (0.0 <= gamma <= 1.0):
            raise DomainError("volume bound must lie in [0, 1], got %r" %
                (gamma,))
        if not (0 < k_low <= k_high):
            raise DomainError("need 0 < kL <= kH, got %r, %r" %
                (k_low, k_high))
        if penal < 1:
            raise DomainError("penal must be >= 1, got %r" % (penal,))
        self.grid = grid
        self.bcs = dict(bcs)
        self.gamma = float(gamma)
        if direction is None:
            direction = default_direction(self.bcs)
        self.direction = Direction.parse(direction)
        self.source = source
        self.k_low = float(k_low)
        self.k_high = float(k_high)
        self.penal = float(penal)
        self.settings = settings or OptimizerSettings()
        self.solver_settings = solver_settings or SolverSettings()
        self.body_force = body_force
        if pinned is None:
            pinned = np.full(grid.ncells, np.nan)
        self.pinned = grid.check_cell_field(pinned, "pinned")
        self.design = np.isnan(self.pinned)
        self.passive_rho = float(passive_rho)
        self._filter = None

    @property
    def measure(self):
        return float(np.sum(self.grid.cell_volumes[self.design]))

    @property
    def volume_bound(self):
        return self.gamma*self.measure

    @property
    def density_filter(self):
        if self._filter is None:
            self._filter = DensityFilter.in_cell_widths(self.grid,
                self.settings.filter_radius)
        return self._filter

    def volume(self, rho):
        rho = self.grid.check_cell_field(rho, "density")
        return float(np.sum(self.grid.cell_volumes[self.design]*
            rho[self.design]))

    def volume_fraction(self, rho):
        if self.measure == 0:
            return 0.0
        return self.volume(rho)/self.measure

    def with_passive(self, rho):
        rho = np.array(self.grid.check_cell_field(rho, "density"))
        rho[~self.design] = self.passive_rho
        return rho

    def physical(self, rho):
        """Filtered densities with the passive cells restored."""
        filtered = self.density_filter.apply(self.with_passive(rho))
        filtered[~self.design] = self.passive_rho
        return filtered

    @property
    def penal_target(self):
        """
        Exponent the optimizer ends at. Without continuation this is penal.
        """
        settings = self.settings
        if not settings.continuation:
            return self.penal
        if settings.penal_max is not None:
            return max(self.penal, float(settings.penal_max))
        ratio = self.k_high/self.k_low
        return max(self.penal, min(PENAL_CAP, PENAL_MARGIN*ratio))

    def density_field(self, rho, penal=None):
        penal = self.penal if penal is None else penal
        return DensityField(self.physical(rho), self.k_low, self.k_high,
            penal)

    def uniform(self, value=None):
        value = self.gamma if value is None else value
        return self.with_passive(np.full(self.grid.ncells, float(value)))

    def flow_solver(self, model):
        pinned = self.pinned if np.any(~self.design) else None
        return FlowSolver(self.grid, model, self.bcs, self.source,
            self.solver_settings, self.body_force, pinned)


@dataclass(frozen=True, eq=False)
class DesignEvaluation:
    phi: float
    gradient: np.ndarray
    flow: object
    field: DensityField


def _velocity_operators(grid):
    """Per-axis cell velocity as operators acting on face fluxes."""
    inverse_area = sp.diags(1.0/grid.face_area)
    return [avg.dot(inverse_area).tocsr() for avg in grid.averaging]


def dissipation_sensitivity(solver, permeability, flow, mask=None,
        lagged=False):
    """
    dΦ/dk per cell by the adjoint of the converged equations

        continuity  D·F − Q·vol = 0     (pinned cells: p − p0 = 0)
        flux law    F·r(α) − Δp − b·d = 0   (velocity faces: F − F_bc = 0)

    in the unknowns (p, F). lagged drops the ∂α/∂p and ∂α/∂|v| couplings
    from the adjoint operator.
    """
    grid = solver.grid
    nc = grid.ncells
    k = grid.check_cell_field(permeability, "permeability")
    p = flow.pressure
    F = flow.face_flux
    ones = np.ones(nc)
    weight = grid.cell_volumes.copy()
    if mask is not None:
        weight = weight*grid.check_cell_field(mask, "mask")

    ops = _velocity_operators(grid)
    parts = [op.dot(F) for op in ops]
    speed = np.sqrt(np.sum(np.square(parts), axis=0))
    moving = speed > 0
    safe = np.where(moving, speed, 1.0)
    unit = [np.where(moving, u/safe, 0.0) for u in parts]

    evaluation = drag(solver.model, k, speed, p)
    alpha = evaluation.alpha*ones
    dadp = evaluation.d_alpha_d_p*ones
    dads = evaluation.d_alpha_d_speed*ones

    # objective partials
    g_p = weight*dadp*speed**2
    g_F = np.zeros(grid.nfaces)
    for op, u, e in zip(ops, parts, unit):
        g_F += op.T.dot(weight*(2.0*alpha*u + dads*speed**2*e))
    g_k = -weight*alpha*speed**2/k

    speed_jacobian = sp.csr_matrix((nc, grid.nfaces))
    for op, e in zip(ops, unit):
        speed_jacobian = speed_jacobian + sp.diags(e).dot(op)

    Rg = grid.resistance
    D = grid.divergence
    pf = solver.pressure_face.astype(float)
    vf = solver.velocity_face.astype(float)
    r = Rg.dot(alpha)
    flux_rows = sp.diags(F*pf).dot(Rg)
    if lagged:
        dadp = np.zeros(nc)
        dads = np.zeros(nc)
    J_cp = sp.diags(solver.pinned.astype(float))
    J_cF = sp.diags(solver.free.astype(float)).dot(D)
    J_fp = flux_rows.dot(sp.diags(dadp)) - sp.diags(pf).dot(D.T)
    J_fF = (sp.diags(r*pf + vf) +
        flux_rows.dot(sp.diags(dads)).dot(speed_jacobian))
    J = sp.bmat([[J_cp, J_cF], [J_fp, J_fF]], format="csc")
    adjoint = spla.spsolve(J.T.tocsc(), np.concatenate([g_p, g_F]))
    dR_dk = flux_rows.dot(sp.diags(-alpha/k))
    return g_k - dR_dk.T.dot(adjoint[nc:])


class DesignEvaluator(object):
    """Φ and dΦ/dρ for one problem and drag law."""

    def __init__(self, problem, model, lagged=None):
        super(DesignEvaluator, self).__init__()
        self.problem = problem
        self.model = model
        self.solver = problem.flow_solver(model)
        if lagged is None:
            lagged = problem.settings.lagged_adjoint
        self.lagged = lagged

    def objective(self, rho, warm_start=None, penal=None):
        problem = self.problem
        field = problem.density_field(rho, penal)
        k = field.permeability()
        flow = self.solver.solve(k, warm_start)
        return total_dissipation(problem.grid, k, self.model, flow,
            mask=problem.design), flow

    def evaluate(self, rho, warm_start=None, penal=None):
        problem = self.problem
        field = problem.density_field(rho, penal)
        k = field.permeability()
        flow = self.solver.solve(k, warm_start)
        phi = total_dissipation(problem.grid, k, self.model, flow,
            mask=problem.design)
        dk = dissipation_sensitivity(self.solver, k, flow, problem.design,
            self.lagged)
        d_physical = np.where(problem.design,
            dk*field.permeability_derivative(), 0.0)
        gradient = problem.density_filter.gradient(d_physical)
        gradient[~problem.design] = 0.0
        return DesignEvaluation(phi, gradient, flow, field)


def objective_and_gradient(problem, rho, model, lagged=None,
        warm_start=None):
    evaluation = DesignEvaluator(problem, model, lagged).evaluate(rho,
        warm_start)
    return evaluation.phi, evaluation.gradient


def oc_update(rho, gradient, problem):
    """
    One optimality-criteria step. Returns the new densities and the final
    bracket of the volume multiplier.
    """
    settings = problem.settings
    design = problem.design
    volumes = problem.grid.cell_volumes
    signed = problem.direction.sign*gradient
    gain = np.where(design, np.maximum(-signed, 0.0), 0.0)
    if gain.max() == 0:
        return rho.copy(), (0.0, 0.0)
    gain = gain/gain.max()
    weight = volumes/volumes[design].max()
    lower = np.maximum(rho - settings.move, 0.0)
    upper = np.minimum(rho + settings.move, 1.0)
    base = np.maximum(rho, settings.rho_min)
    limit = problem.volume_bound + VOLUME_SLACK*problem.measure

    def candidate(lam):
        if lam == 0:
            new = np.where(gain > 0, upper, lower)
        else:
            new = np.clip(base*(gain/(lam*weight))**settings.eta, lower,
                upper)
        return np.where(design, new, rho)

    def volume(lam):
        return problem.volume(candidate(lam))

    if volume(0.0) <= limit:
        return candidate(0.0), (0.0, 0.0)
    hi = 1.0
    expansions = 0
    while volume(hi) > limit:
        hi *= 10.0
        expansions += 1
        if expansions > LAMBDA_EXPANSIONS:
            raise BisectionError("no volume multiplier up to %g meets the "
                "volume bound" % hi)
    lo = hi
    while volume(lo) <= limit:
        lo /= 10.0
        if lo < 1e-300:
            return candidate(lo*10.0), (0.0, lo*10.0)
    for _ in range(BISECTION_MAX):
        if abs(volume(hi) - problem.volume_bound) <= \
                BISECTION_TOL*max(problem.volume_bound, VOLUME_SLACK):
            break
        if hi/lo - 1.0 < 1e-14:
            break
        mid = np.sqrt(lo*hi)
        if volume(mid) > limit:
            lo = mid
        else:
            hi = mid
    return candidate(hi), (lo, hi)


@dataclass(frozen=True, eq=False)
class OptimizerState:
    rho: DensityField
    physical: DensityField
    iteration: int
    phi_history: tuple
    volume_history: tuple
    change: float
    lagrange_bounds: tuple
    converged: bool
    stalled: bool
    flow: object
    penal_history: tuple = ()

    @property
    def phi(self):
        return self.phi_history[-1]

    @property
    def penal(self):
        return self.physical.penal


class Optimizer(object):
    """Runs optimality-criteria iterations on a DesignProblem."""

    def __init__(self, problem, model, callback=None):
        super(Optimizer, self).__init__()
        self.problem = problem
        self.model = model
        self.evaluator = DesignEvaluator(problem, model)
        self.callback = callback

    def _start(self, initial_rho):
        problem = self.problem
        if initial_rho is None:
            rho = problem.uniform()
        else:
            rho = problem.with_passive(initial_rho)
        # range check
        DensityField(rho, problem.k_low, problem.k_high, problem.penal)
        if problem.volume(rho) > problem.volume_bound + \
                VOLUME_SLACK*problem.measure:
            raise InfeasibleDesignError("initial volume fraction %.6g exceeds "
                "the bound %.6g" % (problem.volume_fraction(rho),
                problem.gamma))
        return rho

    def _state(self, rho, evaluation, iteration, history, volumes, change,
            bounds, converged, stalled, penals):
        problem = self.problem
        return OptimizerState(
            DensityField(rho, problem.k_low, problem.k_high,
                evaluation.field.penal),
            evaluation.field, iteration, tuple(history), tuple(volumes),
            change, bounds, converged, stalled, evaluation.flow,
            tuple(penals))

    def run(self, initial_rho=None):
        """
        Iterates until the change drops below tol at the target exponent.
        With continuation the exponent starts at problem.penal and rises by
        penal_step whenever a stage settles (change below
        continuation_tol, continuation_iter steps, or no improving step).
        The objective never regresses within one exponent.
        """
        problem = self.problem
        settings = problem.settings
        sign = problem.direction.sign
        target = problem.penal_target
        penal = problem.penal
        rho = self._start(initial_rho)
        current = self.evaluator.evaluate(rho, penal=penal)
        history = [current.phi]
        volumes = [problem.volume_fraction(rho)]
        penals = [penal]
        change = np.inf
        bounds = (0.0, 0.0)
        converged = stalled = raise_next = False
        stage_iter = 0
        iteration = 0
        for iteration in range(1, settings.max_iter + 1):
            if raise_next:
                penal = min(target, penal + settings.penal_step)
                current = self.evaluator.evaluate(rho, current.flow, penal)
                stage_iter = 0
                raise_next = False
                logger.info("iteration %d: penal raised to %g", iteration,
                    penal)
            stage_iter += 1
            proposal, bounds = oc_update(rho, current.gradient, problem)
            step = proposal - rho
            f_old = sign*current.phi
            accepted = None
            for halving in range(settings.max_halvings + 1):
                trial = np.clip(rho + step*0.5**halving, 0.0, 1.0)
                evaluation = self.evaluator.evaluate(trial, current.flow,
                    penal)
                if sign*evaluation.phi <= f_old + REGRESSION_TOL*abs(f_old):
                    accepted = (trial, evaluation)
                    break
                logger.debug("iteration %d: objective regressed, halving step",
                    iteration)
            if accepted is None:
                if penal < target:
                    logger.info("iteration %d: no improving step at penal %g",
                        iteration, penal)
                    raise_next = True
                    continue
                stalled = True
                logger.info("iteration %d: no improving step; stopping",
                    iteration)
                break
            trial, evaluation = accepted
            change = float(np.max(np.abs(trial - rho))) if rho.size else 0.0
            rho, current = trial, evaluation
            history.append(current.phi)
            volumes.append(problem.volume_fraction(rho))
            penals.append(penal)
            logger.info("iteration %d: phi %.10g, volume %.6f, change %.3e, "
                "penal %g", iteration, current.phi, volumes[-1], change, penal)
            if self.callback is not None:
                self.callback(self._state(rho, current, iteration, history,
                    volumes, change, bounds, False, False, penals))
            if penal < target:
                raise_next = (change < settings.continuation_tol or
                    stage_iter >= settings.continuation_iter)
            elif change < settings.tol:
                converged = True
                break
        return self._state(rho, current, iteration, history, volumes, change,
            bounds, converged, stalled, penals)


def optimize(problem, initial_rho, model, callback=None):
    return Optimizer(problem, model, callback).run(initial_rho)


def interface_location(grid, rho, level=0.5):
    """
    First outward crossing of level by the cell densities of a 1D or radial
    grid, interpolated linearly between cell centres. Returns the inner
    (outer) extent when every cell lies below (above) the level.
    """
    if grid.ndim != 1:
        raise DomainError("interface_location needs a 1D or radial grid")
    rho = grid.check_cell_field(getattr(rho, "rho", rho), "density")
    centers = grid.centers[0]
    low, high = grid.extents[0]
    above = rho >= level
    if above.all():
        return float(high)
    if not above.any():
        return float(low)
    flips = np.flatnonzero(above[1:] != above[:-1])
    i = flips[0]
    a, b = rho[i], rho[i + 1]
    t = (level - a)/(b - a)
    return float(centers[i] + t*(centers[i + 1] - centers[i]))


def binary_fraction(rho, low=0.05, high=0.95, grid=None):
    """Share of cells (of the volume, with a grid) outside (low, high)."""
    rho = np.asarray(getattr(rho, "rho", rho), dtype=float).ravel()
    binary = (rho <= low) | (rho >= high)
    if grid is None:
        return float(np.mean(binary)) if rho.size else 1.0
    volumes = grid.cell_volumes
    return float(np.sum(volumes[binary])/np.sum(volumes))


def jaccard(a, b, threshold=0.5):
    """Overlap |A ∩ B| / |A ∪ B| of two thresholded layouts."""
    a = np.asarray(getattr(a, "rho", a), dtype=float).ravel() >= threshold
    b = np.asarray(getattr(b, "rho", b), dtype=float).ravel() >= threshold
    union = np.count_nonzero(a | b)
    if union == 0:
        return 1.0
    return np.count_nonzero(a & b)/float(union)
