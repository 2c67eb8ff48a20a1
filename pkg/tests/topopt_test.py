# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import numpy as np
import pytest

from porehound import topopt as t
from porehound.benchmarks import benchmark
from porehound.conditions import Direction, PrescribedNormalVelocity
from porehound.drag import cell_velocity
from porehound.errors import DomainError, InfeasibleDesignError
from porehound.material import Barus, Darcy, DarcyForchheimer
from .testutils import eq_, close_, gt_, gte_, lt_, lte_
from . import mock_objects


def _random_rho(n, seed=5):
    return 0.2 + 0.6*np.random.default_rng(seed).random(n)


def _finite_difference(problem, model, rho, cells, h=1e-5):
    evaluator = t.DesignEvaluator(problem, model)
    fd = []
    for i in cells:
        up = rho.copy()
        up[i] += h
        down = rho.copy()
        down[i] -= h
        fd.append((evaluator.objective(up)[0] -
            evaluator.objective(down)[0])/(2*h))
    return np.array(fd)


class TestSettings(object):
    def test_validation(self):
        for bad in (dict(max_iter=0), dict(move=0.0), dict(eta=0.0),
                dict(filter_radius=-1.0), dict(rho_min=1.0),
                dict(max_halvings=-1), dict(tol=0.0), dict(penal_step=0.0),
                dict(penal_max=0.5), dict(continuation_tol=0.0),
                dict(continuation_iter=0)):
            with pytest.raises(DomainError):
                t.OptimizerSettings(**bad)


class TestPenalTarget(object):
    def problem(self, k_high=10.0, penal=3.0, **settings):
        return t.DesignProblem(mock_objects.slab(4), mock_objects.slab_bcs(),
            0.5, k_high=k_high, penal=penal,
            settings=t.OptimizerSettings(**settings))

    def test_follows_permeability_ratio(self):
        close_(self.problem().penal_target, 12.0)
        close_(self.problem(k_high=2.0).penal_target, 3.0)
        close_(self.problem(k_high=1000.0).penal_target, t.PENAL_CAP)

    def test_explicit_maximum(self):
        close_(self.problem(penal_max=8.0).penal_target, 8.0)
        close_(self.problem(penal=9.0, penal_max=8.0).penal_target, 9.0)

    def test_without_continuation(self):
        close_(self.problem(continuation=False).penal_target, 3.0)

    def test_density_field_exponent(self):
        problem = self.problem()
        eq_(problem.density_field(np.full(4, 0.5)).penal, 3.0)
        eq_(problem.density_field(np.full(4, 0.5), penal=7.5).penal, 7.5)


class TestDesignProblem(object):
    def setup_method(self):
        self.problem = mock_objects.slab_design_problem(10)

    def test_defaults(self):
        eq_(self.problem.direction, Direction.MAXIMIZE)
        close_(self.problem.measure, 1.0)
        close_(self.problem.volume_bound, 0.4)
        close_(self.problem.volume_fraction(self.problem.uniform()), 0.4)

    def test_velocity_driven_minimizes(self):
        problem = t.DesignProblem(mock_objects.slab(4),
            mock_objects.slab_velocity_bcs(), 0.5)
        eq_(problem.direction, Direction.MINIMIZE)

    def test_unfiltered_physical_densities(self):
        rho = _random_rho(10)
        close_(self.problem.physical(rho), rho)

    def test_bounds_are_checked(self):
        grid = mock_objects.slab(4)
        with pytest.raises(DomainError):
            t.DesignProblem(grid, mock_objects.slab_bcs(), 1.5)
        with pytest.raises(DomainError):
            t.DesignProblem(grid, mock_objects.slab_bcs(), 0.5, k_low=2.0,
                k_high=1.0)

    def test_pinned_cells_are_passive(self):
        grid = mock_objects.slab(4)
        pinned = np.array([np.nan, np.nan, np.nan, 0.0])
        bcs = {"left": PrescribedNormalVelocity(-1.0),
            "right": PrescribedNormalVelocity(0.0)}
        problem = t.DesignProblem(grid, bcs, 0.5, pinned=pinned,
            passive_rho=0.0)
        close_(problem.measure, 0.75)
        close_(problem.uniform(), [0.5, 0.5, 0.5, 0.0])
        flow = problem.flow_solver(Darcy()).solve(np.ones(4))
        close_(flow.pressure[3], 0.0)
        close_(flow.face_flux[:4], np.ones(4))


class TestGradient(object):
    def check(self, problem, model, cells):
        rho = _random_rho(problem.grid.ncells)
        phi, gradient = t.objective_and_gradient(problem, rho, model)
        fd = _finite_difference(problem, model, rho, cells)
        close_(gradient[cells], fd, rtol=1e-4, atol=1e-9)

    def test_darcy_slab(self):
        self.check(mock_objects.slab_design_problem(12), Darcy(), [0, 5, 11])

    def test_barus_slab(self):
        self.check(mock_objects.slab_design_problem(12), Barus(1.0),
            [0, 5, 11])

    def test_forchheimer_slab(self):
        self.check(mock_objects.slab_design_problem(12), DarcyForchheimer(2.0),
            [0, 5, 11])

    def test_darcy_channel_with_filter(self):
        self.check(mock_objects.channel_design_problem(6), Darcy(),
            [0, 14, 35])

    def test_forchheimer_channel(self):
        self.check(mock_objects.channel_design_problem(6),
            DarcyForchheimer(1.0), [3, 20])

    def test_lagged_matches_exact_for_darcy(self):
        problem = mock_objects.slab_design_problem(12)
        rho = _random_rho(12)
        _, exact = t.objective_and_gradient(problem, rho, Darcy())
        _, lagged = t.objective_and_gradient(problem, rho, Darcy(),
            lagged=True)
        close_(lagged, exact)


class TestGradientOnRectangle(object):
    def setup_method(self):
        problem = benchmark("rect-pressure-q0", (32, 24))
        self.model = problem.model
        self.problem = problem.design_problem(
            solver_settings=mock_objects.tight_settings())
        self.rho = _random_rho(problem.grid.ncells, seed=11)
        self.cells = np.random.default_rng(12).choice(problem.grid.ncells,
            10, replace=False)

    def check(self, model, rtol):
        _, gradient = t.objective_and_gradient(self.problem, self.rho, model)
        fd = _finite_difference(self.problem, model, self.rho, self.cells,
            h=1e-4)
        close_(gradient[self.cells], fd, rtol=rtol,
            atol=1e-6*np.max(np.abs(gradient)))

    def test_darcy(self):
        self.check(self.model(law="darcy"), 1e-4)

    def test_linearized_barus(self):
        self.check(self.model(betaB=0.1), 1e-3)


class TestGradientSign(object):
    def gradient(self, name):
        problem = benchmark(name, 32)
        design = problem.design_problem(
            settings=t.OptimizerSettings(filter_radius=0.0),
            solver_settings=mock_objects.tight_settings())
        return t.objective_and_gradient(design, design.uniform(),
            problem.model())[1]

    def test_velocity_driven_dissipation_falls(self):
        lt_(np.max(self.gradient("annulus-velocity")), 0.0)

    def test_pressure_driven_dissipation_rises(self):
        gt_(np.min(self.gradient("annulus-radial")), 0.0)

    def test_high_permeability_belongs_inside(self):
        problem = benchmark("annulus-radial", 64)
        design = problem.design_problem(
            settings=t.OptimizerSettings(filter_radius=0.0),
            solver_settings=mock_objects.tight_settings())
        volumes = problem.grid.cell_volumes
        bound = design.volume_bound
        inside = (np.cumsum(volumes) <= bound).astype(float)
        outside = (np.cumsum(volumes[::-1]) <= bound)[::-1].astype(float)
        evaluator = t.DesignEvaluator(design, problem.model())
        gte_(evaluator.objective(inside)[0], evaluator.objective(outside)[0])


class TestOcUpdate(object):
    def setup_method(self):
        self.problem = mock_objects.slab_design_problem(10)
        self.rho = self.problem.uniform()

    def test_step_respects_bounds(self):
        gradient = np.linspace(1.0, 0.1, 10)
        new, bounds = t.oc_update(self.rho, gradient, self.problem)
        lte_(self.problem.volume(new), self.problem.volume_bound + 1e-9)
        lte_(np.max(np.abs(new - self.rho)), 0.2 + 1e-12)
        gt_(new[0], new[-1])
        lte_(bounds[0], bounds[1])

    def test_no_gain_keeps_densities(self):
        new, bounds = t.oc_update(self.rho, -np.ones(10), self.problem)
        close_(new, self.rho)
        eq_(bounds, (0.0, 0.0))


class TestOptimize(object):
    def test_slab_never_regresses(self):
        problem = mock_objects.slab_design_problem(16, max_iter=15)
        calls = []
        state = t.optimize(problem, None, Darcy(), calls.append)
        history = np.array(state.phi_history)
        penals = np.array(state.penal_history)
        eq_(penals.size, history.size)
        same = penals[1:] == penals[:-1]
        gte_(np.min(np.diff(history)[same]), -1e-10*abs(history[0]))
        lte_(max(state.volume_history), 0.4 + 1e-9)
        eq_(state.phi, history[-1])
        iterations = [c.iteration for c in calls]
        eq_(iterations, sorted(set(iterations)))

    def test_continuation_raises_exponent(self):
        problem = mock_objects.slab_design_problem(16, max_iter=30,
            continuation_iter=2, penal_max=6.0)
        state = t.optimize(problem, None, Darcy())
        penals = state.penal_history
        eq_(penals[0], 3.0)
        gte_(min(np.diff(penals)), 0.0)
        eq_(max(penals), 6.0)
        eq_(state.penal, penals[-1])
        eq_(state.physical.penal, state.rho.penal)

    def test_fixed_exponent(self):
        problem = mock_objects.slab_design_problem(16, max_iter=10,
            continuation=False)
        state = t.optimize(problem, None, Darcy())
        eq_(set(state.penal_history), set([3.0]))

    def test_converges_only_at_target(self):
        problem = mock_objects.slab_design_problem(8, max_iter=60)
        state = t.optimize(problem, None, Darcy())
        eq_(state.converged, True)
        close_(state.penal, problem.penal_target)

    def test_full_volume_fills_every_cell(self):
        problem = mock_objects.slab_design_problem(8, gamma=1.0, max_iter=60)
        state = t.optimize(problem, np.full(8, 0.5), Darcy())
        close_(state.rho.rho, 1.0)
        close_(state.physical.rho, 1.0)

    def test_annulus_moves_material_inward(self):
        grid = mock_objects.annulus(30, 0.1, 1.0)
        problem = t.DesignProblem(grid, mock_objects.radial_bcs(), 0.3,
            settings=t.OptimizerSettings(max_iter=40, filter_radius=0.0),
            solver_settings=mock_objects.tight_settings())
        state = t.optimize(problem, None, Darcy())
        rho = state.physical.rho
        gt_(np.mean(rho[:10]), np.mean(rho[-10:]))
        gt_(state.phi, state.phi_history[0])

    def test_infeasible_start(self):
        problem = mock_objects.slab_design_problem(8)
        with pytest.raises(InfeasibleDesignError):
            t.optimize(problem, np.ones(8), Darcy())


class TestRadialOptima(object):
    cells = 256

    def check(self, name):
        problem = benchmark(name, self.cells)
        design = problem.design_problem(
            solver_settings=mock_objects.tight_settings())
        state = t.optimize(design, None, problem.model())
        grid = problem.grid
        low, high = grid.extents[0]
        width = (high - low)/self.cells
        xi = t.interface_location(grid, state.physical)
        lte_(abs(xi - problem.interface_oracle), width)
        gte_(t.binary_fraction(state.physical.rho), 0.95)
        lte_(state.volume_history[-1], problem.gamma + 1e-9)

    def test_annulus_interface(self):
        self.check("annulus-radial")

    def test_sphere_interface(self):
        self.check("sphere-radial")


class TestBarusTrend(object):
    cells = (20, 15)
    settings = t.OptimizerSettings(max_iter=80)

    def optimize(self, name, betaB):
        problem = benchmark(name, self.cells)
        design = problem.design_problem(settings=self.settings,
            solver_settings=mock_objects.tight_settings())
        state = t.optimize(design, None, problem.model(betaB=betaB))
        return problem, state

    def max_speed(self, problem, state):
        velocity = cell_velocity(problem.grid, state.flow.face_velocity)
        return np.max(np.sqrt(np.sum(velocity**2, axis=1)))

    def test_stiffer_drag_lowers_dissipation(self):
        runs = [self.optimize("rect-pressure-q0", b) for b in (0.0, 0.1, 0.75)]
        phis = [state.phi for _, state in runs]
        speeds = [self.max_speed(*run) for run in runs]
        lt_(phis[1], phis[0])
        lt_(phis[2], phis[1])
        lt_(speeds[1], speeds[0])
        lt_(speeds[2], speeds[1])

        layouts = [state.physical.rho for _, state in runs[:2]]
        rng = np.random.default_rng(7)
        gamma = runs[0][0].gamma
        random_layout = (rng.random(layouts[0].size) < gamma).astype(float)
        gt_(t.jaccard(layouts[0], layouts[1]),
            t.jaccard(layouts[0], random_layout))

    def test_source_run_balances_mass(self):
        problem, state = self.optimize("rect-pressure-q10", 0.1)
        grid = problem.grid
        area = np.prod([high - low for low, high in grid.extents])
        close_(state.flow.outflow(), problem.source*area, rtol=1e-8)



class TestLayoutMeasures(object):
    def test_interface_location(self):
        grid = mock_objects.slab(4)
        close_(t.interface_location(grid, [1.0, 1.0, 0.0, 0.0]), 0.5)
        eq_(t.interface_location(grid, np.ones(4)), 1.0)
        eq_(t.interface_location(grid, np.zeros(4)), 0.0)
        with pytest.raises(DomainError):
            t.interface_location(mock_objects.square(2), np.ones(4))

    def test_binary_fraction(self):
        close_(t.binary_fraction([0.0, 0.5, 1.0]), 2/3.0)
        grid = mock_objects.annulus(2, 1.0, 3.0)
        close_(t.binary_fraction([1.0, 0.5], grid=grid), 3.0/8)

    def test_jaccard(self):
        close_(t.jaccard([1, 1, 0], [1, 0, 0]), 0.5)
        eq_(t.jaccard([0, 0], [0, 0]), 1.0)
