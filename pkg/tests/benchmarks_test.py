# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import numpy as np
import pytest

from porehound import benchmarks as b
from porehound.analytic import optimal_interface_2d, optimal_interface_3d
from porehound.errors import ConfigError
from porehound.material import Darcy, DragLaw
from porehound.primal import solve_flow
from .testutils import eq_, close_, gt_, includes_

SMALL = {
    "channel-1d": 16,
    "annulus-radial": 16,
    "annulus-velocity": 16,
    "sphere-radial": 16,
    "annulus-cartesian": 16,
    "rect-pressure-q0": (8, 6),
    "rect-pressure-q10": (8, 6),
    "pipe-bend-square": (6, 6),
    "pipe-bend-rect": (8, 6),
}


class TestCatalogue(object):
    def test_every_problem_builds_and_solves(self):
        eq_(set(SMALL), set(b.BENCHMARKS))
        for name, cells in SMALL.items():
            problem = b.benchmark(name, cells)
            eq_(problem.name, name)
            design = problem.design_problem()
            flow = design.flow_solver(Darcy()).solve(problem.permeability())
            assert np.all(np.isfinite(flow.pressure)), name

    def test_unknown_problem(self):
        with pytest.raises(ConfigError):
            b.benchmark("teapot")

    def test_radial_oracles(self):
        eq_(b.annulus_radial(16).interface_oracle,
            optimal_interface_2d(0.3, 0.1, 1.0).xi_hat)
        eq_(b.sphere_radial(16).interface_oracle,
            optimal_interface_3d(0.1, 0.1).xi_hat)
        eq_(b.channel_1d(16).interface_oracle, None)


class TestProblems(object):
    def test_with_changes_recomputes_the_oracle(self):
        problem = b.annulus_radial(16).with_changes(gamma=0.5, k_high=20.0)
        eq_(problem.gamma, 0.5)
        close_(problem.interface_oracle,
            optimal_interface_2d(0.5, 0.1, 1.0, 1.0, 20.0).xi_hat)
        eq_(b.channel_1d(16).with_changes(gamma=0.2).interface_oracle, None)

    def test_permeability(self):
        problem = b.channel_1d(8)
        close_(problem.permeability(), np.ones(8))
        close_(problem.permeability(3.0), np.full(8, 3.0))

    def test_model(self):
        problem = b.rect_pressure_q10((8, 6))
        eq_(problem.model().law, DragLaw.LINEARIZED_BARUS)
        eq_(problem.model(law="darcy").law, DragLaw.DARCY)
        close_(problem.model(betaB=0.01).betaB, 0.01)

    def test_source_problem_segments(self):
        problem = b.pipe_bend_square((6, 6))
        for tag in ("inlet", "outlet", "wall-left-lo", "wall-bottom-hi",
                "right", "top"):
            includes_(problem.grid.tags, tag)
        eq_(problem.grid.faces_with_tag("inlet").size, 2)

    def test_source_leaves_through_the_outlets(self):
        problem = b.rect_pressure_q10((8, 6))
        flow = solve_flow(problem.grid, problem.permeability(), Darcy(),
            problem.bcs, source=problem.source)
        close_(flow.outflow(), 10.0*2.0*1.5, rtol=1e-8)

    def test_cartesian_annulus_pins_reservoirs(self):
        problem = b.annulus_cartesian(16)
        pinned = problem.pinned
        eq_(np.count_nonzero(pinned == b.P_INLET), 4)
        eq_(pinned[0], b.P_OUTLET)
        gt_(np.count_nonzero(np.isnan(pinned)), 100)
        design = problem.design_problem()
        close_(design.measure, np.sum(problem.grid.cell_volumes[
            np.isnan(pinned)]))
