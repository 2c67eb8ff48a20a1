# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

"""
Built-in problems: radial annulus and shell optima, a Cartesian annulus
that shows fingering, and the rectangular and pipe-bend source studies.

Inlet and outlet segments of the Cartesian problems are centred on their
side and one third of its length.
"""

from dataclasses import dataclass, field, replace
import logging

import numpy as np

from porehound.analytic import optimal_interface_2d, optimal_interface_3d
from porehound.conditions import PrescribedNormalVelocity, PrescribedPressure
from porehound.errors import ConfigError
from porehound.grid import (BoundarySegment, CARTESIAN_2D, INTERVAL_1D,
    RADIAL_CYLINDRICAL, RADIAL_SPHERICAL, StructuredGrid)
from porehound.material import DragLaw, MaterialModel
from porehound.topopt import DesignProblem

logger = logging.getLogger(__name__)

INNER_RADIUS = 0.1
OUTER_RADIUS = 1.0
P_INLET = 100.0
P_OUTLET = 1.0
K_LOW = 1.0
K_HIGH = 10.0
SEGMENT = (1.0/3.0, 2.0/3.0)


@dataclass(frozen=True, eq=False)
class BenchmarkProblem:
    name: str
    grid: StructuredGrid
    bcs: dict
    gamma: float
    law: DragLaw = DragLaw.DARCY
    source: float = 0.0
    k_low: float = K_LOW
    k_high: float = K_HIGH
    pinned: np.ndarray = None
    interface_oracle: float = None
    description: str = ""
    parameters: dict = field(default_factory=dict)

    def model(self, betaB=0.0, betaF=0.0, law=None, mu0=1.0):
        law = self.law if law is None else DragLaw.parse(law)
        return MaterialModel(law, mu0, betaB, betaF)

    def design_problem(self, gamma=None, direction=None, penal=3.0,
            settings=None, solver_settings=None):
        return DesignProblem(self.grid, self.bcs,
            self.gamma if gamma is None else gamma, direction=direction,
            source=self.source, k_low=self.k_low, k_high=self.k_high,
            penal=penal, settings=settings, solver_settings=solver_settings,
            pinned=self.pinned)

    def with_changes(self, **changes):
        """A copy with new fields; radial interface oracles are recomputed."""
        problem = replace(self, **changes)
        if problem.interface_oracle is None:
            return problem
        low, high = problem.grid.extents[0]
        if problem.grid.geometry == RADIAL_SPHERICAL:
            oracle = optimal_interface_3d(problem.gamma, low, problem.k_low,
                problem.k_high)
        else:
            oracle = optimal_interface_2d(problem.gamma, low, high,
                problem.k_low, problem.k_high)
        return replace(problem, interface_oracle=oracle.xi_hat)

    def permeability(self, value=None):
        """Uniform permeability, kL by default."""
        value = self.k_low if value is None else value
        return np.full(self.grid.ncells, float(value))


def channel_1d(cells=None):
    grid = StructuredGrid(INTERVAL_1D, cells or 128, [(0.0, 1.0)])
    bcs = {"left": PrescribedPressure(1.0), "right": PrescribedPressure(0.0)}
    return BenchmarkProblem("channel-1d", grid, bcs, 0.5,
        description="unit slab, p(0)=1, p(1)=0",
        parameters={"length": 1.0, "p_left": 1.0, "p_right": 0.0})


def annulus_radial(cells=None, gamma=0.3):
    grid = StructuredGrid(RADIAL_CYLINDRICAL, cells or 256,
        [(INNER_RADIUS, OUTER_RADIUS)])
    bcs = {"inner": PrescribedPressure(P_INLET),
        "outer": PrescribedPressure(P_OUTLET)}
    oracle = optimal_interface_2d(gamma, INNER_RADIUS, OUTER_RADIUS, K_LOW,
        K_HIGH).xi_hat
    return BenchmarkProblem("annulus-radial", grid, bcs, gamma,
        interface_oracle=oracle,
        description="axisymmetric annulus, p_i=100, p_o=1",
        parameters={"r_i": INNER_RADIUS, "r_o": OUTER_RADIUS,
            "p_i": P_INLET, "p_o": P_OUTLET})


def annulus_velocity(cells=None, gamma=0.3, v_o=1.0):
    grid = StructuredGrid(RADIAL_CYLINDRICAL, cells or 256,
        [(INNER_RADIUS, OUTER_RADIUS)])
    # outward normal at r_i points inwards: radial inflow v_o means vn = -v_o
    bcs = {"inner": PrescribedNormalVelocity(-v_o),
        "outer": PrescribedPressure(P_OUTLET)}
    oracle = optimal_interface_2d(gamma, INNER_RADIUS, OUTER_RADIUS, K_LOW,
        K_HIGH).xi_hat
    return BenchmarkProblem("annulus-velocity", grid, bcs, gamma,
        interface_oracle=oracle,
        description="axisymmetric annulus, v_r(r_i)=1, p_o=1",
        parameters={"r_i": INNER_RADIUS, "r_o": OUTER_RADIUS, "v_o": v_o,
            "p_o": P_OUTLET})


def sphere_radial(cells=None, gamma=0.1):
    grid = StructuredGrid(RADIAL_SPHERICAL, cells or 256,
        [(INNER_RADIUS, 1.0)])
    bcs = {"inner": PrescribedPressure(1.0), "outer": PrescribedPressure(0.0)}
    oracle = optimal_interface_3d(gamma, INNER_RADIUS, K_LOW, K_HIGH).xi_hat
    return BenchmarkProblem("sphere-radial", grid, bcs, gamma,
        interface_oracle=oracle,
        description="spherical shell, p(r_i)=1, p(1)=0",
        parameters={"r_i": INNER_RADIUS, "r_o": 1.0, "p_i": 1.0, "p_o": 0.0})


def annulus_cartesian(cells=None, gamma=0.3):
    """
    The annulus on a square Cartesian grid: cells inside r_i and outside r_o
    are pinned to p_i and p_o. Without axisymmetry the optimizer grows
    fingers.
    """
    cells = cells or 64
    if np.isscalar(cells):
        cells = (cells, cells)
    half = 1.1*OUTER_RADIUS
    grid = StructuredGrid(CARTESIAN_2D, cells, [(-half, half),
        (-half, half)])
    radius = np.sqrt(np.sum(grid.cell_coordinates**2, axis=1))
    pinned = np.full(grid.ncells, np.nan)
    pinned[radius < INNER_RADIUS] = P_INLET
    pinned[radius > OUTER_RADIUS] = P_OUTLET
    bcs = dict((side, PrescribedPressure(P_OUTLET)) for side in grid.sides)
    return BenchmarkProblem("annulus-cartesian", grid, bcs, gamma,
        pinned=pinned,
        description="annulus embedded in a square, pinned reservoirs",
        parameters={"r_i": INNER_RADIUS, "r_o": OUTER_RADIUS,
            "p_i": P_INLET, "p_o": P_OUTLET})


def _segmented(side, tag, rest="wall"):
    lo, hi = SEGMENT
    return [BoundarySegment(side, 0.0, lo, "%s-%s-lo" % (rest, side)),
        BoundarySegment(side, lo, hi, tag),
        BoundarySegment(side, hi, 1.0, "%s-%s-hi" % (rest, side))]


def _walls(grid, bcs):
    for tag in grid.tags:
        if tag not in bcs:
            bcs[tag] = PrescribedNormalVelocity(0.0)
    return bcs


def _source_problem(name, extents, cells, outlet_side, source):
    segments = _segmented("left", "inlet") + _segmented(outlet_side,
        "outlet")
    grid = StructuredGrid(CARTESIAN_2D, cells, extents, segments)
    bcs = _walls(grid, {"inlet": PrescribedPressure(P_INLET),
        "outlet": PrescribedPressure(P_OUTLET)})
    (x0, x1), (y0, y1) = extents
    return BenchmarkProblem(name, grid, bcs, 0.1,
        law=DragLaw.LINEARIZED_BARUS, source=source,
        description="%gx%g box, inlet on left, outlet on %s, Q=%g" %
            (x1 - x0, y1 - y0, outlet_side, source),
        parameters={"width": x1 - x0, "height": y1 - y0, "p_i": P_INLET,
            "p_o": P_OUTLET, "source": source})


def rect_pressure_q0(cells=None):
    return _source_problem("rect-pressure-q0", [(0.0, 2.0), (0.0, 1.5)],
        cells or (40, 30), "right", 0.0)


def rect_pressure_q10(cells=None):
    return _source_problem("rect-pressure-q10", [(0.0, 2.0), (0.0, 1.5)],
        cells or (40, 30), "right", 10.0)


def pipe_bend_square(cells=None):
    return _source_problem("pipe-bend-square", [(0.0, 1.0), (0.0, 1.0)],
        cells or (30, 30), "bottom", 10.0)


def pipe_bend_rect(cells=None):
    return _source_problem("pipe-bend-rect", [(0.0, 2.0), (0.0, 1.5)],
        cells or (40, 30), "bottom", 10.0)


BENCHMARKS = {
    "channel-1d": channel_1d,
    "annulus-radial": annulus_radial,
    "annulus-velocity": annulus_velocity,
    "sphere-radial": sphere_radial,
    "annulus-cartesian": annulus_cartesian,
    "rect-pressure-q0": rect_pressure_q0,
    "rect-pressure-q10": rect_pressure_q10,
    "pipe-bend-square": pipe_bend_square,
    "pipe-bend-rect": pipe_bend_rect,
}


def benchmark(name, cells=None):
    try:
        builder = BENCHMARKS[name]
    except KeyError:
        raise ConfigError("unknown problem %r; built-in problems are %s" %
            (name, ", ".join(sorted(BENCHMARKS))))
    return builder(cells)
