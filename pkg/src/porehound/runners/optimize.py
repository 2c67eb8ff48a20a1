# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import logging
import os
import sys

from porehound import analytic
from porehound.conditions import Driving, driving_of
from porehound.grid import RADIAL_CYLINDRICAL, RADIAL_SPHERICAL
from porehound.readers.delimited import DensityReader
from porehound.runners.base import (BaseOptionParser, BaseRunner,
    add_problem_options, parse_cells, problem_overrides, run_main)
from porehound.topopt import binary_fraction, interface_location, optimize
from porehound.utilities import relative_error
from porehound.writers import vtk
from porehound.writers.delimited import (ComparisonWriter, DensityWriter,
    FieldWriter, HistoryWriter, SummaryWriter, density_rows, field_rows,
    history_rows)

logger = logging.getLogger(__name__)


def main(argv=None):
    sys.exit(run_main(OptimizeRunner, argv))


class OptimizeOptionParser(BaseOptionParser):
    """
    Parses the command line options for a layout optimization
    """

    def add_options(self, parser):
        add_problem_options(parser)
        parser.add_option(
            "--direction", dest="direction",
            help="maximize or minimize (default: from the boundary data)")
        parser.add_option(
            "--max-iter", dest="max_iter", type="int",
            help="Stop after N optimizer iterations", metavar="N")
        parser.add_option(
            "--initial-density", dest="initial_density",
            help="Start from the densities in FILE", metavar="FILE")
        parser.add_option(
            "--lagged-adjoint", dest="lagged_adjoint", action="store_true",
            default=None,
            help="Drop the drag couplings from the adjoint operator")
        parser.add_option(
            "--no-continuation", dest="continuation", action="store_false",
            default=None,
            help="Keep the penalization exponent fixed at [design] penal")
        parser.add_option(
            "--penal-max", dest="penal_max", type="float",
            help="Raise the penalization exponent up to P (default: from "
            "kH/kL)", metavar="P")

    def validate(self, parser):
        o = self.options
        if o.max_iter is not None and o.max_iter < 1:
            parser.error("--max-iter must be at least 1")
        if o.penal_max is not None and o.penal_max < 1:
            parser.error("--penal-max must be at least 1")
        if (o.initial_density is not None and
                not os.path.isfile(o.initial_density)):
            parser.error(o.initial_density + " is not a file")
        self.cells = parse_cells(parser, o.cells)

    def overrides(self):
        o = self.options
        overrides = problem_overrides(o, self.cells)
        overrides["design"].update(direction=o.direction,
            max_iter=o.max_iter, initial_density=o.initial_density,
            lagged_adjoint=o.lagged_adjoint, continuation=o.continuation,
            penal_max=o.penal_max)
        return overrides


def analytic_phi(problem, xi):
    """Φ of the two-material radial layout with the interface at xi."""
    if problem.grid.geometry not in (RADIAL_CYLINDRICAL, RADIAL_SPHERICAL):
        return None
    if driving_of(problem.bcs) is not Driving.PRESSURE_DRIVEN:
        return None
    prm = problem.parameters
    if problem.grid.geometry == RADIAL_SPHERICAL:
        layout = analytic.ShellLayout(prm["r_i"], xi, problem.k_high,
            problem.k_low)
        return analytic.solve_sphere(layout, p_i=prm["p_i"],
            p_o=prm["p_o"]).phi
    layout = analytic.AnnulusLayout(prm["r_i"], prm["r_o"], xi,
        problem.k_high, problem.k_low)
    return analytic.solve_annulus(layout, Driving.PRESSURE_DRIVEN,
        prm["p_i"], prm["p_o"]).phi


def comparison_rows(problem, model, state):
    """Computed against closed-form values, for problems that have them."""
    if problem.interface_oracle is None:
        return []
    oracle = problem.interface_oracle
    xi = interface_location(problem.grid, state.physical)
    rows = [("interface", xi, oracle, relative_error(xi, oracle))]
    if model.is_linear and model.mu0 == 1.0:
        phi = analytic_phi(problem, oracle)
        if phi is not None:
            rows.append(("phi", state.phi, phi,
                relative_error(state.phi, phi)))
    return rows


class OptimizeRunner(BaseRunner):

    parser_class = OptimizeOptionParser
    command = "optimize"

    def run(self):
        config = self.config
        problem = config.benchmark_problem()
        model = config.model_for(problem)
        design = config.design_problem(problem)
        initial = None
        if config.design.initial_density is not None:
            initial = DensityReader(
                filename=config.design.initial_density).densities(
                problem.grid.ncells)
        logger.info("%s: %s, %s, gamma %g", problem.name, model.describe(),
            design.direction.value, design.gamma)
        state = optimize(design, initial, model)
        grid = problem.grid
        summary = [("problem", problem.name), ("law", model.describe()),
            ("direction", design.direction.value),
            ("iterations", state.iteration), ("phi", state.phi),
            ("volume_fraction", state.volume_history[-1]),
            ("penal", state.penal),
            ("converged", state.converged), ("stalled", state.stalled),
            ("binary_fraction", binary_fraction(state.physical.rho,
                grid=grid))]
        if grid.ndim == 1:
            summary.append(("interface", interface_location(grid,
                state.physical)))
        SummaryWriter(self.out).write_all(summary)

        directory = self.output_dir(problem.name)
        with self.open_output(directory, "config.toml") as f:
            f.write(config.to_toml())
        with self.open_output(directory, "summary.csv") as f:
            SummaryWriter(f).write_all(summary)
        with self.open_output(directory, "history.csv") as f:
            HistoryWriter(f).write_all(history_rows(state))
        with self.open_output(directory, "density.csv") as f:
            DensityWriter(f).write_all(density_rows(state.rho.rho,
                state.physical.rho))
        k = state.physical.permeability()
        with self.open_output(directory, "fields.csv") as f:
            FieldWriter(f).write_all(field_rows(grid, state.flow, k, model,
                state.physical.rho))
        if config.output.vtk:
            with self.open_output(directory, "fields.vtk") as f:
                vtk.write_fields(grid, state.flow, k, f, state.physical.rho)
        comparison = comparison_rows(problem, model, state)
        if comparison:
            with self.open_output(directory, "comparison.csv") as f:
                ComparisonWriter(f).write_all(comparison)
        logger.info("wrote results to %s", os.path.abspath(directory))
        return 0
