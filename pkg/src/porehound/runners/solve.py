# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import logging
import os
import sys

from porehound.drag import total_dissipation
from porehound.material import DensityField
from porehound.readers.delimited import DensityReader
from porehound.runners.base import (BaseOptionParser, BaseRunner,
    add_problem_options, parse_cells, problem_overrides, run_main)
from porehound.writers import vtk
from porehound.writers.delimited import FieldWriter, SummaryWriter, field_rows

logger = logging.getLogger(__name__)


def main(argv=None):
    sys.exit(run_main(SolveRunner, argv))


class SolveOptionParser(BaseOptionParser):
    """
    Parses the command line options for a single flow solve
    """

    def add_options(self, parser):
        add_problem_options(parser)
        parser.add_option(
            "--density", dest="density_file",
            help="Take design densities from FILE (a density.csv)",
            metavar="FILE")
        parser.add_option(
            "--xi", dest="xi", type="float",
            help="Two-material layout of a 1D or radial problem with high "
                "permeability inside X",
            metavar="X")
        parser.add_option(
            "--permeability", dest="permeability", type="float",
            help="Uniform permeability K (default: the low permeability)",
            metavar="K")

    def validate(self, parser):
        chosen = [o for o in ("density_file", "xi", "permeability")
            if getattr(self.options, o) is not None]
        if len(chosen) > 1:
            parser.error("--density, --xi and --permeability exclude each "
                "other")
        if (self.options.density_file is not None and
                not os.path.isfile(self.options.density_file)):
            parser.error(self.options.density_file + " is not a file")
        if self.options.permeability is not None and \
                self.options.permeability <= 0:
            parser.error("--permeability must be positive")
        self.cells = parse_cells(parser, self.options.cells)

    def overrides(self):
        return problem_overrides(self.options, self.cells)


class SolveRunner(BaseRunner):

    parser_class = SolveOptionParser
    command = "solve"

    def layout(self, problem):
        """(density or None, permeability) of the requested layout."""
        o = self.options
        grid = problem.grid
        if o.density_file is not None:
            rho = DensityReader(filename=o.density_file).densities(grid.ncells)
            field = DensityField(rho, problem.k_low, problem.k_high,
                self.config.design.penal)
            return field.rho, field.permeability()
        if o.xi is not None:
            return None, grid.layered_permeability(o.xi, problem.k_high,
                problem.k_low)
        return None, problem.permeability(o.permeability)

    def run(self):
        problem = self.config.benchmark_problem()
        model = self.config.model_for(problem)
        rho, k = self.layout(problem)
        design = self.config.design_problem(problem)
        flow = design.flow_solver(model).solve(k)
        mask = design.design if problem.pinned is not None else None
        phi = total_dissipation(problem.grid, k, model, flow, mask)
        summary = [("problem", problem.name), ("law", model.describe()),
            ("cells", problem.grid.ncells), ("phi", phi),
            ("picard_iterations", flow.picard_iterations),
            ("residual", flow.residual_norm),
            ("mass_balance", flow.mass_balance())]
        summary += [("outflow:%s" % tag, flow.outflow(tag))
            for tag in problem.grid.tags]
        logger.info("%s: phi %.10g after %d Picard iterations", problem.name,
            phi, flow.picard_iterations)
        SummaryWriter(self.out).write_all(summary)

        directory = self.output_dir(problem.name)
        with self.open_output(directory, "summary.csv") as f:
            SummaryWriter(f).write_all(summary)
        with self.open_output(directory, "fields.csv") as f:
            FieldWriter(f).write_all(field_rows(problem.grid, flow, k, model,
                rho))
        if self.config.output.vtk:
            with self.open_output(directory, "fields.vtk") as f:
                vtk.write_fields(problem.grid, flow, k, f, rho)
        logger.info("wrote results to %s", os.path.abspath(directory))
        return 0
