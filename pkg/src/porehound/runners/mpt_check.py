# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import logging
import os
import sys

from porehound.errors import ConfigError
from porehound.power import default_perturbations, mpt_stationarity_check
from porehound.runners.base import (BaseOptionParser, BaseRunner,
    add_problem_options, parse_cells, problem_overrides, run_main)
from porehound.verify import mpt_entries
from porehound.writers.delimited import MptWriter

logger = logging.getLogger(__name__)


def main(argv=None):
    sys.exit(run_main(MptCheckRunner, argv))


class MptCheckOptionParser(BaseOptionParser):
    """
    Parses the command line options for the power-functional check
    """

    def add_options(self, parser):
        add_problem_options(parser)
        parser.add_option(
            "--perturbations", dest="count", type="int", default=5,
            help="Number of perturbations [%default]", metavar="N")
        parser.add_option(
            "--permeability", dest="permeability", type="float",
            help="Uniform permeability K (default: the low permeability)",
            metavar="K")

    def validate(self, parser):
        if self.options.count < 1:
            parser.error("--perturbations must be at least 1")
        if self.options.permeability is not None and \
                self.options.permeability <= 0:
            parser.error("--permeability must be positive")
        self.cells = parse_cells(parser, self.options.cells)

    def overrides(self):
        return problem_overrides(self.options, self.cells)


class MptCheckRunner(BaseRunner):

    parser_class = MptCheckOptionParser
    command = "mpt-check"

    def run(self):
        problem = self.config.benchmark_problem()
        if problem.pinned is not None:
            raise ConfigError("the power-functional check does not support "
                "pinned cells (problem %r)" % (problem.name,))
        model = self.config.model_for(problem)
        design = self.config.design_problem(problem)
        k = problem.permeability(self.options.permeability)
        flow = design.flow_solver(model).solve(k)
        perts = default_perturbations(problem.grid, problem.bcs,
            self.options.count)
        results = mpt_stationarity_check(model, flow, perts, permeability=k,
            bcs=problem.bcs, body_force=design.body_force,
            source=problem.source, workers=self.config.run.workers)
        entries = mpt_entries(problem.name, results)
        MptWriter(self.out).write_all(entries)
        directory = self.output_dir(problem.name)
        with self.open_output(directory, "mpt.csv") as f:
            MptWriter(f).write_all(entries)
        logger.info("wrote results to %s", os.path.abspath(directory))
        return 0 if all(e.passed for e in entries) else 1
