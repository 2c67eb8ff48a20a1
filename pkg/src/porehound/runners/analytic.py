# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import logging
import os
import sys

import numpy as np

from porehound import analytic
from porehound.conditions import Driving
from porehound.material import DragLaw, MaterialModel
from porehound.runners.base import BaseOptionParser, BaseRunner, run_main
from porehound.writers.delimited import ProfileWriter, SummaryWriter

logger = logging.getLogger(__name__)

CASES = ("upsilon-1d", "solve-1d", "annulus", "annulus-optimum", "sphere",
    "sphere-optimum", "lemma")
# Short spellings accepted next to the long option names
ALIASES = {
    "r-i": ["--ri"],
    "r-o": ["--ro"],
    "k-low": ["--kL"],
    "k-high": ["--kH"],
    "beta": ["--betaB", "--betaF"],
    "mu": ["--mu0"],
}


def main(argv=None):
    sys.exit(run_main(AnalyticRunner, argv))


class AnalyticOptionParser(BaseOptionParser):
    """
    Parses the command line options for the closed-form evaluations
    """

    usage = "%prog [options] CASE\n\nCASE is one of " + ", ".join(CASES)
    max_args = 1

    def add_options(self, parser):
        for name, default, text in (
                ("xi", 0.5, "Interface position"),
                ("k1", 10.0, "Permeability inside the interface"),
                ("k2", 1.0, "Permeability outside the interface"),
                ("gamma", 0.3, "Volume fraction of high permeability"),
                ("r-i", 0.1, "Inner radius"),
                ("r-o", 1.0, "Outer radius"),
                ("k-low", 1.0, "Low permeability of the optimum"),
                ("k-high", 10.0, "High permeability of the optimum"),
                ("beta", 0.0, "Barus or Forchheimer coefficient"),
                ("mu", 1.0, "Reference viscosity"),
                ("p-in", 1.0, "Inlet (inner) pressure"),
                ("p-out", 0.0, "Outlet (outer) pressure"),
                ("v-in", 1.0, "Inlet (inner) velocity")):
            flags = ["--" + name] + ALIASES.get(name, [])
            parser.add_option(*flags, dest=name.replace("-", "_"),
                type="float", default=default, help=text + " [%default]")
        parser.add_option(
            "--law", "--model", dest="law", default="darcy",
            help="Drag law: darcy, barus, linearized-barus or "
                "darcy-forchheimer [%default]")
        parser.add_option(
            "--driving", dest="driving", default="pressure",
            help="pressure or velocity [%default]")
        parser.add_option(
            "--points", dest="points", type="int", default=101,
            help="Profile samples written with --output [%default]")

    def validate(self, parser):
        if len(self.args) == 0:
            parser.error("No case specified")
        self.case = self.args[0]
        if self.case not in CASES:
            parser.error("unknown case %r; choose from %s" %
                (self.case, ", ".join(CASES)))
        if self.options.points < 2:
            parser.error("--points must be at least 2")


class AnalyticRunner(BaseRunner):

    parser_class = AnalyticOptionParser
    command = "analytic"

    def model(self):
        o = self.options
        law = DragLaw.parse(o.law)
        if law.speed_dependent:
            return MaterialModel(law, o.mu, 0.0, o.beta)
        return MaterialModel(law, o.mu, o.beta, 0.0)

    def evaluate(self):
        """Summary rows and, for flow cases, the solution."""
        o = self.options
        case = self.op.case
        driving = Driving.parse(o.driving)
        if case == "upsilon-1d":
            return [("upsilon", analytic.upsilon_1d(o.xi, o.k1, o.k2))], None
        if case == "solve-1d":
            layout = analytic.InterfaceLayout1D(o.xi, o.k1, o.k2)
            solution = analytic.solve_1d(self.model(), driving, layout,
                o.p_in, o.p_out, o.v_in)
            return self._flow_rows(solution), solution
        if case == "annulus":
            layout = analytic.AnnulusLayout(o.r_i, o.r_o, o.xi, o.k1, o.k2)
            solution = analytic.solve_annulus(layout, driving, o.p_in,
                o.p_out, o.v_in, o.mu, self.model())
            rows = [("upsilon", analytic.upsilon_2d(layout))]
            return rows + self._flow_rows(solution), solution
        if case == "sphere":
            layout = analytic.ShellLayout(o.r_i, o.xi, o.k1, o.k2)
            solution = analytic.solve_sphere(layout, driving, o.p_in,
                o.p_out, o.v_in, self.model())
            rows = [("A", analytic.upsilon_3d(layout))]
            return rows + self._flow_rows(solution), solution
        if case == "annulus-optimum":
            opt = analytic.optimal_interface_2d(o.gamma, o.r_i, o.r_o,
                o.k_low, o.k_high)
            return self._optimum_rows(opt, "upsilon"), None
        if case == "sphere-optimum":
            opt = analytic.optimal_interface_3d(o.gamma, o.r_i, o.k_low,
                o.k_high)
            return self._optimum_rows(opt, "phi"), None
        return [("lemma_gap", analytic.lemma_gap(o.gamma, o.r_i))], None

    def _flow_rows(self, solution):
        return [("constant", solution.constant), ("phi", solution.phi),
            ("p_in", solution.p_in), ("p_out", solution.p_out),
            ("pressure_jump", solution.pressure_jump())]

    def _optimum_rows(self, opt, value):
        return [("xi_hat", opt.xi_hat), ("xi_hat_outer", opt.xi_hat_outer),
            ("%s_inner" % value, opt.inner_value),
            ("%s_outer" % value, opt.outer_value), ("verdict", opt.verdict)]

    def profile(self, solution):
        lo, hi = solution.resistance.lo, solution.resistance.hi
        x = np.linspace(lo, hi, self.options.points)
        return zip(x, solution.pressure(x), solution.velocity(x))

    def run(self):
        rows, solution = self.evaluate()
        SummaryWriter(self.out).write_all(rows)
        if self.options.output is None:
            return 0
        directory = self.output_dir(self.op.case)
        with self.open_output(directory, "summary.csv") as f:
            SummaryWriter(f).write_all(rows)
        if solution is not None:
            with self.open_output(directory, "profile.csv") as f:
                ProfileWriter(f).write_all(self.profile(solution))
        logger.info("wrote results to %s", os.path.abspath(directory))
        return 0
