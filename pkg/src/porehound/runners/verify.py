# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import logging
import os
import sys

from porehound import verify
from porehound.runners.base import BaseOptionParser, BaseRunner, run_main
from porehound.writers.delimited import ReportWriter, report_rows

logger = logging.getLogger(__name__)


def main(argv=None):
    sys.exit(run_main(VerifyRunner, argv))


class VerifyOptionParser(BaseOptionParser):
    """
    Parses the command line options for the verification suites
    """

    usage = "%prog [options] [SUITE]\n\nSUITE (or --suite) is one of " + \
        ", ".join(verify.SUITES)
    max_args = 1

    def add_options(self, parser):
        parser.add_option(
            "--suite", dest="suite",
            help="Suite to run, as an alternative to the SUITE argument",
            metavar="SUITE")
        parser.add_option(
            "--seed", dest="seed", type="int",
            help="Seed of the property sweeps")
        parser.add_option(
            "--samples", dest="n_samples", type="int",
            help="Samples per property sweep", metavar="N")
        parser.add_option(
            "--workers", dest="workers", type="int",
            help="Threads for the grid cases", metavar="N")

    def validate(self, parser):
        self.suite = self.options.suite
        if self.args:
            if self.suite is not None and self.suite != self.args[0]:
                parser.error("--suite %s conflicts with SUITE %s" %
                    (self.suite, self.args[0]))
            self.suite = self.args[0]
        if self.suite is not None and self.suite not in verify.SUITES:
            parser.error("unknown suite %r; choose from %s" %
                (self.suite, ", ".join(verify.SUITES)))
        if self.options.n_samples is not None and self.options.n_samples < 1:
            parser.error("--samples must be at least 1")
        if self.options.workers is not None and self.options.workers < 1:
            parser.error("--workers must be at least 1")

    def overrides(self):
        o = self.options
        return {"run": {"suite": self.suite, "seed": o.seed,
            "n_samples": o.n_samples, "workers": o.workers}}


class VerifyRunner(BaseRunner):

    parser_class = VerifyOptionParser
    command = "verify"

    def run(self):
        run = self.config.run
        report = verify.run_suite(run.suite, run.seed, run.n_samples,
            run.workers)
        lines = report.summary_lines()
        for line in lines:
            self.out.write(line + "\n")
        directory = self.output_dir(run.suite)
        with self.open_output(directory, "report.csv") as f:
            ReportWriter(f).write_all(report_rows(report))
        with self.open_output(directory, "summary.txt") as f:
            f.write("\n".join(lines) + "\n")
        logger.info("wrote results to %s", os.path.abspath(directory))
        if not report.passed:
            logger.error("failed: %s", ", ".join(report.failures()))
            return 1
        return 0
