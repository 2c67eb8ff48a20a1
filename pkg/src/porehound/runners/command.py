# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

"""The porehound umbrella command: porehound SUBCOMMAND [options]."""

import sys

from porehound import version
from porehound.runners import analytic, mpt_check, optimize, solve, verify
from porehound.runners.base import run_main

COMMANDS = {
    "analytic": analytic.AnalyticRunner,
    "solve": solve.SolveRunner,
    "optimize": optimize.OptimizeRunner,
    "verify": verify.VerifyRunner,
    "mpt-check": mpt_check.MptCheckRunner,
}

USAGE = """usage: porehound SUBCOMMAND [options]

subcommands:
  analytic    closed-form solutions and optimal interfaces
  solve       one flow solve on a built-in or configured problem
  optimize    volume-constrained layout optimization
  verify      grid, property and power-functional verification suites
  mpt-check   power-functional stationarity check of one solution

porehound SUBCOMMAND --help describes the options of each subcommand.
"""


def dispatch(argv, out=sys.stdout, err=sys.stderr):
    if len(argv) < 2 or argv[1] in ("-h", "--help"):
        (out if len(argv) >= 2 else err).write(USAGE)
        return 0 if len(argv) >= 2 else 2
    if argv[1] == "--version":
        out.write("porehound %s\n" % version.version_str())
        return 0
    runner = COMMANDS.get(argv[1])
    if runner is None:
        err.write("porehound: unknown subcommand %r\n%s" % (argv[1], USAGE))
        return 2
    return run_main(runner, ["porehound " + argv[1]] + list(argv[2:]), out,
        err)


def main(argv=None):
    if argv is None:
        argv = sys.argv
    sys.exit(dispatch(argv))
