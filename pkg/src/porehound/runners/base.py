# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

"""
Pieces every command shares: the common options, logging setup, config
loading with command-line overrides, and turning library errors into exit
statuses.
"""

import contextlib
import logging
import os
import sys
from optparse import OptionParser

from porehound import version
from porehound.config import ConfigReader
from porehound.errors import PorehoundError

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


@contextlib.contextmanager
def redirected_stderr(err):
    old_err = sys.stderr
    sys.stderr = err
    try:
        yield
    finally:
        sys.stderr = old_err


class BaseOptionParser(object):
    """
    Parses the options common to all commands; subclasses add their own in
    add_options and check them in validate.
    """

    usage = "%prog [options]"
    max_args = 0

    def __init__(self, argv, err=sys.stderr):
        super(BaseOptionParser, self).__init__()
        self.argv = argv
        parser = OptionParser(usage=self.usage,
            prog=os.path.basename(argv[0]) if argv else None,
            version="%prog " + version.version_str())
        parser.add_option(
            "-c", "--config", dest="config_file",
            help="Read run settings from the TOML file FILE",
            metavar="FILE")
        parser.add_option(
            "-o", "--output", dest="output",
            help="Write result files into DIR",
            metavar="DIR")
        parser.add_option(
            "--dump-config", dest="dump_config", action="store_true",
            default=False,
            help="Print the effective configuration as TOML and exit")
        parser.add_option(
            "-v", "--verbose", dest="verbose", action="store_true",
            default=False, help="Log progress")
        parser.add_option(
            "-q", "--quiet", dest="quiet", action="store_true",
            default=False, help="Log errors only")
        self.add_options(parser)
        self.parser = parser
        with redirected_stderr(err):
            self.options, self.args = parser.parse_args(argv[1:])
            if self.options.verbose and self.options.quiet:
                parser.error("--verbose and --quiet exclude each other")
            if len(self.args) > self.max_args:
                parser.error("unexpected arguments: %s" %
                    " ".join(self.args[self.max_args:]))
            if (self.options.config_file is not None and
                    not os.path.isfile(self.options.config_file)):
                parser.error(self.options.config_file + " is not a file")
            self.validate(parser)

    def add_options(self, parser):
        pass

    def validate(self, parser):
        pass

    def overrides(self):
        """Config overrides from the command line, by section."""
        return {}

    @property
    def log_level(self):
        if self.options.verbose:
            return logging.INFO
        if self.options.quiet:
            return logging.ERROR
        return logging.WARNING


def setup_logging(level, err=sys.stderr):
    logging.basicConfig(level=level, stream=err, format=LOG_FORMAT)
    logging.getLogger("porehound").setLevel(level)


class BaseRunner(object):
    """
    Builds the config from the parsed options; run() does the work and
    returns the exit status.
    """

    parser_class = BaseOptionParser
    command = "porehound"

    def __init__(self, argv, out=sys.stdout, err=sys.stderr):
        super(BaseRunner, self).__init__()
        self.out = out
        self.err = err
        self.op = self.parser_class(argv, err=err)
        self.options = self.op.options
        reader = ConfigReader(filename=self.options.config_file)
        self.config = reader.config().with_overrides(**self.op.overrides())

    def output_dir(self, name):
        if self.options.output is not None:
            path = self.options.output
        else:
            path = os.path.join(self.config.output_root(),
                "%s-%s" % (self.command, name))
        os.makedirs(path, exist_ok=True)
        return path

    def open_output(self, directory, filename):
        return open(os.path.join(directory, filename), "w", newline="",
            encoding="utf-8")

    def execute(self):
        if self.options.dump_config:
            self.out.write(self.config.to_toml())
            return 0
        return self.run()

    def run(self):
        raise NotImplementedError


def run_main(runner_class, argv=None, out=sys.stdout, err=sys.stderr):
    """Parse, run and map failures to exit statuses (2 for usage)."""
    if argv is None:
        argv = sys.argv
    try:
        runner = runner_class(argv, out, err)
    except PorehoundError as e:
        err.write("%s: error: %s\n" % (runner_class.command, e))
        return 2
    setup_logging(runner.op.log_level, err)
    try:
        return runner.execute()
    except PorehoundError as e:
        logger.debug("run failed", exc_info=True)
        err.write("%s: error: %s\n" % (runner_class.command, e))
        return 1


def add_problem_options(parser):
    """Options selecting the problem and the drag law."""
    parser.add_option(
        "--problem", dest="problem",
        help="Built-in problem NAME (see porehound.benchmarks)",
        metavar="NAME")
    parser.add_option(
        "--cells", dest="cells",
        help="Cell counts, comma separated (e.g. 40,30)",
        metavar="N[,M]")
    parser.add_option(
        "--law", "--model", dest="law",
        help="Drag law: darcy, barus, linearized-barus or darcy-forchheimer")
    parser.add_option(
        "--beta-b", "--betaB", dest="betaB", type="float",
        help="Barus coefficient")
    parser.add_option(
        "--beta-f", "--betaF", dest="betaF", type="float",
        help="Forchheimer coefficient")
    parser.add_option(
        "--gamma", dest="gamma", type="float",
        help="Volume bound of high-permeability material")


def parse_cells(parser, text):
    if text is None:
        return None
    try:
        cells = [int(c) for c in text.split(",")]
    except ValueError:
        parser.error("--cells must be integers separated by commas, got %r" %
            (text,))
    if not cells or any(c < 1 for c in cells):
        parser.error("--cells must be positive, got %r" % (text,))
    return cells


def problem_overrides(options, cells):
    return {
        "problem": {"name": options.problem, "cells": cells},
        "model": {"law": options.law, "betaB": options.betaB,
            "betaF": options.betaF},
        "design": {"gamma": options.gamma},
    }
