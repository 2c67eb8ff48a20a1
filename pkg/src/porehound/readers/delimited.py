# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import csv
import logging

import numpy as np

from porehound.errors import ConfigError, ShapeError

logger = logging.getLogger(__name__)


class DelimitedReader(object):

    """
    Converts files (or other enumerations of strings) into lists of lists,
    skipping blank lines and lines starting with the comment character
    (by default the #)
    """

    STANDARD_DIALECT = {'delimiter': ","}

    def __init__(self,
        file_data=None, comment_char="#", opts_for_parser=None,
        filename=None):
        super(DelimitedReader, self).__init__()
        self._content_lines = None
        self.parser = None
        self.file_data = file_data
        self.comment_char = comment_char
        self.opts_for_parser = self.__class__.STANDARD_DIALECT.copy()
        self.opts_for_parser.update(opts_for_parser or {})
        self.filename = filename
        if file_data is None and filename is not None:
            self.read_file(filename)

    def read_file(self, filename):
        with open(filename, "r", newline="", encoding="utf-8") as f:
            self.file_data = f.readlines()

    def __len__(self):
        self._setup_parser()
        return len(self._content_lines)

    def __iter__(self):
        return self

    def __next__(self):
        self._setup_parser()
        return next(self.parser)

    def _setup_parser(self):
        if self._content_lines is None:
            stripped = (line.strip() for line in self.file_data)
            self._content_lines = [line for line in stripped
                if line and not line.startswith(self.comment_char)]
        if self.parser is None:
            self.parser = csv.reader(
                self._content_lines, **self.opts_for_parser)


class DensityReader(DelimitedReader):
    """
    Reads the design densities of a previous run: a header row with a "rho"
    column, one row per cell in cell order.
    """

    COLUMN = "rho"

    def densities(self, ncells=None):
        rows = list(self)
        if not rows:
            raise ConfigError("density file %s is empty" % (self.filename,))
        header = [h.strip() for h in rows[0]]
        try:
            column = header.index(self.COLUMN)
        except ValueError:
            raise ConfigError("density file %s has no %r column" %
                (self.filename, self.COLUMN))
        try:
            rho = np.array([float(row[column]) for row in rows[1:]])
        except (IndexError, ValueError) as e:
            raise ConfigError("bad density row in %s: %s" %
                (self.filename, e))
        if ncells is not None and rho.size != ncells:
            raise ShapeError("density file %s has %d cells, grid has %d" %
                (self.filename, rho.size, ncells))
        logger.debug("read %d densities from %s", rho.size, self.filename)
        return rho
