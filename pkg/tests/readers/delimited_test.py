# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

from os import path

import numpy as np
import pytest

from porehound.errors import ConfigError, ShapeError
from porehound.readers.delimited import DelimitedReader, DensityReader
from ..testutils import eq_, close_
from .. import mock_objects


class TestDelimitedReader(object):
    def setup_method(self):
        self.density_file = path.join(mock_objects.EX_PATH, "density.csv")
        with open(self.density_file) as f:
            self.lines = f.readlines()

    def test_reader_skips_comments(self):
        dr = DelimitedReader(self.lines)
        eq_(len(dr), 9)
        eq_(next(dr), ["cell", "rho", "physical"])

    def test_reader_skips_blank_lines(self):
        dr = DelimitedReader(["", "  # note", "a,b", "   ", "1,2"])
        eq_(list(dr), [["a", "b"], ["1", "2"]])

    def test_reader_can_take_filename_arg(self):
        eq_(len(DelimitedReader(filename=self.density_file)), 9)

    def test_reader_rows_have_same_length(self):
        dr = DelimitedReader(self.lines)
        header = next(dr)
        eq_(header, ["cell", "rho", "physical"])
        for row in dr:
            eq_(len(row), len(header))

    def test_reader_takes_other_comment_chars(self):
        dr = DelimitedReader(["; note", "a,b"], comment_char=";")
        eq_(list(dr), [["a", "b"]])

    def test_reader_takes_other_delimiters(self):
        dr = DelimitedReader(["a;b", "1;2"],
            opts_for_parser={"delimiter": ";"})
        eq_(list(dr), [["a", "b"], ["1", "2"]])


class TestDensityReader(object):
    def setup_method(self):
        self.density_file = path.join(mock_objects.EX_PATH, "density.csv")

    def test_reads_rho_column(self):
        rho = DensityReader(filename=self.density_file).densities(8)
        close_(rho, [1.0, 1.0, 0.9, 0.5, 0.2, 0.0, 0.0, 0.0])

    def test_reads_written_densities(self):
        rho = np.linspace(0.0, 1.0, 5)
        reader = DensityReader(mock_objects.density_csv_lines(rho))
        close_(reader.densities(), rho)

    def test_cell_count_is_checked(self):
        with pytest.raises(ShapeError):
            DensityReader(filename=self.density_file).densities(10)

    def test_missing_column(self):
        with pytest.raises(ConfigError):
            DensityReader(["cell,density", "0,1.0"]).densities()

    def test_bad_value(self):
        with pytest.raises(ConfigError):
            DensityReader(["cell,rho", "0,dense"]).densities()

    def test_empty_file(self):
        with pytest.raises(ConfigError):
            DensityReader(["# nothing here"]).densities()
