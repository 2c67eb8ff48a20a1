# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

from io import StringIO

import numpy as np
import pytest

from porehound.errors import ShapeError
from porehound.material import Darcy
from porehound.primal import solve_flow
from porehound.writers import vtk
from ..testutils import eq_, includes_
from .. import mock_objects


class TestVtkWriter(object):
    def setup_method(self):
        self.out = StringIO()

    def teardown_method(self):
        self.out.close()

    def test_header_of_a_slab(self):
        writer = vtk.VtkWriter(mock_objects.slab(4), self.out, "slab")
        writer.add_scalar("rho", [0.0, 0.25, 0.5, 1.0])
        writer.write()
        lines = self.out.getvalue().splitlines()
        eq_(lines[:5], ["# vtk DataFile Version 3.0", "slab", "ASCII",
            "DATASET RECTILINEAR_GRID", "DIMENSIONS 5 1 1"])
        eq_(lines[5], "X_COORDINATES 5 double")
        eq_(lines[6], "0.0 0.25 0.5 0.75 1.0")
        includes_(lines, "CELL_DATA 4")
        includes_(lines, "SCALARS rho double 1")
        eq_(lines[-1], "0.0 0.25 0.5 1.0")

    def test_vectors_are_padded(self):
        grid = mock_objects.rectangle(2, 1, 2.0, 1.0)
        writer = vtk.VtkWriter(grid, self.out)
        writer.add_vector("velocity", [[1.0, 2.0], [3.0, 4.0]])
        writer.write()
        lines = self.out.getvalue().splitlines()
        includes_(lines, "DIMENSIONS 3 2 1")
        eq_(lines[-3:], ["VECTORS velocity double", "1.0 2.0 0.0",
            "3.0 4.0 0.0"])

    def test_shapes_are_checked(self):
        writer = vtk.VtkWriter(mock_objects.slab(4), self.out)
        with pytest.raises(ShapeError):
            writer.add_scalar("rho", np.ones(3))
        with pytest.raises(ShapeError):
            writer.add_vector("velocity", np.ones((4, 2)))

    def test_write_fields(self):
        grid = mock_objects.annulus(6, 0.1, 1.0)
        flow = solve_flow(grid, np.ones(6), Darcy(), mock_objects.radial_bcs())
        vtk.write_fields(grid, flow, np.ones(6), self.out, rho=np.ones(6))
        text = self.out.getvalue()
        for name in ("rho", "permeability", "pressure"):
            includes_(text, "SCALARS %s double 1" % name)
        includes_(text, "VECTORS velocity double")
