# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

# Legacy ASCII VTK output. Every grid is written as a RECTILINEAR_GRID from
# its cell edges; fields are CELL_DATA. Radial grids are written along x.

import sys

import numpy as np

from porehound.drag import cell_velocity
from porehound.errors import ShapeError


class VtkWriter(object):

    def __init__(self, grid, out=sys.stdout, title="porehound fields"):
        super(VtkWriter, self).__init__()
        self.grid = grid
        self.out = out
        self.title = title
        self.scalars = []
        self.vectors = []

    def add_scalar(self, name, values):
        values = self.grid.check_cell_field(values, name)
        self.scalars.append((name, values))

    def add_vector(self, name, values):
        values = np.asarray(values, dtype=float)
        if values.shape != (self.grid.ncells, self.grid.ndim):
            raise ShapeError("%s must have shape %r, got %r" % (name,
                (self.grid.ncells, self.grid.ndim), values.shape))
        self.vectors.append((name, values))

    def _line(self, text=""):
        self.out.write(text + "\n")

    def _numbers(self, values):
        self._line(" ".join(repr(float(v)) for v in values))

    def write(self):
        grid = self.grid
        edges = list(grid.edges) + [np.zeros(1)]*(3 - len(grid.edges))
        self._line("# vtk DataFile Version 3.0")
        self._line(self.title)
        self._line("ASCII")
        self._line("DATASET RECTILINEAR_GRID")
        self._line("DIMENSIONS %d %d %d" % tuple(e.size for e in edges))
        for axis, e in zip("XYZ", edges):
            self._line("%s_COORDINATES %d double" % (axis, e.size))
            self._numbers(e)
        self._line("CELL_DATA %d" % grid.ncells)
        for name, values in self.scalars:
            self._line("SCALARS %s double 1" % name)
            self._line("LOOKUP_TABLE default")
            self._numbers(values)
        for name, values in self.vectors:
            padded = np.zeros((grid.ncells, 3))
            padded[:, :values.shape[1]] = values
            self._line("VECTORS %s double" % name)
            for row in padded:
                self._numbers(row)


def write_fields(grid, flow, permeability, out, rho=None):
    writer = VtkWriter(grid, out)
    if rho is not None:
        writer.add_scalar("rho", rho)
    writer.add_scalar("permeability", permeability)
    writer.add_scalar("pressure", flow.pressure)
    writer.add_vector("velocity", cell_velocity(grid, flow.face_velocity))
    writer.write()
    return writer
