# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import numpy as np

from porehound.filters.density import DensityFilter, density_filter
from ..testutils import eq_, close_, gt_
from .. import mock_objects


class TestDensityFilter(object):
    def setup_method(self):
        self.grid = mock_objects.square(6)
        self.filt = DensityFilter.in_cell_widths(self.grid, 1.5)

    def test_rows_are_normalized(self):
        sums = np.asarray(self.filt.matrix.sum(axis=1)).ravel()
        close_(sums, np.ones(self.grid.ncells))

    def test_uniform_field_is_unchanged(self):
        close_(self.filt.apply(np.full(self.grid.ncells, 0.3)),
            np.full(self.grid.ncells, 0.3))

    def test_neighbours_are_mixed(self):
        rho = np.zeros(self.grid.ncells)
        rho[14] = 1.0
        filtered = self.filt.apply(rho)
        gt_(filtered[15], 0.0)
        gt_(filtered[14], filtered[15])
        eq_(filtered[0], 0.0)

    def test_gradient_is_transpose(self):
        d = np.arange(self.grid.ncells, dtype=float)
        close_(self.filt.gradient(d), self.filt.matrix.T.dot(d))

    def test_zero_radius_is_identity(self):
        rho = mock_objects.random_permeability(self.grid, low=0.0, high=1.0)
        close_(density_filter(self.grid, rho, 0.0), rho)

    def test_radial_volumes_weight_the_mean(self):
        grid = mock_objects.annulus(8, 0.1, 1.0)
        filt = DensityFilter.in_cell_widths(grid, 1.5)
        rho = np.zeros(8)
        rho[3] = 1.0
        filtered = filt.apply(rho)
        # the larger outer neighbour pulls harder than the inner one
        gt_(filt.matrix[3, 4], filt.matrix[3, 2])
        gt_(filtered[2], 0.0)
