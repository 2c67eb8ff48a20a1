# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import logging

import numpy as np
import scipy.sparse as sp
from scipy.spatial import cKDTree

logger = logging.getLogger(__name__)

# Relative weight below which a neighbour is dropped.
WEIGHT_CUTOFF = 1e-12


class DensityFilter(object):
    """
    Conic density filter: each cell's filtered density is the volume-weighted
    mean of the densities within radius, with weights (radius − distance).
    radius is in physical units; radius <= 0 disables filtering.
    """

    def __init__(self, grid, radius):
        super(DensityFilter, self).__init__()
        self.grid = grid
        self.radius = float(radius)
        self.matrix = self._build()

    @classmethod
    def in_cell_widths(cls, grid, widths):
        return cls(grid, widths*grid.min_width)

    def _build(self):
        n = self.grid.ncells
        if self.radius <= 0:
            return sp.identity(n, format="csr")
        points = self.grid.cell_coordinates
        tree = cKDTree(points)
        pairs = tree.query_pairs(self.radius, output_type="ndarray")
        if pairs.size:
            i, j = pairs[:, 0], pairs[:, 1]
            dist = np.sqrt(np.sum((points[i] - points[j])**2, axis=1))
            w = self.radius - dist
            keep = w > WEIGHT_CUTOFF*self.radius
            i, j, w = i[keep], j[keep], w[keep]
        else:
            i = j = np.zeros(0, dtype=int)
            w = np.zeros(0)
        diag = np.arange(n)
        rows = np.concatenate([i, j, diag])
        cols = np.concatenate([j, i, diag])
        vals = np.concatenate([w, w, np.full(n, self.radius)])
        vals = vals*self.grid.cell_volumes[cols]
        H = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
        row_sums = np.asarray(H.sum(axis=1)).ravel()
        logger.debug("density filter: radius %g, %d neighbour pairs",
            self.radius, i.size)
        return sp.diags(1.0/row_sums).dot(H).tocsr()

    def apply(self, rho):
        rho = self.grid.check_cell_field(rho, "density")
        return np.clip(self.matrix.dot(rho), 0.0, 1.0)

    def gradient(self, d_filtered):
        """Chain rule from filtered densities back to design densities."""
        d_filtered = self.grid.check_cell_field(d_filtered, "sensitivity")
        return self.matrix.T.dot(d_filtered)


def density_filter(grid, rho, radius):
    return DensityFilter(grid, radius).apply(rho)
