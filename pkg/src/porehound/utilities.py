# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import numpy as np

from porehound.errors import ShapeError


def relative_error(value, reference, floor=1e-300):
    """|value - reference| / |reference|, or the absolute error if the
    reference is (numerically) zero."""
    scale = abs(reference)
    if scale < floor:
        return abs(value - reference)
    return abs(value - reference)/scale


def as_cell_array(value, ncells, name="field"):
    """Broadcast a scalar or check a per-cell array; returns a float array."""
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        return np.full(ncells, float(arr))
    arr = arr.ravel()
    if arr.size != ncells:
        raise ShapeError("%s has %d entries, grid has %d cells" %
            (name, arr.size, ncells))
    return arr
