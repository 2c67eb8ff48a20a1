# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

"""
Drag laws α(k, |v|, p) and the rate of mechanical dissipation.

All functions take scalars or per-cell arrays. Pressures entering the
Barus laws are relative pressures.
"""

from dataclasses import dataclass

import numpy as np

from porehound.errors import DomainError, InvalidPermeabilityError
from porehound.material import DensityField, DragLaw


@dataclass(frozen=True, eq=False)
class DragEvaluation:
    alpha: object
    d_alpha_d_p: object
    d_alpha_d_speed: object


def _scalar_or_array(arr):
    arr = np.asarray(arr, dtype=float)
    if arr.ndim == 0:
        return float(arr)
    return arr


def drag(model, k, speed=0.0, p=0.0):
    """Drag coefficient and its partials in p and |v| for model."""
    k = np.asarray(k, dtype=float)
    speed = np.asarray(speed, dtype=float)
    p = np.asarray(p, dtype=float)
    if np.any(k <= 0):
        raise InvalidPermeabilityError("permeability must be positive, got "
            "min %g" % np.min(k))
    if np.any(speed < 0):
        raise DomainError("speed must be nonnegative")
    base = model.mu0/k
    zero = np.zeros(np.broadcast(k, speed, p).shape)
    law = model.law
    if law is DragLaw.DARCY:
        alpha = base + zero
        dp = zero
        ds = zero
    elif law is DragLaw.BARUS:
        alpha = base*np.exp(model.betaB*p) + zero
        dp = model.betaB*alpha
        ds = zero
    elif law is DragLaw.LINEARIZED_BARUS:
        factor = 1.0 + model.betaB*p
        if np.any(factor <= 0):
            raise DomainError("linearized Barus drag is not positive for "
                "p < -1/betaB (min p = %g)" % np.min(p))
        alpha = base*factor + zero
        dp = model.betaB*base + zero
        ds = zero
    else:
        alpha = base*(1.0 + model.betaF*speed) + zero
        dp = zero
        ds = model.betaF*base + zero
    return DragEvaluation(_scalar_or_array(alpha), _scalar_or_array(dp),
        _scalar_or_array(ds))


def dissipation_density(alpha, v):
    """φ = α |v|²; v is a vector (last axis) or a stack of vectors."""
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha < 0):
        raise DomainError("drag coefficient must be nonnegative")
    v = np.asarray(v, dtype=float)
    return _scalar_or_array(alpha*np.sum(v*v, axis=-1))


def cell_velocity(grid, face_velocity):
    """Per-axis cell velocity: mean of the two opposing face velocities."""
    face_velocity = grid.check_face_field(face_velocity, "face velocity")
    return np.column_stack([avg.dot(face_velocity) for avg in grid.averaging])


def cell_speed(grid, face_velocity):
    return np.sqrt(np.sum(cell_velocity(grid, face_velocity)**2, axis=1))


def _permeability_of(grid, density_field):
    if isinstance(density_field, DensityField):
        k = density_field.permeability()
    else:
        k = density_field
    return grid.check_cell_field(k, "permeability")


def cell_dissipation(grid, density_field, model, flow):
    """φ_c·vol_c per cell."""
    k = _permeability_of(grid, density_field)
    pressure = grid.check_cell_field(flow.pressure, "pressure")
    velocity = cell_velocity(grid, flow.face_velocity)
    speed = np.sqrt(np.sum(velocity**2, axis=1))
    evaluation = drag(model, k, speed, pressure)
    return dissipation_density(evaluation.alpha, velocity)*grid.cell_volumes


def total_dissipation(grid, density_field, model, flow, mask=None):
    """Φ = Σ α_c |v_c|² vol_c, optionally restricted to masked cells."""
    per_cell = cell_dissipation(grid, density_field, model, flow)
    if mask is not None:
        per_cell = per_cell[grid.check_cell_field(mask, "mask") > 0]
    return float(np.sum(per_cell))
