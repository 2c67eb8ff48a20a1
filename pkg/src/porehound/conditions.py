# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

"""
Boundary conditions, applied per boundary tag, and the driving regime they
imply.
"""

from dataclasses import dataclass
import enum

import numpy as np

from porehound.errors import DomainError, IllPosedError

PRESSURE = "pressure"
VELOCITY = "velocity"


class Driving(enum.Enum):
    PRESSURE_DRIVEN = "pressure"
    VELOCITY_DRIVEN = "velocity"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower().replace("-driven", ""))
        except ValueError:
            raise DomainError("unknown driving %r (pressure or velocity)" %
                (value,))


class Direction(enum.Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"

    @property
    def sign(self):
        """Multiplier turning Φ into the quantity that is minimized."""
        return -1.0 if self is Direction.MAXIMIZE else 1.0

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError("unknown direction %r (maximize or minimize)" %
                (value,))


@dataclass(frozen=True)
class BoundaryCondition:
    """
    kind is PRESSURE (value = p0) or VELOCITY (value = vn, the outward
    normal velocity; inflow is negative).
    """
    kind: str
    value: float = 0.0

    def __post_init__(self):
        if self.kind not in (PRESSURE, VELOCITY):
            raise DomainError("unknown boundary condition kind %r" %
                (self.kind,))
        if not np.isfinite(self.value):
            raise DomainError("boundary value must be finite, got %r" %
                (self.value,))

    @property
    def is_pressure(self):
        return self.kind == PRESSURE


def PrescribedPressure(p0):
    return BoundaryCondition(PRESSURE, float(p0))


def PrescribedNormalVelocity(vn):
    return BoundaryCondition(VELOCITY, float(vn))


def check_conditions(grid, bcs, pinned=False):
    """
    Every tag on the grid must carry exactly one condition and at least one
    pressure condition must act on some face (or pinned cells must exist).
    """
    tags = set(grid.tags)
    missing = tags - set(bcs)
    if missing:
        raise DomainError("no boundary condition for tags %s" %
            ", ".join(sorted(missing)))
    unknown = set(bcs) - tags
    if unknown:
        raise DomainError("conditions given for unknown tags %s" %
            ", ".join(sorted(unknown)))
    pressure_faces = sum(grid.faces_with_tag(tag).size
        for tag, bc in bcs.items() if bc.is_pressure)
    if pressure_faces == 0 and not pinned:
        raise IllPosedError("no prescribed pressure on any boundary face; "
            "pressure would be determined only up to a constant")


def driving_of(bcs):
    """Velocity-driven when any nonzero inflow velocity is prescribed."""
    for bc in bcs.values():
        if bc.kind == VELOCITY and bc.value < 0:
            return Driving.VELOCITY_DRIVEN
    return Driving.PRESSURE_DRIVEN


def default_direction(bcs):
    """Minimize under any prescribed inflow, pressures or not; else maximize."""
    if driving_of(bcs) is Driving.VELOCITY_DRIVEN:
        return Direction.MINIMIZE
    return Direction.MAXIMIZE
