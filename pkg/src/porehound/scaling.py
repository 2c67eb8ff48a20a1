# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

"""
Reference scales for the nondimensional forms used by the closed-form
solutions.

Pressure-driven problems scale by (pressure drop, length, viscosity at the
outlet pressure); velocity-driven problems by (inlet velocity, length,
viscosity at the outlet pressure).
"""

from dataclasses import dataclass

import numpy as np

from porehound.conditions import Driving
from porehound.errors import DomainError, InvalidReferenceError
from porehound.material import DragLaw, MaterialModel


@dataclass(frozen=True)
class PhysicalParameters:
    length: float
    mu0: float = 1.0
    betaB: float = 0.0
    betaF: float = 0.0
    permeabilities: tuple = (1.0,)
    p_left: float = None
    p_right: float = 0.0
    v_left: float = None
    source: float = 0.0

    def __post_init__(self):
        if not self.length > 0:
            raise DomainError("length must be positive, got %r" %
                (self.length,))
        if not self.mu0 > 0:
            raise DomainError("mu0 must be positive, got %r" % (self.mu0,))
        object.__setattr__(self, "permeabilities",
            tuple(float(k) for k in np.atleast_1d(self.permeabilities)))


@dataclass(frozen=True)
class NondimensionalParameters:
    driving: Driving
    length_ref: float
    pressure_ref: float
    velocity_ref: float
    viscosity_ref: float
    pressure_offset: float
    betaB: float
    betaF: float
    permeabilities: tuple
    p_left: float
    p_right: float
    v_left: float
    source: float

    def pressure(self, p):
        return (np.asarray(p, dtype=float) - self.pressure_offset)/ \
            self.pressure_ref

    def velocity(self, v):
        return np.asarray(v, dtype=float)/self.velocity_ref

    def physical_pressure(self, p_bar):
        return np.asarray(p_bar, dtype=float)*self.pressure_ref + \
            self.pressure_offset

    def physical_velocity(self, v_bar):
        return np.asarray(v_bar, dtype=float)*self.velocity_ref

    def model(self, law):
        """The nondimensional material model (unit viscosity) for law."""
        return MaterialModel(DragLaw.parse(law), 1.0, self.betaB, self.betaF)

    def redimensionalize(self):
        L = self.length_ref
        pR = self.pressure_offset
        k = tuple(kb*L**2 for kb in self.permeabilities)
        source = self.source*self.velocity_ref/L
        if self.driving is Driving.PRESSURE_DRIVEN:
            betaB = self.betaB/self.pressure_ref
            betaF = self.betaF/self.velocity_ref
            mu0 = self.viscosity_ref*np.exp(-betaB*pR)
            return PhysicalParameters(L, mu0, betaB, betaF, k,
                p_left=pR + self.pressure_ref, p_right=pR, source=source)
        betaF = self.betaF/self.velocity_ref
        # betaB_bar = betaB*mu0*v_ref/L with mu0 = mu_ref/(1 + betaB*pR)
        scale = self.viscosity_ref*self.velocity_ref/L
        betaB = self.betaB/(scale - self.betaB*pR)
        mu0 = self.viscosity_ref/(1.0 + betaB*pR)
        return PhysicalParameters(L, mu0, betaB, betaF, k, p_right=pR,
            v_left=self.velocity_ref, source=source)


def nondimensionalize(params, driving):
    driving = Driving.parse(driving)
    L = params.length
    pR = params.p_right
    if driving is Driving.PRESSURE_DRIVEN:
        if params.p_left is None or params.p_left - pR == 0:
            raise InvalidReferenceError("pressure-driven scaling needs a "
                "nonzero pressure drop, got p_left=%r, p_right=%r" %
                (params.p_left, pR))
        p_ref = params.p_left - pR
        mu_ref = params.mu0*np.exp(params.betaB*pR)
        v_ref = L*p_ref/mu_ref
        betaB = params.betaB*p_ref
        betaF = params.betaF*v_ref
        p_left, p_right, v_left = 1.0, 0.0, None
    else:
        if params.v_left is None or params.v_left == 0:
            raise InvalidReferenceError("velocity-driven scaling needs a "
                "nonzero reference velocity, got v_left=%r" %
                (params.v_left,))
        v_ref = params.v_left
        mu_ref = params.mu0*(1.0 + params.betaB*pR)
        p_ref = mu_ref*v_ref/L
        betaB = params.betaB*params.mu0*v_ref/L
        betaF = params.betaF*v_ref
        p_left, p_right, v_left = None, 0.0, 1.0
    return NondimensionalParameters(
        driving=driving,
        length_ref=L,
        pressure_ref=p_ref,
        velocity_ref=v_ref,
        viscosity_ref=mu_ref,
        pressure_offset=pR,
        betaB=betaB,
        betaF=betaF,
        permeabilities=tuple(k/L**2 for k in params.permeabilities),
        p_left=p_left,
        p_right=p_right,
        v_left=v_left,
        source=params.source*L/v_ref)

