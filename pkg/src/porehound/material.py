# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

from dataclasses import dataclass
import enum

import numpy as np

from porehound.errors import DomainError


class DragLaw(enum.Enum):
    DARCY = "darcy"
    BARUS = "barus"
    LINEARIZED_BARUS = "linearized-barus"
    DARCY_FORCHHEIMER = "darcy-forchheimer"

    @property
    def pressure_dependent(self):
        return self in (DragLaw.BARUS, DragLaw.LINEARIZED_BARUS)

    @property
    def speed_dependent(self):
        return self is DragLaw.DARCY_FORCHHEIMER

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        name = str(value).lower().replace("_", "-")
        name = LAW_ALIASES.get(name, name)
        try:
            return cls(name)
        except ValueError:
            raise DomainError("unknown drag law %r" % (value,))


LAW_ALIASES = {
    "df": "darcy-forchheimer",
    "forchheimer": "darcy-forchheimer",
    "linbarus": "linearized-barus",
    "linearized": "linearized-barus",
    "lb": "linearized-barus",
}


@dataclass(frozen=True)
class MaterialModel:
    """A drag law and its coefficients."""
    law: DragLaw = DragLaw.DARCY
    mu0: float = 1.0
    betaB: float = 0.0
    betaF: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "law", DragLaw.parse(self.law))
        if not self.mu0 > 0:
            raise DomainError("mu0 must be positive, got %r" % (self.mu0,))
        if self.betaB < 0 or self.betaF < 0:
            raise DomainError("betaB and betaF must be nonnegative, got %r, %r"
                % (self.betaB, self.betaF))

    @property
    def is_linear(self):
        """True when the drag does not depend on the flow state."""
        if self.law.pressure_dependent:
            return self.betaB == 0
        if self.law.speed_dependent:
            return self.betaF == 0
        return True

    def describe(self):
        if self.law.pressure_dependent:
            return "%s (betaB=%g)" % (self.law.value, self.betaB)
        if self.law.speed_dependent:
            return "%s (betaF=%g)" % (self.law.value, self.betaF)
        return self.law.value


def Darcy(mu0=1.0):
    return MaterialModel(DragLaw.DARCY, mu0)


def Barus(betaB, mu0=1.0):
    return MaterialModel(DragLaw.BARUS, mu0, betaB=betaB)


def LinearizedBarus(betaB, mu0=1.0):
    return MaterialModel(DragLaw.LINEARIZED_BARUS, mu0, betaB=betaB)


def DarcyForchheimer(betaF, mu0=1.0):
    return MaterialModel(DragLaw.DARCY_FORCHHEIMER, mu0, betaF=betaF)


def interpolate_permeability(rho, k_low, k_high, penal):
    """SIMP interpolation k(ρ) = kL + ρ^penal (kH − kL)."""
    rho = np.asarray(rho, dtype=float)
    return k_low + rho**penal*(k_high - k_low)


def permeability_derivative(rho, k_low, k_high, penal):
    rho = np.asarray(rho, dtype=float)
    return penal*rho**(penal - 1)*(k_high - k_low)


@dataclass(frozen=True, eq=False)
class DensityField:
    """Per-cell design densities with the two permeabilities they blend."""
    rho: np.ndarray
    k_low: float = 1.0
    k_high: float = 10.0
    penal: float = 3.0

    def __post_init__(self):
        rho = np.array(self.rho, dtype=float).ravel()
        if rho.size and (rho.min() < 0 or rho.max() > 1):
            raise DomainError("densities must lie in [0, 1], got range "
                "[%g, %g]" % (rho.min(), rho.max()))
        if not (0 < self.k_low <= self.k_high):
            raise DomainError("need 0 < kL <= kH, got %r, %r" %
                (self.k_low, self.k_high))
        if self.penal < 1:
            raise DomainError("penal must be >= 1, got %r" % (self.penal,))
        rho.flags.writeable = False
        object.__setattr__(self, "rho", rho)

    def __len__(self):
        return self.rho.size

    def permeability(self):
        return interpolate_permeability(self.rho, self.k_low, self.k_high,
            self.penal)

    def permeability_derivative(self):
        return permeability_derivative(self.rho, self.k_low, self.k_high,
            self.penal)

    def with_rho(self, rho):
        return DensityField(rho, self.k_low, self.k_high, self.penal)

    @classmethod
    def uniform(cls, ncells, value, k_low=1.0, k_high=10.0, penal=3.0):
        return cls(np.full(ncells, float(value)), k_low, k_high, penal)
