# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

"""
Closed-form solutions for single-interface layouts in a slab, a cylindrical
annulus and a spherical shell, plus the optimal interface locations.

Every layout here is a series of two resistances. With the pressure
transform G(p) = ∫₀ᵖ dq/f(q), where the viscosity factor f is 1, exp(βB q)
or 1 + βB q, the pressure obeys

    G(p(x)) = G(p_in) − μ0·C·R(x)

with R the cumulative resistance ∫dx/(k·w) (w = 1, r or r²) and C the flow
constant (v = C, C/r or C/r²). C is positive for flow from the inner/left
boundary outwards.
"""

from dataclasses import dataclass, replace
import logging

import numpy as np

from porehound.conditions import Driving
from porehound.errors import DomainError, UnsupportedCombinationError
from porehound.grid import (INTERVAL_1D, RADIAL_CYLINDRICAL, RADIAL_SPHERICAL,
    geometric_resistance)
from porehound.material import Darcy, DragLaw

logger = logging.getLogger(__name__)

# Below this |β| the transforms use their two-term series.
SERIES_BETA = 1e-8

HIGH_INNER = "high-permeability inner"
HIGH_OUTER = "high-permeability outer"

# 2π·(geometric resistance) turns into ∫dr/r, 4π· into ∫dr/r².
METRIC = {INTERVAL_1D: 1.0, RADIAL_CYLINDRICAL: 2*np.pi,
    RADIAL_SPHERICAL: 4*np.pi}


@dataclass(frozen=True)
class InterfaceLayout1D:
    xi: float
    k1: float
    k2: float

    def __post_init__(self):
        if not (0.0 < self.xi < 1.0):
            raise DomainError("interface must lie in (0, 1), got xi=%r" %
                (self.xi,))
        _check_permeabilities(self.k1, self.k2)


@dataclass(frozen=True)
class AnnulusLayout:
    r_i: float
    r_o: float
    xi: float
    k1: float
    k2: float

    def __post_init__(self):
        _check_radii(self.r_i, self.r_o, self.xi)
        _check_permeabilities(self.k1, self.k2)


@dataclass(frozen=True)
class ShellLayout:
    """Spherical shell r_i <= r <= 1."""
    r_i: float
    xi: float
    k1: float
    k2: float

    def __post_init__(self):
        _check_radii(self.r_i, 1.0, self.xi)
        _check_permeabilities(self.k1, self.k2)

    @property
    def r_o(self):
        return 1.0


@dataclass(frozen=True)
class InterfaceOptimum:
    """
    Optimal interface for both placements of the high-permeability material.
    For annuli the values are the minimal resistances Υ, for shells the
    maximal dissipation Φ.
    """
    xi_hat: float
    xi_hat_outer: float
    inner_value: float
    outer_value: float
    verdict: str


def _check_radii(r_i, r_o, xi):
    if not (0.0 < r_i < r_o):
        raise DomainError("need 0 < r_i < r_o, got r_i=%r, r_o=%r" %
            (r_i, r_o))
    if not (r_i <= xi <= r_o):
        raise DomainError("interface xi=%r outside [%r, %r]" % (xi, r_i, r_o))


def _check_permeabilities(k1, k2):
    if not (k1 > 0 and k2 > 0):
        raise DomainError("permeabilities must be positive, got %r, %r" %
            (k1, k2))


def _check_gamma(gamma):
    if not (0.0 <= gamma <= 1.0):
        raise DomainError("volume fraction must lie in [0, 1], got %r" %
            (gamma,))


class SeriesResistance(object):
    """Cumulative resistance R(x) of a two-material layout on [lo, hi]."""

    def __init__(self, geometry, lo, hi, xi, k1, k2):
        super(SeriesResistance, self).__init__()
        self.geometry = geometry
        self.lo = float(lo)
        self.hi = float(hi)
        self.xi = float(xi)
        self.k1 = float(k1)
        self.k2 = float(k2)
        self.metric = METRIC[geometry]

    def part(self, a, b):
        return self.metric*geometric_resistance(self.geometry, a, b)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        inner = np.minimum(x, self.xi)
        outer = np.maximum(x, self.xi)
        return (self.part(self.lo, inner)/self.k1 +
            np.where(x > self.xi, self.part(self.xi, outer)/self.k2, 0.0))

    @property
    def total(self):
        return float(self.part(self.lo, self.xi)/self.k1 +
            self.part(self.xi, self.hi)/self.k2)


def _transforms(model):
    """(G, G⁻¹) for the viscosity factor of model."""
    beta = model.betaB
    law = model.law
    if not law.pressure_dependent or beta == 0:
        return (lambda p: np.asarray(p, dtype=float),
            lambda g: np.asarray(g, dtype=float))
    if abs(beta) < SERIES_BETA:
        # both laws agree to second order
        return (lambda p: p - 0.5*beta*np.square(p),
            lambda g: g + 0.5*beta*np.square(g))
    if law is DragLaw.BARUS:
        return (lambda p: -np.expm1(-beta*np.asarray(p, dtype=float))/beta,
            lambda g: -np.log1p(-beta*np.asarray(g, dtype=float))/beta)
    return (lambda p: np.log1p(beta*np.asarray(p, dtype=float))/beta,
        lambda g: np.expm1(beta*np.asarray(g, dtype=float))/beta)


class AnalyticSolution(object):
    """
    A closed-form flow through a two-material layout.

    constant is C (slab, annulus: v = C, C/r) or A (shell: v = A/r²);
    pressure(x) and velocity(x) evaluate the profiles; phi is the total
    dissipation (per unit length for the annulus).
    """

    def __init__(self, resistance, model, driving, constant, p_in, p_out,
            drag_factor=1.0):
        super(AnalyticSolution, self).__init__()
        self.resistance = resistance
        self.model = model
        self.driving = driving
        self.constant = float(constant)
        self.p_in = float(p_in)
        self.p_out = float(p_out)
        self._drag_factor = drag_factor
        self._G, self._Ginv = _transforms(model)
        self._g_in = self._G(self.p_in)

    @property
    def geometry(self):
        return self.resistance.geometry

    @property
    def xi(self):
        return self.resistance.xi

    @property
    def phi(self):
        return float(self.resistance.metric*self.constant*
            (self.p_in - self.p_out))

    def velocity(self, x):
        x = np.asarray(x, dtype=float)
        if self.geometry == RADIAL_CYLINDRICAL:
            return self.constant/x
        if self.geometry == RADIAL_SPHERICAL:
            return self.constant/x**2
        return np.full_like(x, self.constant)

    def pressure(self, x):
        mu = self.model.mu0*self._drag_factor
        return self._Ginv(self._g_in - mu*self.constant*self.resistance(x))

    def pressure_jump(self):
        """|p(ξ⁻) − p(ξ⁺)| evaluated from both closed-form branches."""
        xi = self.xi
        mu = self.model.mu0*self._drag_factor
        left = self._Ginv(self._g_in - mu*self.constant*
            self.resistance.part(self.resistance.lo, xi)/self.resistance.k1)
        right = self._Ginv(self._G(self.p_out) + mu*self.constant*
            self.resistance.part(xi, self.resistance.hi)/self.resistance.k2)
        return float(abs(left - right))

    def __repr__(self):
        return "AnalyticSolution(%s, %s, C=%r, phi=%r)" % (self.geometry,
            self.model.describe(), self.constant, self.phi)


def _solve_series(resistance, model, driving, p_in=None, p_out=0.0,
        flux=None):
    """Pressure- or velocity-driven flow through a series layout."""
    driving = Driving.parse(driving)
    law = model.law
    R = resistance.total
    mu = model.mu0
    if law is DragLaw.DARCY_FORCHHEIMER:
        if resistance.geometry != INTERVAL_1D:
            raise UnsupportedCombinationError("Darcy-Forchheimer closed forms "
                "exist only for the slab")
        if driving is Driving.PRESSURE_DRIVEN:
            drop = p_in - p_out
            s = 4*model.betaF*abs(drop)/(mu*R)
            # "+" root, written without cancellation
            C = np.sign(drop)*(2*abs(drop)/(mu*R))/(1.0 + np.sqrt(1.0 + s))
        else:
            C = flux
        factor = 1.0 + model.betaF*abs(C)
        if driving is Driving.VELOCITY_DRIVEN:
            p_in = p_out + mu*factor*C*R
        return AnalyticSolution(resistance, model, driving, C, p_in, p_out,
            drag_factor=factor)
    G, Ginv = _transforms(model)
    if driving is Driving.PRESSURE_DRIVEN:
        C = (G(p_in) - G(p_out))/(mu*R)
    else:
        if law is DragLaw.BARUS and model.betaB > 0:
            raise UnsupportedCombinationError("the Barus law has no "
                "velocity-driven solution in general; use linearized Barus")
        C = flux
        p_in = Ginv(G(p_out) + mu*C*R)
    return AnalyticSolution(resistance, model, driving, C, p_in, p_out)


def upsilon_1d(xi, k1, k2):
    layout = InterfaceLayout1D(xi, k1, k2)
    return layout.xi/layout.k1 + (1.0 - layout.xi)/layout.k2


def solve_1d(model, driving, layout, p_left=1.0, p_right=0.0, v_left=1.0):
    """
    Slab [0, 1] with k1 on [0, ξ] and k2 on [ξ, 1]. Pressure-driven flows
    use p(0)=p_left, p(1)=p_right; velocity-driven ones v(0)=v_left and
    p(1)=p_right.
    """
    resistance = SeriesResistance(INTERVAL_1D, 0.0, 1.0, layout.xi,
        layout.k1, layout.k2)
    return _solve_series(resistance, model, driving, p_left, p_right, v_left)


def upsilon_2d(layout):
    return (np.log(layout.xi/layout.r_i)/layout.k1 +
        np.log(layout.r_o/layout.xi)/layout.k2)


def solve_annulus(layout, driving, p_i=None, p_o=None, v_o=None, mu=1.0,
        model=None):
    """
    Radial flow in r_i <= r <= r_o with k1 inside ξ. Pressure-driven flows
    prescribe p_i and p_o; velocity-driven ones v_r(r_i) = v_o and p_o
    (default 0).
    """
    model = Darcy(mu) if model is None else replace(model, mu0=mu)
    driving = Driving.parse(driving)
    resistance = SeriesResistance(RADIAL_CYLINDRICAL, layout.r_i, layout.r_o,
        layout.xi, layout.k1, layout.k2)
    if driving is Driving.PRESSURE_DRIVEN:
        if p_i is None or p_o is None:
            raise DomainError("pressure-driven annulus needs p_i and p_o")
        return _solve_series(resistance, model, driving, p_i, p_o)
    if v_o is None:
        raise DomainError("velocity-driven annulus needs v_o")
    return _solve_series(resistance, model, driving, None,
        0.0 if p_o is None else p_o, v_o*layout.r_i)


def upsilon_3d(layout):
    """The shell constant A for p(r_i)=1, p(1)=0."""
    resistance = SeriesResistance(RADIAL_SPHERICAL, layout.r_i, 1.0,
        layout.xi, layout.k1, layout.k2)
    return 1.0/resistance.total


def solve_sphere(layout, driving=Driving.PRESSURE_DRIVEN, p_i=1.0, p_o=0.0,
        v_o=None, model=None):
    """Spherical shell r_i <= r <= 1 with k1 inside ξ (unit viscosity)."""
    model = Darcy() if model is None else model
    driving = Driving.parse(driving)
    resistance = SeriesResistance(RADIAL_SPHERICAL, layout.r_i, 1.0,
        layout.xi, layout.k1, layout.k2)
    if driving is Driving.PRESSURE_DRIVEN:
        return _solve_series(resistance, model, driving, p_i, p_o)
    if v_o is None:
        raise DomainError("velocity-driven shell needs v_o")
    return _solve_series(resistance, model, driving, None, p_o,
        v_o*layout.r_i**2)


def optimal_interface_2d(gamma, r_i, r_o, k_low=1.0, k_high=10.0):
    """
    Interface radius holding volume fraction γ of high-permeability
    material, for the high material inside (ξ̂) or outside (ξ̂⁽²⁾), with the
    resistance Υ₂D of each placement.
    """
    _check_gamma(gamma)
    _check_radii(r_i, r_o, r_i)
    xi1 = np.sqrt((1.0 - gamma)*r_i**2 + gamma*r_o**2)
    xi2 = np.sqrt(gamma*r_i**2 + (1.0 - gamma)*r_o**2)
    xi1 = float(np.clip(xi1, r_i, r_o))
    xi2 = float(np.clip(xi2, r_i, r_o))
    # log(b/a) as log1p((b² − a²)/((a + b)·a)) with b² − a² taken from γ, so
    # thin annuli keep full relative precision
    span = (r_o - r_i)*(r_o + r_i)
    inner = float(np.log1p(gamma*span/((xi1 + r_i)*r_i))/k_high +
        np.log1p((1.0 - gamma)*span/((r_o + xi1)*xi1))/k_low)
    outer = float(np.log1p((1.0 - gamma)*span/((xi2 + r_i)*r_i))/k_low +
        np.log1p(gamma*span/((r_o + xi2)*xi2))/k_high)
    verdict = HIGH_INNER if inner <= outer else HIGH_OUTER
    return InterfaceOptimum(xi1, xi2, inner, outer, verdict)


def _shell_phi(r_i, xi, k_in, k_out):
    return 4*np.pi/(1.0/(k_in*r_i) - 1.0/k_out + (1.0/k_out - 1.0/k_in)/xi)


def optimal_interface_3d(gamma, r_i, k_low=1.0, k_high=10.0):
    """As optimal_interface_2d for the unit shell; values are Φ maxima."""
    _check_gamma(gamma)
    _check_radii(r_i, 1.0, r_i)
    xi1 = float(np.clip(np.cbrt(gamma + (1.0 - gamma)*r_i**3), r_i, 1.0))
    xi2 = float(np.clip(np.cbrt((1.0 - gamma) + gamma*r_i**3), r_i, 1.0))
    inner = float(_shell_phi(r_i, xi1, k_high, k_low))
    outer = float(_shell_phi(r_i, xi2, k_low, k_high))
    verdict = HIGH_INNER if inner >= outer else HIGH_OUTER
    return InterfaceOptimum(xi1, xi2, inner, outer, verdict)


def _cube_gap(a, b):
    """a·b·(a² + ab + b²); written symmetrically so equal pairs cancel."""
    return a*b*(a*a + a*b + b*b)


def lemma_gap(gamma, r_i):
    """
    1 + 1/r_i − (1/ξ̂⁽¹⁾ + 1/ξ̂⁽²⁾) for the unit shell. Evaluated as
    γ(1 − r_i³)[1/(r_i ξ̂⁽¹⁾(…)) − 1/(ξ̂⁽²⁾(…))] so the endpoints give 0
    without cancellation.
    """
    _check_gamma(gamma)
    if not r_i > 0:
        raise DomainError("r_i must be positive, got %r" % (r_i,))
    xi1 = np.cbrt(gamma + (1.0 - gamma)*r_i**3)
    xi2 = np.cbrt((1.0 - gamma) + gamma*r_i**3)
    scale = gamma*(1.0 - r_i**3)
    return float(scale*(1.0/_cube_gap(r_i, xi1) - 1.0/_cube_gap(xi2, 1.0)))
