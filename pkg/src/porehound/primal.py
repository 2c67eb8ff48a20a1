# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

"""
Finite-volume solver for Darcy-type flow with a volumetric source.

Unknowns are cell pressures and face fluxes F = v·A (along +axis). Each face
obeys the resistance form of the momentum balance

    F_f·r_f = Δp_f + b·d_f,     r_f = Σ g_{c,f}·α_c

where Δp_f is the pressure drop across the face, g the half-cell geometric
resistances and d_f the centre-to-centre distance; this is the harmonic
mean of the face mobility. Continuity is D·F = Q·vol per cell. Nonlinear
drag laws freeze α at the previous iterate and repeat (Picard).
"""

from dataclasses import dataclass
import logging

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from porehound.conditions import check_conditions
from porehound.drag import cell_speed, drag
from porehound.errors import (DomainError, InvalidPermeabilityError,
    PicardDivergenceError, ShapeError)
from porehound.utilities import as_cell_array

logger = logging.getLogger(__name__)

LINEAR_SOLVERS = ("auto", "direct", "cg")
MIN_RELAXATION = 0.05
# Consecutive growing Picard changes before the relaxation is halved.
RISING_LIMIT = 3


@dataclass(frozen=True)
class SolverSettings:
    picard_tol: float = 1e-10
    picard_max_iter: int = 200
    linear_tol: float = 1e-12
    relaxation: float = None
    linear_solver: str = "auto"

    def __post_init__(self):
        if not (self.picard_tol > 0 and self.linear_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.picard_max_iter < 1:
            raise DomainError("picard_max_iter must be at least 1, got %r" %
                (self.picard_max_iter,))
        if self.relaxation is not None and not (0 < self.relaxation <= 1):
            raise DomainError("relaxation must lie in (0, 1], got %r" %
                (self.relaxation,))
        if self.linear_solver not in LINEAR_SOLVERS:
            raise DomainError("linear_solver must be one of %s, got %r" %
                (", ".join(LINEAR_SOLVERS), self.linear_solver))

    def relaxation_for(self, model):
        """Explicit relaxation, else 0.7 for the pressure-dependent laws."""
        if self.relaxation is not None:
            return self.relaxation
        if model.law.pressure_dependent and model.betaB > 0:
            return 0.7
        return 1.0


@dataclass(frozen=True, eq=False)
class FlowState:
    """One converged primal solve."""
    grid: object
    pressure: np.ndarray
    face_flux: np.ndarray
    picard_iterations: int
    residual_norm: float
    residual_history: tuple
    alpha: np.ndarray
    cell_source: np.ndarray
    free: np.ndarray

    @property
    def face_velocity(self):
        return self.face_flux/self.grid.face_area

    def speed(self):
        return cell_speed(self.grid, self.face_velocity)

    def outflow(self, tag=None):
        """Net outward flux through the faces tagged tag (all if None)."""
        if tag is None:
            faces = self.grid.boundary_faces
        else:
            faces = self.grid.faces_with_tag(tag)
        return float(np.sum(self.face_flux[faces]*
            self.grid.face_outward[faces]))

    def continuity_residual(self):
        """D·F − Q·vol per cell; pinned cells report zero."""
        res = self.grid.divergence.dot(self.face_flux) - self.cell_source
        return np.where(self.free, res, 0.0)

    def mass_balance(self):
        """
        Global imbalance over the cells carrying continuity, relative to
        the largest of the boundary throughput and the total source.
        """
        imbalance = abs(np.sum(self.continuity_residual()))
        faces = self.grid.boundary_faces
        scale = max(np.sum(np.abs(self.face_flux[faces])),
            np.sum(np.abs(self.cell_source[self.free])))
        if scale == 0:
            return float(imbalance)
        return float(imbalance/scale)


class FlowSolver(object):
    """
    Holds the boundary data of a problem on a grid, so repeated solves
    with different permeabilities (optimizer iterations) reuse it.

    pinned is None or a per-cell array of prescribed pressures with NaN in
    the free cells.
    """

    def __init__(self, grid, model, bcs, source=0.0, settings=None,
            body_force=None, pinned=None):
        super(FlowSolver, self).__init__()
        self.grid = grid
        self.model = model
        self.bcs = dict(bcs)
        self.settings = settings or SolverSettings()
        if pinned is None:
            pinned = np.full(grid.ncells, np.nan)
        self.pinned_pressure = grid.check_cell_field(pinned, "pinned")
        self.pinned = ~np.isnan(self.pinned_pressure)
        self.free = ~self.pinned
        check_conditions(grid, self.bcs, pinned=bool(self.pinned.any()))
        self.source = as_cell_array(source, grid.ncells, "source")
        self.cell_source = self.source*grid.cell_volumes

        nf = grid.nfaces
        self.velocity_face = np.zeros(nf, dtype=bool)
        self.boundary_drop = np.zeros(nf)
        self.prescribed_flux = np.zeros(nf)
        for tag, bc in self.bcs.items():
            faces = grid.faces_with_tag(tag)
            if bc.is_pressure:
                # +p0 on the low side of the domain, -p0 on the high side
                self.boundary_drop[faces] = -bc.value*grid.face_outward[faces]
            else:
                self.velocity_face[faces] = True
                self.prescribed_flux[faces] = (bc.value*grid.face_area[faces]*
                    grid.face_outward[faces])
        self.pressure_face = ~self.velocity_face

        if body_force is None:
            body_force = np.zeros(grid.ndim)
        body_force = np.asarray(body_force, dtype=float).ravel()
        if body_force.size != grid.ndim:
            raise ShapeError("body force needs %d components, got %d" %
                (grid.ndim, body_force.size))
        self.body_force = body_force
        self.body_drop = body_force[grid.face_axis]*grid.face_distance

        D = grid.divergence.tocsc()
        self._D_pressure = D[:, self.pressure_face]
        self._velocity_source = D[:, self.velocity_face].dot(
            self.prescribed_flux[self.velocity_face])

    @property
    def known_drop(self):
        """Boundary pressure and body-force parts of each face's drop."""
        return self.boundary_drop + self.body_drop

    def face_resistance(self, alpha):
        return self.grid.resistance.dot(alpha)

    def drag_at(self, k, pressure, face_flux):
        speed = cell_speed(self.grid, face_flux/self.grid.face_area)
        return drag(self.model, k, speed, pressure)

    def _linear_solve(self, K, rhs):
        method = self.settings.linear_solver
        if method == "auto":
            method = "cg" if self.grid.ndim == 2 else "direct"
        if method == "direct":
            return np.atleast_1d(spla.spsolve(K.tocsc(), rhs))
        diag = K.diagonal()
        M = sp.diags(1.0/diag)
        x, info = spla.cg(K, rhs, rtol=self.settings.linear_tol, atol=0.0,
            maxiter=10*K.shape[0], M=M)
        if info != 0:
            logger.warning("CG did not converge (info=%d); falling back to a "
                "direct solve", info)
            return np.atleast_1d(spla.spsolve(K.tocsc(), rhs))
        return x

    def solve_frozen(self, alpha):
        """Pressure and face flux for a fixed per-cell drag α."""
        mobility = 1.0/self.face_resistance(alpha)[self.pressure_face]
        Dp = self._D_pressure
        K = (Dp.dot(sp.diags(mobility)).dot(Dp.T)).tocsr()
        known = self.known_drop[self.pressure_face]
        rhs = self.cell_source - self._velocity_source - Dp.dot(
            mobility*known)
        p = np.where(self.pinned, self.pinned_pressure, 0.0)
        free = self.free
        if free.any():
            if self.pinned.any():
                rhs_free = rhs[free] - K[free][:, self.pinned].dot(
                    p[self.pinned])
                K_free = K[free][:, free]
            else:
                rhs_free, K_free = rhs, K
            p[free] = self._linear_solve(K_free, rhs_free)
        flux = self.prescribed_flux.copy()
        flux[self.pressure_face] = mobility*(Dp.T.dot(p) + known)
        return p, flux

    def _state(self, k, p, flux, iterations, history):
        alpha = self.drag_at(k, p, flux).alpha
        residual = history[-1] if history else 0.0
        return FlowState(self.grid, p, flux, iterations, float(residual),
            tuple(history), np.asarray(alpha, dtype=float)*np.ones(k.size),
            self.cell_source, self.free)

    def solve(self, permeability, warm_start=None):
        """
        Solve for the per-cell permeability. A warm start (a FlowState)
        seeds the drag of the first Picard step; otherwise the first step is
        the Darcy solve.
        """
        k = self.grid.check_cell_field(permeability, "permeability")
        if np.any(k <= 0):
            raise InvalidPermeabilityError("permeability must be positive, "
                "got min %g" % np.min(k))
        if warm_start is None:
            alpha = np.asarray(drag(self.model, k).alpha)*np.ones(k.size)
            p_prev = np.zeros(k.size)
            flux_prev = np.zeros(self.grid.nfaces)
        else:
            alpha = self.drag_at(k, warm_start.pressure,
                warm_start.face_flux).alpha
            p_prev = warm_start.pressure
            flux_prev = warm_start.face_flux
        if self.model.is_linear:
            p, flux = self.solve_frozen(alpha)
            return self._state(k, p, flux, 1, [])

        settings = self.settings
        omega = settings.relaxation_for(self.model)
        history = []
        rising = 0
        for iteration in range(1, settings.picard_max_iter + 1):
            p, flux = self.solve_frozen(alpha)
            if not (np.all(np.isfinite(p)) and np.all(np.isfinite(flux))):
                raise PicardDivergenceError("Picard iterate %d is not finite" %
                    iteration, history)
            change = max(_relative_change(p, p_prev),
                _relative_change(flux, flux_prev))
            logger.debug("Picard %d: change %.3e (relaxation %.3g)",
                iteration, change, omega)
            if history and change > history[-1]:
                rising += 1
            else:
                rising = 0
            history.append(change)
            if change < settings.picard_tol:
                return self._state(k, p, flux, iteration, history)
            if rising >= RISING_LIMIT and omega > MIN_RELAXATION:
                omega = max(0.5*omega, MIN_RELAXATION)
                rising = 0
                logger.warning("Picard change grew for %d iterations; "
                    "relaxation lowered to %.3g", RISING_LIMIT, omega)
            fresh = self.drag_at(k, p, flux).alpha
            alpha = (1.0 - omega)*alpha + omega*fresh
            p_prev, flux_prev = p, flux
        raise PicardDivergenceError("Picard iteration did not converge in %d "
            "iterations (last change %.3e)" % (settings.picard_max_iter,
            history[-1]), history)


def _relative_change(new, old):
    scale = np.linalg.norm(new)
    diff = np.linalg.norm(new - old)
    if scale == 0:
        return float(diff)
    return float(diff/scale)


def solve_flow(grid, permeability, model, bcs, source=0.0, settings=None,
        body_force=None, pinned=None, warm_start=None):
    solver = FlowSolver(grid, model, bcs, source, settings, body_force,
        pinned)
    return solver.solve(permeability, warm_start)


def solve_flow_radial(grid, permeability, model, bcs, source=0.0,
        settings=None, body_force=None, warm_start=None):
    if not grid.is_radial:
        raise DomainError("solve_flow_radial needs a cylindrical or "
            "spherical grid, got %s" % grid.geometry)
    return solve_flow(grid, permeability, model, bcs, source, settings,
        body_force, warm_start=warm_start)
