# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

"""
The mechanical power functional

    Ψ[w] = ∫ ½ α ‖w‖² − ∫ w·b + ∫_Γp (w·n̂) p0

over kinematically admissible fields, and a numerical check of whether a
solved flow makes Ψ stationary. With drag independent of the solution the
first-order coefficient of Ψ(v + εδv) vanishes; with drag depending on
|v| or p it equals ½∫(∂α/∂|v|·δ|v| + ∂α/∂p·δp)‖v‖².

Ψ uses the quadrature of the flux law: each cell contributes
½α_c Σ_f g_{c,f} F_f², so the discrete Green identity is exact.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import logging

import numpy as np

from porehound.errors import AdmissibilityError, FitConditioningError
from porehound.primal import FlowSolver

logger = logging.getLogger(__name__)

# ±ε ladder for the polynomial fit
DEFAULT_EPSILONS = tuple(np.geomspace(1e-2, 1e-4, 9))
MAX_FIT_CONDITION = 1e12
DIVERGENCE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class AdmissiblePerturbation:
    """
    A face-flux direction δF with zero divergence in every cell, optionally
    paired with a cell pressure direction δp.
    """
    grid: object
    flux: np.ndarray
    pressure: np.ndarray = None
    label: str = ""

    def __post_init__(self):
        flux = self.grid.check_face_field(self.flux, "perturbation")
        scale = max(np.max(np.abs(flux)) if flux.size else 0.0, 1.0)
        div = self.grid.divergence.dot(flux)
        if np.max(np.abs(div)) > DIVERGENCE_TOL*scale:
            raise AdmissibilityError("perturbation %r has divergence up to "
                "%g" % (self.label, np.max(np.abs(div))))
        if self.pressure is None:
            pressure = np.zeros(self.grid.ncells)
        else:
            pressure = self.grid.check_cell_field(self.pressure,
                "pressure direction")
        flux.flags.writeable = False
        pressure.flags.writeable = False
        object.__setattr__(self, "flux", flux)
        object.__setattr__(self, "pressure", pressure)

    def check_boundary(self, solver):
        """δF must vanish on every prescribed-velocity face."""
        on_velocity = self.flux[solver.velocity_face]
        if np.any(on_velocity != 0):
            raise AdmissibilityError("perturbation %r has normal flux on "
                "prescribed-velocity faces" % (self.label,))


@dataclass(frozen=True)
class MptResult:
    label: str
    a1: float
    predicted_a1: float
    a2: float
    psi: float
    falsifying_epsilon: float = None

    @property
    def relative_a1(self):
        if self.psi == 0:
            return abs(self.a1)
        return abs(self.a1/self.psi)

    @property
    def agreement(self):
        """|a1 − predicted| / |predicted|."""
        if self.predicted_a1 == 0:
            return abs(self.a1)
        return abs(self.a1 - self.predicted_a1)/abs(self.predicted_a1)


class PowerFunctional(object):
    """
    Ψ on one grid with fixed boundary data and permeability. The pressure
    feeding pressure-dependent drag is frozen (default zero) unless a
    pressure is passed per evaluation.
    """

    def __init__(self, solver, permeability, pressure=None):
        super(PowerFunctional, self).__init__()
        self.solver = solver
        self.grid = solver.grid
        self.permeability = self.grid.check_cell_field(permeability,
            "permeability")
        if pressure is None:
            pressure = np.zeros(self.grid.ncells)
        self.pressure = self.grid.check_cell_field(pressure, "pressure")

    def cell_energy(self, flux):
        """E_c = Σ_f g_{c,f} F_f²."""
        return self.grid.resistance.T.dot(flux**2)

    def check_admissible(self, flux, tol=1e-10):
        solver = self.solver
        flux = self.grid.check_face_field(flux, "field")
        res = self.grid.divergence.dot(flux) - solver.cell_source
        scale = max(np.max(np.abs(flux)), np.max(np.abs(solver.cell_source)),
            1e-300)
        bad = np.abs(res[solver.free]) > tol*scale
        if np.any(bad):
            raise AdmissibilityError("field violates continuity in %d cells" %
                np.count_nonzero(bad))
        given = solver.prescribed_flux[solver.velocity_face]
        if np.any(np.abs(flux[solver.velocity_face] - given) >
                tol*max(np.max(np.abs(given)) if given.size else 0.0, scale)):
            raise AdmissibilityError("field does not match the prescribed "
                "normal velocities")
        return flux

    def __call__(self, flux, pressure=None):
        if pressure is None:
            pressure = self.pressure
        evaluation = self.solver.drag_at(self.permeability, pressure, flux)
        dissipative = 0.5*np.sum(evaluation.alpha*self.cell_energy(flux))
        return float(dissipative - np.dot(flux, self.solver.known_drop))

    def speed_derivative(self, flux, direction):
        """Directional derivative of every cell speed along direction."""
        grid = self.grid
        area = grid.face_area
        parts = [avg.dot(flux/area) for avg in grid.averaging]
        speed = np.sqrt(np.sum(np.square(parts), axis=0))
        moving = speed > 0
        total = np.zeros(grid.ncells)
        for avg, u in zip(grid.averaging, parts):
            du = avg.dot(direction/area)
            total[moving] += u[moving]*du[moving]/speed[moving]
        return total

    def predicted_a1(self, flux, perturbation, pressure=None):
        """½ Σ_c (∂α/∂|v|·δ|v| + ∂α/∂p·δp)_c E_c."""
        if pressure is None:
            pressure = self.pressure
        evaluation = self.solver.drag_at(self.permeability, pressure, flux)
        ds = self.speed_derivative(flux, perturbation.flux)
        rate = (evaluation.d_alpha_d_speed*ds +
            evaluation.d_alpha_d_p*perturbation.pressure)
        return float(0.5*np.sum(rate*self.cell_energy(flux)))


def psi(grid, flux, model, permeability, bcs, body_force=None, source=0.0,
        pressure=None):
    """Ψ of an admissible face-flux field w."""
    solver = FlowSolver(grid, model, bcs, source, body_force=body_force)
    functional = PowerFunctional(solver, permeability, pressure)
    return functional(functional.check_admissible(flux))


def fit_coefficients(epsilons, values):
    """Least-squares a1, a2, a3 in Ψ(ε) − Ψ(0) ≈ a1 ε + a2 ε² + a3 ε³."""
    eps = np.asarray(epsilons, dtype=float)
    A = np.column_stack([eps, eps**2, eps**3])
    scale = np.max(np.abs(A), axis=0)
    scaled = A/scale
    cond = np.linalg.cond(scaled)
    if not np.isfinite(cond) or cond > MAX_FIT_CONDITION:
        raise FitConditioningError("epsilon fit is ill-conditioned "
            "(condition number %g)" % cond)
    coef = np.linalg.lstsq(scaled, np.asarray(values, dtype=float),
        rcond=None)[0]
    return coef/scale


def _check_one(functional, solution, perturbation, epsilons):
    perturbation.check_boundary(functional.solver)
    flux = solution.face_flux
    pressure = solution.pressure
    psi0 = functional(flux, pressure)
    ladder = np.concatenate([np.asarray(epsilons), -np.asarray(epsilons)])
    values = np.array([functional(flux + e*perturbation.flux,
        pressure + e*perturbation.pressure) - psi0 for e in ladder])
    a1, a2, _ = fit_coefficients(ladder, values)
    predicted = functional.predicted_a1(flux, perturbation, pressure)
    falsifying = None
    if a1 != 0:
        for e, value in zip(ladder, values):
            if np.sign(e) == -np.sign(a1) and value < 0:
                falsifying = float(e)
                break
    logger.debug("perturbation %r: a1=%.6e predicted=%.6e a2=%.6e",
        perturbation.label, a1, predicted, a2)
    return MptResult(perturbation.label, float(a1), predicted, float(a2),
        psi0, falsifying)


def mpt_stationarity_check(model, solution, perturbations, epsilons=None, *,
        permeability, bcs, body_force=None, source=0.0, workers=None):
    """
    Fit Ψ(v + εδv, p + εδp) over the ±ε ladder for each perturbation and
    compare the first-order coefficient with its predicted value.
    """
    if epsilons is None:
        epsilons = DEFAULT_EPSILONS
    solver = FlowSolver(solution.grid, model, bcs, source,
        body_force=body_force)
    functional = PowerFunctional(solver, permeability, solution.pressure)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(
            lambda pert: _check_one(functional, solution, pert, epsilons),
            perturbations))


def flux_perturbation(grid, bcs, amplitude=1.0, pressure=None):
    """Constant flux through a 1D or radial grid with pressure on both ends."""
    if grid.ndim != 1:
        raise AdmissibilityError("flux perturbations need a 1D or radial grid")
    for tag in grid.tags:
        if not bcs[tag].is_pressure:
            raise AdmissibilityError("a prescribed velocity on %r fixes the "
                "through-flux; only pressure directions are admissible" %
                (tag,))
    return AdmissiblePerturbation(grid, np.full(grid.nfaces, float(amplitude)),
        pressure, "flux")


def pressure_perturbation(grid, mode=1, amplitude=1.0):
    """δF = 0 with δp = sin(mode·π·x̂) on the cells of a 1D/radial grid."""
    if grid.ndim != 1:
        raise AdmissibilityError("pressure perturbations need a 1D or radial "
            "grid")
    low, high = grid.extents[0]
    s = (grid.centers[0] - low)/(high - low)
    return AdmissiblePerturbation(grid, np.zeros(grid.nfaces),
        amplitude*np.sin(mode*np.pi*s), "pressure-%d" % mode)


def _require_2d(grid):
    if grid.ndim != 2:
        raise AdmissibilityError("stream-function perturbations need a 2D "
            "grid")


def stream_fluxes(grid, stream):
    """Face fluxes of the discrete curl of a nodal stream function."""
    _require_2d(grid)
    nx, ny = grid.cells
    stream = np.asarray(stream, dtype=float)
    if stream.shape != (ny + 1, nx + 1):
        raise AdmissibilityError("stream function must have shape %r, got %r"
            % ((ny + 1, nx + 1), stream.shape))
    fx = stream[1:, :] - stream[:-1, :]
    fy = -(stream[:, 1:] - stream[:, :-1])
    return np.concatenate([fx.ravel(), fy.ravel()])


def stream_perturbation(grid, bcs, stream, label="stream"):
    pert = AdmissiblePerturbation(grid, stream_fluxes(grid, stream),
        label=label)
    _check_velocity_faces(grid, bcs, pert)
    return pert


def _check_velocity_faces(grid, bcs, pert):
    for tag, bc in bcs.items():
        if not bc.is_pressure and np.any(pert.flux[grid.faces_with_tag(tag)]):
            raise AdmissibilityError("perturbation %r crosses the velocity "
                "boundary %r" % (pert.label, tag))


def _node_coordinates(grid):
    (x0, x1), (y0, y1) = grid.extents
    xe, ye = grid.edges
    return np.meshgrid((xe - x0)/(x1 - x0), (ye - y0)/(y1 - y0))


def sinusoidal_perturbation(grid, bcs, m=1, n=1, amplitude=1.0):
    """Stream function sin(mπx̂)·sin(nπŷ), zero on the whole boundary."""
    _require_2d(grid)
    X, Y = _node_coordinates(grid)
    stream = amplitude*np.sin(m*np.pi*X)*np.sin(n*np.pi*Y)
    stream[0, :] = stream[-1, :] = 0.0
    stream[:, 0] = stream[:, -1] = 0.0
    return stream_perturbation(grid, bcs, stream, "sine-%d-%d" % (m, n))


def through_flow_perturbation(grid, bcs, modulation=0.0, amplitude=1.0):
    """
    Unit flux entering through the pressure faces on the left side and
    leaving through the right side, plus an optional sinusoidal swirl.
    The pressure faces of both sides must cover the same rows.
    """
    _require_2d(grid)
    left, _ = grid.side_faces("left")
    pressure_left = np.array([bcs[grid.face_tag[f]].is_pressure
        for f in left], dtype=float)
    dy = np.diff(grid.edges[1])
    weights = pressure_left*dy
    if weights.sum() == 0:
        raise AdmissibilityError("no pressure faces on the left side")
    ramp = np.concatenate([[0.0], np.cumsum(weights)])/weights.sum()
    nx = grid.cells[0]
    stream = amplitude*np.repeat(ramp[:, None], nx + 1, axis=1)
    if modulation:
        X, Y = _node_coordinates(grid)
        swirl = modulation*np.sin(np.pi*X)*np.sin(np.pi*Y)
        swirl[0, :] = swirl[-1, :] = 0.0
        swirl[:, 0] = swirl[:, -1] = 0.0
        stream = stream + swirl
    return stream_perturbation(grid, bcs, stream, "through-flow")


def default_perturbations(grid, bcs, count=5):
    """A family of admissible perturbations suited to the grid."""
    if grid.ndim == 1:
        perts = []
        try:
            perts.append(flux_perturbation(grid, bcs))
        except AdmissibilityError:
            pass
        mode = 1
        while len(perts) < count:
            perts.append(pressure_perturbation(grid, mode))
            mode += 1
        return perts
    modes = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (1, 3), (3, 2), (2, 3)]
    perts = []
    try:
        perts.append(through_flow_perturbation(grid, bcs, modulation=0.5))
    except AdmissibilityError:
        pass
    for m, n in modes:
        if len(perts) >= count:
            break
        perts.append(sinusoidal_perturbation(grid, bcs, m, n))
    return perts
