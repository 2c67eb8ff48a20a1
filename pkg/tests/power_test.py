# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import numpy as np
import pytest

from porehound import power
from porehound.conditions import PrescribedNormalVelocity
from porehound.errors import AdmissibilityError, FitConditioningError
from porehound.material import Barus, Darcy, DarcyForchheimer
from porehound.primal import solve_flow
from .testutils import eq_, close_, gt_, lt_, includes_
from . import mock_objects


def _solve(grid, k, model, bcs):
    return solve_flow(grid, k, model, bcs,
        settings=mock_objects.tight_settings())


class TestPerturbations(object):
    def setup_method(self):
        self.grid = mock_objects.slab(8)

    def test_divergent_direction_is_rejected(self):
        flux = np.zeros(9)
        flux[3] = 1.0
        with pytest.raises(AdmissibilityError):
            power.AdmissiblePerturbation(self.grid, flux)

    def test_flux_direction_needs_pressure_ends(self):
        pert = power.flux_perturbation(self.grid, mock_objects.slab_bcs())
        close_(pert.flux, np.ones(9))
        close_(pert.pressure, np.zeros(8))
        with pytest.raises(AdmissibilityError):
            power.flux_perturbation(self.grid,
                mock_objects.slab_velocity_bcs())

    def test_pressure_direction(self):
        pert = power.pressure_perturbation(self.grid, 2)
        eq_(pert.label, "pressure-2")
        close_(pert.flux, np.zeros(9))
        close_(pert.pressure, np.sin(2*np.pi*self.grid.centers[0]))

    def test_one_dimensional_defaults(self):
        perts = power.default_perturbations(self.grid,
            mock_objects.slab_velocity_bcs(), 3)
        eq_([p.label for p in perts], ["pressure-1", "pressure-2",
            "pressure-3"])
        perts = power.default_perturbations(self.grid,
            mock_objects.slab_bcs(), 3)
        eq_(perts[0].label, "flux")

    def test_two_dimensional_defaults(self):
        grid = mock_objects.square(8)
        perts = power.default_perturbations(grid, mock_objects.channel_bcs(),
            4)
        eq_(len(perts), 4)
        eq_(perts[0].label, "through-flow")
        for pert in perts:
            close_(grid.divergence.dot(pert.flux), np.zeros(grid.ncells),
                atol=1e-13)

    def test_walls_stay_closed(self):
        grid = mock_objects.square(8)
        pert = power.through_flow_perturbation(grid,
            mock_objects.channel_bcs(), 0.5)
        for tag in ("top", "bottom"):
            close_(pert.flux[grid.faces_with_tag(tag)], 0.0)
        close_(np.sum(pert.flux[grid.faces_with_tag("right")]), 1.0)

    def test_through_flow_needs_left_pressure(self):
        grid = mock_objects.square(4)
        bcs = mock_objects.channel_bcs()
        bcs["left"] = PrescribedNormalVelocity(0.0)
        with pytest.raises(AdmissibilityError):
            power.through_flow_perturbation(grid, bcs)

    def test_stream_shape_is_checked(self):
        with pytest.raises(AdmissibilityError):
            power.stream_fluxes(mock_objects.square(4), np.zeros((4, 4)))


class TestFit(object):
    def test_recovers_cubic(self):
        eps = np.array([1e-2, 5e-3, 1e-3, -1e-2, -5e-3, -1e-3])
        a1, a2, a3 = power.fit_coefficients(eps, 2*eps + 3*eps**2 - eps**3)
        close_([a1, a2, a3], [2.0, 3.0, -1.0], rtol=1e-6)

    def test_degenerate_ladder(self):
        with pytest.raises(FitConditioningError):
            power.fit_coefficients(np.full(6, 1e-3), np.zeros(6))


class TestPsi(object):
    def setup_method(self):
        self.grid = mock_objects.slab(16)
        self.k = mock_objects.random_permeability(self.grid)
        self.bcs = mock_objects.slab_bcs()
        self.flow = _solve(self.grid, self.k, Darcy(), self.bcs)

    def test_solution_minimizes_psi(self):
        base = power.psi(self.grid, self.flow.face_flux, Darcy(), self.k,
            self.bcs)
        for amplitude in (0.1, -0.1):
            other = power.psi(self.grid, self.flow.face_flux + amplitude,
                Darcy(), self.k, self.bcs)
            gt_(other, base)

    def test_inadmissible_field(self):
        with pytest.raises(AdmissibilityError):
            power.psi(self.grid, np.zeros(17), Darcy(), self.k,
                mock_objects.slab_velocity_bcs())


class TestStationarity(object):
    def setup_method(self):
        self.grid = mock_objects.slab(16)
        self.k = mock_objects.random_permeability(self.grid)
        self.bcs = mock_objects.slab_bcs()

    def check(self, model, perts, bcs=None):
        bcs = bcs or self.bcs
        flow = _solve(self.grid, self.k, model, bcs)
        return power.mpt_stationarity_check(model, flow, perts,
            permeability=self.k, bcs=bcs)

    def test_darcy_is_stationary(self):
        perts = power.default_perturbations(self.grid, self.bcs, 3)
        for result in self.check(Darcy(), perts):
            lt_(result.relative_a1, 1e-8)
            close_(result.predicted_a1, 0.0)
        gt_(self.check(Darcy(), perts[:1])[0].a2, 0.0)

    def test_forchheimer_first_order_term(self):
        model = DarcyForchheimer(2.0)
        pert = power.flux_perturbation(self.grid, self.bcs)
        result = self.check(model, [pert])[0]
        gt_(abs(result.predicted_a1), 1e-3)
        lt_(result.agreement, 1e-3)
        assert result.falsifying_epsilon is not None

    def test_barus_pressure_direction(self):
        model = Barus(1.0)
        pert = power.pressure_perturbation(self.grid, 1)
        result = self.check(model, [pert])[0]
        gt_(abs(result.predicted_a1), 1e-3)
        lt_(result.agreement, 1e-3)

    def test_velocity_faces_must_stay_fixed(self):
        bcs = mock_objects.slab_velocity_bcs()
        pert = power.AdmissiblePerturbation(self.grid, np.ones(17),
            label="leaky")
        with pytest.raises(AdmissibilityError):
            self.check(Darcy(), [pert], bcs)

    def test_channel_through_flow(self):
        grid = mock_objects.square(8)
        bcs = mock_objects.channel_bcs()
        k = mock_objects.random_permeability(grid)
        flow = _solve(grid, k, Darcy(), bcs)
        perts = power.default_perturbations(grid, bcs, 3)
        results = power.mpt_stationarity_check(Darcy(), flow, perts,
            permeability=k, bcs=bcs, workers=2)
        eq_(len(results), 3)
        includes_([r.label for r in results], "sine-1-1")
        for result in results:
            lt_(result.relative_a1, 1e-8)


def test_result_ratios():
    result = power.MptResult("x", 1.1, 1.0, 2.0, 4.0)
    close_(result.agreement, 0.1)
    close_(result.relative_a1, 0.275)
    eq_(power.MptResult("y", 0.5, 0.0, 1.0, 0.0).agreement, 0.5)
