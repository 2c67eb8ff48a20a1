# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import numpy as np
import pytest

from porehound import scaling as s
from porehound.conditions import Driving
from porehound.errors import DomainError, InvalidReferenceError
from .testutils import eq_, close_


class TestPressureDriven(object):
    def setup_method(self):
        self.params = s.PhysicalParameters(2.0, mu0=1.0, betaB=0.1,
            permeabilities=(4.0, 8.0), p_left=11.0, p_right=1.0)
        self.nd = s.nondimensionalize(self.params, "pressure")

    def test_reference_scales(self):
        close_(self.nd.pressure_ref, 10.0)
        close_(self.nd.viscosity_ref, np.exp(0.1))
        close_(self.nd.betaB, 1.0)
        close_(self.nd.permeabilities, (1.0, 2.0))
        eq_(self.nd.p_left, 1.0)

    def test_pressures_map_to_unit_drop(self):
        close_(self.nd.pressure([11.0, 1.0]), [1.0, 0.0])
        close_(self.nd.physical_pressure(0.5), 6.0)

    def test_redimensionalize(self):
        back = self.nd.redimensionalize()
        close_(back.mu0, 1.0)
        close_(back.betaB, 0.1)
        close_(back.p_left, 11.0)
        close_(back.permeabilities, (4.0, 8.0))

    def test_model_has_unit_viscosity(self):
        eq_(self.nd.model("barus").mu0, 1.0)

    def test_zero_drop_is_rejected(self):
        params = s.PhysicalParameters(1.0, p_left=1.0, p_right=1.0)
        with pytest.raises(InvalidReferenceError):
            s.nondimensionalize(params, Driving.PRESSURE_DRIVEN)


class TestVelocityDriven(object):
    def setup_method(self):
        self.params = s.PhysicalParameters(0.5, mu0=2.0, betaB=0.2,
            v_left=3.0, p_right=1.0)
        self.nd = s.nondimensionalize(self.params, "velocity")

    def test_reference_scales(self):
        close_(self.nd.viscosity_ref, 2.4)
        close_(self.nd.pressure_ref, 2.4*3.0/0.5)
        close_(self.nd.betaB, 0.2*2.0*3.0/0.5)
        eq_(self.nd.v_left, 1.0)

    def test_redimensionalize(self):
        back = self.nd.redimensionalize()
        close_(back.mu0, 2.0)
        close_(back.betaB, 0.2)
        close_(back.v_left, 3.0)

    def test_velocities_scale_by_inflow(self):
        close_(self.nd.physical_velocity([1.0, 0.5]), [3.0, 1.5])

    def test_zero_velocity_is_rejected(self):
        params = s.PhysicalParameters(1.0, v_left=0.0)
        with pytest.raises(InvalidReferenceError):
            s.nondimensionalize(params, "velocity")


def test_length_must_be_positive():
    with pytest.raises(DomainError):
        s.PhysicalParameters(0.0)
