# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import pytest

from porehound import config as c
from porehound.errors import ConfigError
from porehound.material import DragLaw
from porehound.primal import SolverSettings
from .testutils import eq_, gt_, includes_, not_includes_
from . import mock_objects


class TestReference(object):
    def setup_method(self):
        self.config = c.RunConfig.reference()

    def test_defaults(self):
        eq_(self.config.problem.name, "channel-1d")
        eq_(self.config.run.seed, 42)
        eq_(self.config.solver_settings(), SolverSettings())
        eq_(self.config.optimizer_settings().filter_radius, 1.5)

    def test_none_is_omitted(self):
        data = self.config.to_dict()
        not_includes_(data["design"], "gamma")
        not_includes_(data["run"], "workers")
        not_includes_(data["problem"], "cells")

    def test_toml_round_trip(self):
        eq_(c.parse_config(self.config.to_toml()), self.config)

    def test_no_text_gives_reference(self):
        eq_(c.ConfigReader().config(), self.config)


class TestSmallConfig(object):
    def setup_method(self):
        self.config = c.parse_config(mock_objects.small_config_text())

    def test_sections(self):
        eq_(self.config.problem.cells, (32,))
        eq_(self.config.design.max_iter, 5)
        eq_(self.config.run.n_samples, 20)

    def test_problem(self):
        problem = self.config.benchmark_problem()
        eq_(problem.grid.ncells, 32)
        eq_(problem.gamma, 0.4)
        eq_(self.config.model_for(problem).law, DragLaw.DARCY)

    def test_design_problem(self):
        design = self.config.design_problem()
        eq_(design.settings.max_iter, 5)
        eq_(design.gamma, 0.4)

    def test_continuation_settings(self):
        eq_(self.config.design_problem().penal_target, 12.0)
        config = self.config.with_overrides(design={"continuation": False})
        eq_(config.design_problem().penal_target, 3.0)
        config = self.config.with_overrides(design={"penal_max": 8.0,
            "penal_step": 2.0, "continuation_iter": 5})
        settings = config.optimizer_settings()
        eq_((settings.penal_max, settings.penal_step,
            settings.continuation_iter), (8.0, 2.0, 5))
        eq_(config.design_problem().penal_target, 8.0)

    def test_overrides(self):
        config = self.config.with_overrides(run={"seed": 3, "workers": None},
            design={"gamma": 0.25})
        eq_(config.run.seed, 3)
        eq_(config.run.n_samples, 20)
        eq_(config.run.workers, None)
        eq_(config.benchmark_problem().gamma, 0.25)

    def test_output_root(self):
        eq_(self.config.output_root({}), c.DEFAULT_OUTPUT_ROOT)
        eq_(self.config.output_root({c.OUTPUT_ROOT_VARIABLE: "/data"}),
            "/data")
        config = self.config.with_overrides(output={"directory": "here"})
        eq_(config.output_root({c.OUTPUT_ROOT_VARIABLE: "/data"}), "here")


class TestCustomProblem(object):
    def setup_method(self):
        self.text = mock_objects.custom_config_text()
        self.config = c.parse_config(self.text)

    def test_grid_and_conditions(self):
        problem = self.config.benchmark_problem()
        eq_(problem.name, "custom")
        eq_(problem.grid.cells, (6, 4))
        includes_(problem.grid.tags, "inlet")
        eq_(problem.bcs["inlet"].value, 2.0)
        eq_(problem.grid.faces_with_tag("inlet").size, 2)

    def test_solves(self):
        problem = self.config.benchmark_problem()
        design = self.config.design_problem(problem)
        flow = design.flow_solver(self.config.model_for(problem)).solve(
            problem.permeability())
        gt_(flow.outflow("right"), 0.0)

    def test_round_trip(self):
        eq_(c.parse_config(self.config.to_toml()), self.config)

    def test_missing_condition(self):
        block = "[[problem.conditions]]\ntag = \"top\"\nkind = \"velocity\"\n" \
            "value = 0.0\n"
        assert block in self.text
        config = c.parse_config(self.text.replace(block, ""))
        with pytest.raises(ConfigError):
            config.benchmark_problem()

    def test_geometry_is_required(self):
        with pytest.raises(ConfigError):
            c.parse_config(self.text.replace('geometry = "cartesian2d"\n', ""))


class TestInvalid(object):
    def check(self, text):
        with pytest.raises(ConfigError):
            c.parse_config(text)

    def test_unknown_section(self):
        self.check("[plots]\nwidth = 3\n")

    def test_unknown_key(self):
        self.check("[run]\ncolour = \"red\"\n")

    def test_wrong_types(self):
        self.check("[design]\nmax_iter = 2.5\n")
        self.check("[output]\nvtk = 1\n")
        self.check("[run]\nsuite = 3\n")

    def test_bad_values(self):
        self.check("[model]\nlaw = \"stokes\"\n")
        self.check("[design]\ndirection = \"up\"\n")

    def test_bad_toml(self):
        self.check("[run\nseed = 1\n")

    def test_bad_segment(self):
        self.check("""
[problem]
name = "custom"
geometry = "cartesian2d"

[[problem.segments]]
side = "left"
start = 0.6
stop = 0.2
tag = "x"
""")
        self.check("""
[[problem.segments]]
side = "left"
start = 0.0
""")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            c.load_config(str(tmp_path / "nothing.toml"))

    def test_load_file(self, tmp_path):
        path = tmp_path / "run.toml"
        path.write_text(mock_objects.small_config_text())
        eq_(c.load_config(str(path)).design.gamma, 0.4)
