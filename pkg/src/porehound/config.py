# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

"""
Run configuration: six TOML sections, each a frozen dataclass with explicit
defaults. Keys left at None are omitted from the emitted TOML and come back
as None when it is read again.
"""

from dataclasses import asdict, dataclass, field, fields
import logging
import os
import sys

import numpy as np
import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from porehound.benchmarks import BenchmarkProblem, benchmark
from porehound.conditions import BoundaryCondition, Direction
from porehound.errors import ConfigError, PorehoundError
from porehound.grid import GEOMETRIES, BoundarySegment, StructuredGrid
from porehound.material import DragLaw
from porehound.primal import SolverSettings
from porehound.topopt import OptimizerSettings

logger = logging.getLogger(__name__)

OUTPUT_ROOT_VARIABLE = "POREHOUND_OUTPUT_ROOT"
DEFAULT_OUTPUT_ROOT = "porehound-runs"
CUSTOM = "custom"


@dataclass(frozen=True)
class ProblemSection:
    """
    A built-in problem by name, or name = "custom" with a geometry, cell
    counts, extents, boundary segments and per-tag conditions.
    """
    name: str = "channel-1d"
    cells: tuple = ()
    geometry: str = None
    extents: tuple = ()
    source: float = None
    segments: tuple = ()
    conditions: tuple = ()


@dataclass(frozen=True)
class ModelSection:
    law: str = None
    mu0: float = 1.0
    betaB: float = 0.0
    betaF: float = 0.0


@dataclass(frozen=True)
class DesignSection:
    gamma: float = None
    direction: str = None
    k_low: float = None
    k_high: float = None
    penal: float = 3.0
    max_iter: int = 200
    move: float = 0.2
    eta: float = 0.5
    filter_radius: float = 1.5
    tol: float = 1e-3
    rho_min: float = 1e-3
    max_halvings: int = 10
    lagged_adjoint: bool = False
    continuation: bool = True
    penal_step: float = 1.5
    penal_max: float = None
    continuation_tol: float = 1e-2
    continuation_iter: int = 20
    initial_density: str = None


@dataclass(frozen=True)
class SolverSection:
    picard_tol: float = 1e-10
    picard_max_iter: int = 200
    linear_tol: float = 1e-12
    relaxation: float = None
    linear_solver: str = "auto"


@dataclass(frozen=True)
class OutputSection:
    directory: str = None
    vtk: bool = True


@dataclass(frozen=True)
class RunSection:
    seed: int = 42
    n_samples: int = 10000
    suite: str = "all"
    workers: int = None


SECTIONS = (
    ("problem", ProblemSection),
    ("model", ModelSection),
    ("design", DesignSection),
    ("solver", SolverSection),
    ("output", OutputSection),
    ("run", RunSection),
)


def _coerce(section, name, kind, value):
    try:
        if kind is bool:
            if not isinstance(value, bool):
                raise TypeError("expected true or false")
            return value
        if kind is int:
            if isinstance(value, bool) or int(value) != value:
                raise TypeError("expected an integer")
            return int(value)
        if kind is float:
            if isinstance(value, bool):
                raise TypeError("expected a number")
            return float(value)
        if kind is str:
            if not isinstance(value, str):
                raise TypeError("expected a string")
            return value
    except (TypeError, ValueError) as e:
        raise ConfigError("[%s] %s = %r: %s" % (section, name, value, e))
    return value


def _segment(entry):
    entry = dict(entry)
    try:
        seg = BoundarySegment(str(entry.pop("side")),
            float(entry.pop("start")), float(entry.pop("stop")),
            str(entry.pop("tag")))
    except KeyError as e:
        raise ConfigError("[[problem.segments]] is missing %s" % (e,))
    except PorehoundError as e:
        raise ConfigError("[[problem.segments]]: %s" % (e,))
    if entry:
        raise ConfigError("[[problem.segments]] has unknown keys %s" %
            ", ".join(sorted(entry)))
    return seg


def _condition(entry):
    entry = dict(entry)
    try:
        tag = str(entry.pop("tag"))
        bc = BoundaryCondition(str(entry.pop("kind")),
            float(entry.pop("value")))
    except KeyError as e:
        raise ConfigError("[[problem.conditions]] is missing %s" % (e,))
    except PorehoundError as e:
        raise ConfigError("[[problem.conditions]]: %s" % (e,))
    if entry:
        raise ConfigError("[[problem.conditions]] has unknown keys %s" %
            ", ".join(sorted(entry)))
    return (tag, bc)


def _problem_value(name, value):
    try:
        if name == "cells":
            return tuple(int(c) for c in np.atleast_1d(value))
        if name == "extents":
            return tuple(tuple(float(v) for v in pair) for pair in
                np.atleast_2d(np.asarray(value, dtype=float)))
    except (TypeError, ValueError) as e:
        raise ConfigError("[problem] %s = %r: %s" % (name, value, e))
    if name == "segments":
        return tuple(_segment(e) for e in value)
    return tuple(_condition(e) for e in value)


def _section(name, cls, table):
    if not isinstance(table, dict):
        raise ConfigError("[%s] must be a table" % (name,))
    known = dict((f.name, f) for f in fields(cls))
    unknown = set(table) - set(known)
    if unknown:
        raise ConfigError("unknown keys in [%s]: %s" % (name,
            ", ".join(sorted(unknown))))
    values = {}
    for key, value in table.items():
        if known[key].type is tuple:
            values[key] = _problem_value(key, value)
        else:
            values[key] = _coerce(name, key, known[key].type, value)
    return cls(**values)


@dataclass(frozen=True)
class RunConfig:
    problem: ProblemSection = field(default_factory=ProblemSection)
    model: ModelSection = field(default_factory=ModelSection)
    design: DesignSection = field(default_factory=DesignSection)
    solver: SolverSection = field(default_factory=SolverSection)
    output: OutputSection = field(default_factory=OutputSection)
    run: RunSection = field(default_factory=RunSection)

    def __post_init__(self):
        if self.model.law is not None:
            DragLaw.parse(self.model.law)
        if self.design.direction is not None:
            Direction.parse(self.design.direction)
        if self.problem.name == CUSTOM:
            if self.problem.geometry not in GEOMETRIES:
                raise ConfigError("custom problems need [problem] geometry, "
                    "one of %s" % ", ".join(GEOMETRIES))

    @classmethod
    def reference(cls):
        return cls()

    @classmethod
    def from_dict(cls, data):
        unknown = set(data) - set(name for name, _ in SECTIONS)
        if unknown:
            raise ConfigError("unknown sections: %s" %
                ", ".join(sorted(unknown)))
        sections = dict((name, _section(name, section_cls, data[name]))
            for name, section_cls in SECTIONS if name in data)
        try:
            return cls(**sections)
        except ConfigError:
            raise
        except PorehoundError as e:
            raise ConfigError(str(e))

    def to_dict(self):
        out = {}
        for name, _ in SECTIONS:
            section = getattr(self, name)
            table = {}
            for f in fields(section):
                value = getattr(section, f.name)
                if value is None or value == ():
                    continue
                if f.name == "segments":
                    value = [asdict(seg) for seg in value]
                elif f.name == "conditions":
                    value = [{"tag": tag, "kind": bc.kind, "value": bc.value}
                        for tag, bc in value]
                elif f.name == "extents":
                    value = [list(pair) for pair in value]
                elif f.type is tuple:
                    value = list(value)
                table[f.name] = value
            out[name] = table
        return out

    def to_toml(self):
        return tomli_w.dumps(self.to_dict())

    def with_overrides(self, **sections):
        """Replace keys section by section: with_overrides(run={"seed": 1})."""
        data = self.to_dict()
        for name, values in sections.items():
            data.setdefault(name, {}).update(
                (k, v) for k, v in values.items() if v is not None)
        return RunConfig.from_dict(data)

    def output_root(self, environ=None):
        if self.output.directory is not None:
            return self.output.directory
        environ = os.environ if environ is None else environ
        return environ.get(OUTPUT_ROOT_VARIABLE, DEFAULT_OUTPUT_ROOT)

    def solver_settings(self):
        return SolverSettings(**asdict(self.solver))

    def optimizer_settings(self):
        d = self.design
        return OptimizerSettings(max_iter=d.max_iter, move=d.move, eta=d.eta,
            filter_radius=d.filter_radius, tol=d.tol, rho_min=d.rho_min,
            max_halvings=d.max_halvings, lagged_adjoint=d.lagged_adjoint,
            continuation=d.continuation, penal_step=d.penal_step,
            penal_max=d.penal_max, continuation_tol=d.continuation_tol,
            continuation_iter=d.continuation_iter)

    def benchmark_problem(self):
        p = self.problem
        cells = p.cells or None
        if p.name == CUSTOM:
            problem = self._custom_problem()
        else:
            if cells is not None and len(cells) == 1:
                cells = cells[0]
            problem = benchmark(p.name, cells)
        changes = {}
        if p.source is not None:
            changes["source"] = p.source
        if self.design.gamma is not None:
            changes["gamma"] = self.design.gamma
        if self.design.k_low is not None:
            changes["k_low"] = self.design.k_low
        if self.design.k_high is not None:
            changes["k_high"] = self.design.k_high
        return problem.with_changes(**changes) if changes else problem

    def _custom_problem(self):
        p = self.problem
        if not p.cells or not p.extents:
            raise ConfigError("custom problems need [problem] cells and "
                "extents")
        grid = StructuredGrid(p.geometry, p.cells, p.extents, p.segments)
        bcs = dict(p.conditions)
        missing = set(grid.tags) - set(bcs)
        if missing:
            raise ConfigError("no [[problem.conditions]] entry for tags %s" %
                ", ".join(sorted(missing)))
        return BenchmarkProblem(CUSTOM, grid, bcs, 0.5,
            description="custom %s problem" % (p.geometry,))

    def model_for(self, problem):
        m = self.model
        return problem.model(betaB=m.betaB, betaF=m.betaF, law=m.law,
            mu0=m.mu0)

    def design_problem(self, problem=None):
        problem = self.benchmark_problem() if problem is None else problem
        return problem.design_problem(direction=self.design.direction,
            penal=self.design.penal, settings=self.optimizer_settings(),
            solver_settings=self.solver_settings())


class ConfigReader(object):
    """
    Reads a RunConfig from TOML text or a file; with neither, the reference
    configuration.
    """

    def __init__(self, text=None, filename=None):
        super(ConfigReader, self).__init__()
        self.text = text
        self.filename = filename
        if text is None and filename is not None:
            self.read_file(filename)

    def read_file(self, filename):
        try:
            with open(filename, "r", encoding="utf-8") as f:
                self.text = f.read()
        except OSError as e:
            raise ConfigError("cannot read config %s: %s" % (filename, e))

    def config(self):
        if self.text is None:
            return RunConfig.reference()
        try:
            data = tomllib.loads(self.text)
        except tomllib.TOMLDecodeError as e:
            raise ConfigError("invalid TOML%s: %s" % (
                " in %s" % self.filename if self.filename else "", e))
        logger.debug("read config with sections %s", ", ".join(sorted(data)))
        return RunConfig.from_dict(data)


def parse_config(text):
    return ConfigReader(text=text).config()


def load_config(filename):
    return ConfigReader(filename=filename).config()
