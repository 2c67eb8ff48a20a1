# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

"""
CSV writers. Each writer is a mapping of (header, function of a row); the
row producers below turn solver and optimizer results into rows. Floats are
written with repr so the bytes depend only on the values.
"""

import csv
import sys

import numpy as np

from porehound.drag import cell_velocity, drag, dissipation_density


def fmt(value):
    """Shortest round-trip text for a number; blank for None."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


class DelimitedWriter(object):
    """Writes iterable things into text files"""

    def __init__(self, mapping, out=sys.stdout, delimiter=","):
        super(DelimitedWriter, self).__init__()
        self.mapping = mapping
        self.out = out
        self.writer = csv.writer(out, delimiter=delimiter,
            lineterminator="\n")
        self.delimiter = delimiter

    def write_header(self):
        headers = [elem[0] for elem in self.mapping]
        self.writer.writerow(headers)

    def write(self, data):
        for row in data:
            row_mapped = [fmt(elem[1](row)) for elem in self.mapping]
            self.writer.writerow(row_mapped)

    def write_all(self, data):
        self.write_header()
        self.write(data)


def _key(name):
    return lambda row: row.get(name)


class FieldWriter(DelimitedWriter):
    """Per-cell fields: position, density, permeability and the flow."""

    mapper = [(name, _key(name)) for name in ("cell", "x", "y", "rho",
        "permeability", "pressure", "vx", "vy", "speed", "alpha",
        "dissipation")]

    def __init__(self, out=sys.stdout, delimiter=","):
        super(FieldWriter, self).__init__(FieldWriter.mapper, out, delimiter)


class DensityWriter(DelimitedWriter):

    mapper = [(name, _key(name)) for name in ("cell", "rho", "physical")]

    def __init__(self, out=sys.stdout, delimiter=","):
        super(DensityWriter, self).__init__(DensityWriter.mapper, out,
            delimiter)


class HistoryWriter(DelimitedWriter):

    mapper = [
        ("iteration", lambda r: r[0]),
        ("phi", lambda r: r[1]),
        ("volume_fraction", lambda r: r[2]),
        ("penal", lambda r: r[3]),
    ]

    def __init__(self, out=sys.stdout, delimiter=","):
        super(HistoryWriter, self).__init__(HistoryWriter.mapper, out,
            delimiter)


class ReportWriter(DelimitedWriter):
    """One row per case level, per property sweep and per MPT entry."""

    mapper = [(name, _key(name)) for name in ("kind", "id", "label", "cells",
        "l2_error", "max_error", "phi_error", "order", "samples",
        "violations", "worst_margin", "a1", "predicted_a1", "passed")]

    def __init__(self, out=sys.stdout, delimiter=","):
        super(ReportWriter, self).__init__(ReportWriter.mapper, out,
            delimiter)


class MptWriter(DelimitedWriter):

    mapper = [
        ("id", lambda e: e.entry_id),
        ("perturbation", lambda e: e.label),
        ("a1", lambda e: e.a1),
        ("predicted_a1", lambda e: e.predicted_a1),
        ("a2", lambda e: e.a2),
        ("psi", lambda e: e.psi),
        ("passed", lambda e: e.passed),
    ]

    def __init__(self, out=sys.stdout, delimiter=","):
        super(MptWriter, self).__init__(MptWriter.mapper, out, delimiter)


class ProfileWriter(DelimitedWriter):

    mapper = [
        ("x", lambda r: r[0]),
        ("pressure", lambda r: r[1]),
        ("velocity", lambda r: r[2]),
    ]

    def __init__(self, out=sys.stdout, delimiter=","):
        super(ProfileWriter, self).__init__(ProfileWriter.mapper, out,
            delimiter)


class SummaryWriter(DelimitedWriter):
    """Key/value pairs."""

    mapper = [
        ("quantity", lambda r: r[0]),
        ("value", lambda r: r[1]),
    ]

    def __init__(self, out=sys.stdout, delimiter=","):
        super(SummaryWriter, self).__init__(SummaryWriter.mapper, out,
            delimiter)


class ComparisonWriter(DelimitedWriter):

    mapper = [
        ("quantity", lambda r: r[0]),
        ("computed", lambda r: r[1]),
        ("oracle", lambda r: r[2]),
        ("relative_error", lambda r: r[3]),
    ]

    def __init__(self, out=sys.stdout, delimiter=","):
        super(ComparisonWriter, self).__init__(ComparisonWriter.mapper, out,
            delimiter)


def field_rows(grid, flow, permeability, model, rho=None):
    k = grid.check_cell_field(permeability, "permeability")
    velocity = cell_velocity(grid, flow.face_velocity)
    speed = np.sqrt(np.sum(velocity**2, axis=1))
    alpha = np.asarray(drag(model, k, speed, flow.pressure).alpha)*np.ones(
        grid.ncells)
    phi = dissipation_density(alpha, velocity)*grid.cell_volumes
    coords = grid.cell_coordinates
    for c in range(grid.ncells):
        yield {
            "cell": c,
            "x": coords[c, 0],
            "y": coords[c, 1] if grid.ndim == 2 else None,
            "rho": None if rho is None else rho[c],
            "permeability": k[c],
            "pressure": flow.pressure[c],
            "vx": velocity[c, 0],
            "vy": velocity[c, 1] if grid.ndim == 2 else None,
            "speed": speed[c],
            "alpha": alpha[c],
            "dissipation": phi[c],
        }


def density_rows(rho, physical):
    for c, (r, p) in enumerate(zip(rho, physical)):
        yield {"cell": c, "rho": r, "physical": p}


def history_rows(state):
    return zip(range(len(state.phi_history)), state.phi_history,
        state.volume_history, state.penal_history)


def report_rows(report):
    for case in report.cases:
        if not case.l2_errors:
            yield {"kind": "case", "id": case.case_id, "label": case.reason,
                "passed": case.passed}
        for level, cells in enumerate(case.levels[:len(case.l2_errors)]):
            yield {"kind": "case", "id": case.case_id,
                "label": case.reason or None, "cells": cells,
                "l2_error": case.l2_errors[level],
                "max_error": case.max_errors[level],
                "phi_error": case.phi_errors[level],
                "order": case.order_label,
                "passed": case.passed}
    for prop in report.properties:
        yield {"kind": "property", "id": prop.name,
            "label": prop.violating_sample or None, "samples": prop.samples,
            "violations": prop.violations, "worst_margin": prop.worst_margin,
            "passed": prop.passed}
    for entry in report.mpt:
        yield {"kind": "mpt", "id": entry.entry_id, "label": entry.label,
            "a1": entry.a1, "predicted_a1": entry.predicted_a1,
            "passed": entry.passed}
