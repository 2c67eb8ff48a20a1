# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

"""
Structured, cell-centred grids. Pressure and density live on cells; normal
fluxes live on faces. Radial grids carry their metric (2πr or 4πr²) in the
face areas, cell volumes and half-cell resistances so the same solver kernel
handles planar, cylindrical and spherical problems.
"""

from dataclasses import dataclass
import logging

import numpy as np
import scipy.sparse as sp

from porehound.errors import DomainError, ShapeError

logger = logging.getLogger(__name__)

INTERVAL_1D = "interval"
RADIAL_CYLINDRICAL = "cylindrical"
RADIAL_SPHERICAL = "spherical"
CARTESIAN_2D = "cartesian2d"

GEOMETRIES = (INTERVAL_1D, RADIAL_CYLINDRICAL, RADIAL_SPHERICAL, CARTESIAN_2D)
RADIAL_GEOMETRIES = (RADIAL_CYLINDRICAL, RADIAL_SPHERICAL)

SIDES = {
    INTERVAL_1D: ("left", "right"),
    RADIAL_CYLINDRICAL: ("inner", "outer"),
    RADIAL_SPHERICAL: ("inner", "outer"),
    CARTESIAN_2D: ("left", "right", "bottom", "top"),
}

# Segment end points closer than this are treated as touching.
SEGMENT_TOL = 1e-12


@dataclass(frozen=True)
class BoundarySegment:
    """A tagged part of one side, given as a parametric range in [0, 1]."""
    side: str
    start: float
    stop: float
    tag: str

    def __post_init__(self):
        if not (0.0 <= self.start < self.stop <= 1.0):
            raise DomainError("segment %r needs 0 <= start < stop <= 1, got "
                "(%r, %r)" % (self.tag, self.start, self.stop))

    def contains(self, s):
        return (s >= self.start) & ((s < self.stop) | (self.stop >= 1.0))


def area_at(geometry, r):
    """Flow-normal area at radius/position r for 1D-type geometries."""
    r = np.asarray(r, dtype=float)
    if geometry == RADIAL_CYLINDRICAL:
        return 2*np.pi*r
    if geometry == RADIAL_SPHERICAL:
        return 4*np.pi*r**2
    return np.ones_like(r)


def geometric_resistance(geometry, a, b):
    """
    Integral of dr/A(r) from a to b for 1D-type geometries. Dividing by a
    permeability gives the hydraulic resistance of a uniform layer.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if geometry == RADIAL_CYLINDRICAL:
        return np.log(b/a)/(2*np.pi)
    if geometry == RADIAL_SPHERICAL:
        return (1.0/a - 1.0/b)/(4*np.pi)
    return b - a


def _readonly(arr):
    arr.flags.writeable = False
    return arr


class StructuredGrid(object):
    """
    A rectilinear cell-centred mesh.

    geometry is one of GEOMETRIES; cells is one count per axis; extents is
    one (low, high) pair per axis (for radial grids, (r_i, r_o)). Segments
    tag parts of the boundary; a side with no segment gets a single segment
    tagged with the side name.
    """

    def __init__(self, geometry, cells, extents, segments=None):
        super(StructuredGrid, self).__init__()
        if geometry not in GEOMETRIES:
            raise DomainError("unknown geometry %r" % (geometry,))
        self.geometry = geometry
        self.ndim = 2 if geometry == CARTESIAN_2D else 1
        cells = tuple(int(c) for c in np.atleast_1d(cells))
        extents = tuple(tuple(float(v) for v in e) for e in
            np.atleast_2d(np.asarray(extents, dtype=float)))
        if len(cells) != self.ndim or len(extents) != self.ndim:
            raise ShapeError("%s grids need %d cell counts and extents, got "
                "%r and %r" % (geometry, self.ndim, cells, extents))
        for count in cells:
            if count < 1:
                raise DomainError("cell counts must be positive, got %r" %
                    (cells,))
        for low, high in extents:
            if not high > low:
                raise DomainError("extents must increase, got %r" %
                    (extents,))
        if geometry in RADIAL_GEOMETRIES and not extents[0][0] > 0:
            raise DomainError("radial grids need 0 < r_i < r_o, got %r" %
                (extents[0],))
        self.cells = cells
        self.extents = extents
        self.segments = self._complete_segments(segments or ())
        self._build()

    @property
    def is_radial(self):
        return self.geometry in RADIAL_GEOMETRIES

    @property
    def shape(self):
        """Array shape of cell fields, slowest axis first."""
        return tuple(reversed(self.cells))

    @property
    def sides(self):
        return SIDES[self.geometry]

    @property
    def tags(self):
        return tuple(sorted(set(seg.tag for seg in self.segments)))

    @property
    def measure(self):
        return float(self.cell_volumes.sum())

    def analytic_measure(self):
        """meas(Ω) from the extents, independent of the cell volumes."""
        if self.ndim == 2:
            (x0, x1), (y0, y1) = self.extents
            return (x1 - x0)*(y1 - y0)
        a, b = self.extents[0]
        if self.geometry == RADIAL_CYLINDRICAL:
            return np.pi*(b**2 - a**2)
        if self.geometry == RADIAL_SPHERICAL:
            return 4.0/3.0*np.pi*(b**3 - a**3)
        return b - a

    @property
    def min_width(self):
        return float(min(np.diff(e).min() for e in self.edges))

    def faces_with_tag(self, tag):
        return np.flatnonzero(self.face_tag == tag)

    def reshape(self, field):
        field = np.asarray(field)
        if field.size != self.ncells:
            raise ShapeError("field has %d entries, grid has %d cells" %
                (field.size, self.ncells))
        return field.reshape(self.shape)

    def check_cell_field(self, field, name="field"):
        arr = np.asarray(field, dtype=float).ravel()
        if arr.size != self.ncells:
            raise ShapeError("%s has %d entries, grid has %d cells" %
                (name, arr.size, self.ncells))
        return arr

    def check_face_field(self, field, name="face field"):
        arr = np.asarray(field, dtype=float).ravel()
        if arr.size != self.nfaces:
            raise ShapeError("%s has %d entries, grid has %d faces" %
                (name, arr.size, self.nfaces))
        return arr

    def layered_permeability(self, xi, k_inner, k_outer):
        """
        Per-cell permeability of a two-material 1D/radial layout with one
        interface at xi. A cut cell gets the series average of its parts, so
        the total resistance of the layout is reproduced exactly.
        """
        if self.ndim != 1:
            raise DomainError("layered layouts need a 1D or radial grid")
        low, high = self.extents[0]
        if not (low <= xi <= high):
            raise DomainError("interface %r outside %r" % (xi, self.extents[0]))
        if k_inner <= 0 or k_outer <= 0:
            raise DomainError("permeabilities must be positive")
        a = self.edges[0][:-1]
        b = self.edges[0][1:]
        cut = np.clip(xi, a, b)
        total = geometric_resistance(self.geometry, a, b)
        series = (geometric_resistance(self.geometry, a, cut)/k_inner +
            geometric_resistance(self.geometry, cut, b)/k_outer)
        return total/series

    def _complete_segments(self, segments):
        segs = []
        for seg in segments:
            if not isinstance(seg, BoundarySegment):
                seg = BoundarySegment(*seg)
            if seg.side not in self.sides:
                raise DomainError("%s grids have no side %r" %
                    (self.geometry, seg.side))
            segs.append(seg)
        for side in self.sides:
            on_side = sorted((s for s in segs if s.side == side),
                key=lambda s: s.start)
            if not on_side:
                segs.append(BoundarySegment(side, 0.0, 1.0, side))
                continue
            edge = 0.0
            for seg in on_side:
                if abs(seg.start - edge) > SEGMENT_TOL:
                    raise DomainError("segments on side %r leave a gap or "
                        "overlap at %r" % (side, edge))
                edge = seg.stop
            if abs(edge - 1.0) > SEGMENT_TOL:
                raise DomainError("segments on side %r stop at %r, not 1" %
                    (side, edge))
        return tuple(segs)

    def _build(self):
        self.edges = tuple(_readonly(np.linspace(lo, hi, n + 1))
            for (lo, hi), n in zip(self.extents, self.cells))
        self.centers = tuple(_readonly(0.5*(e[:-1] + e[1:]))
            for e in self.edges)
        if self.ndim == 1:
            self._build_1d()
        else:
            self._build_2d()
        self.ncells = int(np.prod(self.cells))
        self.nfaces = int(self.face_area.size)
        self._tag_boundary()
        self._build_operators()

    def _build_1d(self):
        geo = self.geometry
        r = self.edges[0]
        c = self.centers[0]
        n = self.cells[0]
        self.cell_volumes = _readonly(self._volumes_1d(r))
        self.cell_coordinates = _readonly(c.reshape(-1, 1).copy())
        lo = np.arange(-1, n)
        hi = np.arange(0, n + 1)
        hi[-1] = -1
        g_lo = np.zeros(n + 1)
        g_hi = np.zeros(n + 1)
        g_lo[1:] = np.abs(geometric_resistance(geo, c, r[1:]))
        g_hi[:-1] = np.abs(geometric_resistance(geo, r[:-1], c))
        self.face_lo = _readonly(lo)
        self.face_hi = _readonly(hi)
        self.face_area = _readonly(area_at(geo, r))
        self.face_g_lo = _readonly(g_lo)
        self.face_g_hi = _readonly(g_hi)
        self.face_axis = _readonly(np.zeros(n + 1, dtype=int))
        self.face_center = _readonly(r.reshape(-1, 1).copy())
        dist = np.zeros(n + 1)
        dist[1:-1] = np.diff(c)
        dist[0] = c[0] - r[0]
        dist[-1] = r[-1] - c[-1]
        self.face_distance = _readonly(dist)

    def _volumes_1d(self, r):
        a, b = r[:-1], r[1:]
        if self.geometry == RADIAL_CYLINDRICAL:
            return np.pi*(b**2 - a**2)
        if self.geometry == RADIAL_SPHERICAL:
            return 4.0/3.0*np.pi*(b**3 - a**3)
        return b - a

    def _build_2d(self):
        nx, ny = self.cells
        xe, ye = self.edges
        xc, yc = self.centers
        dx = np.diff(xe)
        dy = np.diff(ye)
        vol = np.outer(dy, dx).ravel()
        self.cell_volumes = _readonly(vol)
        X, Y = np.meshgrid(xc, yc)
        self.cell_coordinates = _readonly(
            np.column_stack([X.ravel(), Y.ravel()]))

        def cell(i, j):
            return j*nx + i

        # x-normal faces, x fastest
        I, J = np.meshgrid(np.arange(nx + 1), np.arange(ny))
        I, J = I.ravel(), J.ravel()
        xlo = np.where(I > 0, cell(I - 1, J), -1)
        xhi = np.where(I < nx, cell(np.minimum(I, nx - 1), J), -1)
        xarea = dy[J]
        xg_lo = np.where(I > 0, 0.5*dx[np.maximum(I - 1, 0)], 0.0)/xarea
        xg_hi = np.where(I < nx, 0.5*dx[np.minimum(I, nx - 1)], 0.0)/xarea
        xcenter = np.column_stack([xe[I], yc[J]])
        xdist = (np.where(I > 0, 0.5*dx[np.maximum(I - 1, 0)], 0.0) +
            np.where(I < nx, 0.5*dx[np.minimum(I, nx - 1)], 0.0))

        # y-normal faces
        I, J = np.meshgrid(np.arange(nx), np.arange(ny + 1))
        I, J = I.ravel(), J.ravel()
        ylo = np.where(J > 0, cell(I, J - 1), -1)
        yhi = np.where(J < ny, cell(I, np.minimum(J, ny - 1)), -1)
        yarea = dx[I]
        yg_lo = np.where(J > 0, 0.5*dy[np.maximum(J - 1, 0)], 0.0)/yarea
        yg_hi = np.where(J < ny, 0.5*dy[np.minimum(J, ny - 1)], 0.0)/yarea
        ycenter = np.column_stack([xc[I], ye[J]])
        ydist = (np.where(J > 0, 0.5*dy[np.maximum(J - 1, 0)], 0.0) +
            np.where(J < ny, 0.5*dy[np.minimum(J, ny - 1)], 0.0))

        self.face_lo = _readonly(np.concatenate([xlo, ylo]))
        self.face_hi = _readonly(np.concatenate([xhi, yhi]))
        self.face_area = _readonly(np.concatenate([xarea, yarea]))
        self.face_g_lo = _readonly(np.concatenate([xg_lo, yg_lo]))
        self.face_g_hi = _readonly(np.concatenate([xg_hi, yg_hi]))
        self.face_axis = _readonly(np.concatenate([
            np.zeros(xlo.size, dtype=int), np.ones(ylo.size, dtype=int)]))
        self.face_center = _readonly(np.vstack([xcenter, ycenter]))
        self.face_distance = _readonly(np.concatenate([xdist, ydist]))

    def side_faces(self, side):
        """Indices of the faces on a side and their parametric positions."""
        boundary = (self.face_lo < 0) | (self.face_hi < 0)
        if self.ndim == 1:
            idx = np.flatnonzero(boundary & ((self.face_lo < 0) ==
                (side in ("left", "inner"))))
            return idx, np.full(idx.size, 0.5)
        (x0, x1), (y0, y1) = self.extents
        axis = 0 if side in ("left", "right") else 1
        lower = side in ("left", "bottom")
        on_lower = self.face_lo < 0
        idx = np.flatnonzero(boundary & (self.face_axis == axis) &
            (on_lower == lower))
        if axis == 0:
            s = (self.face_center[idx, 1] - y0)/(y1 - y0)
        else:
            s = (self.face_center[idx, 0] - x0)/(x1 - x0)
        return idx, s

    def _tag_boundary(self):
        tags = np.full(self.nfaces, "", dtype=object)
        sides = np.full(self.nfaces, "", dtype=object)
        outward = np.zeros(self.nfaces)
        for side in self.sides:
            idx, s = self.side_faces(side)
            sides[idx] = side
            outward[idx] = -1.0 if side in ("left", "inner", "bottom") else 1.0
            for seg in (seg for seg in self.segments if seg.side == side):
                tags[idx[seg.contains(s)]] = seg.tag
        self.face_tag = _readonly(tags)
        self.face_side = _readonly(sides)
        self.face_outward = _readonly(outward)
        self.boundary_faces = _readonly(np.flatnonzero(outward != 0))
        self.interior_faces = _readonly(np.flatnonzero(outward == 0))

    def _build_operators(self):
        f = np.arange(self.nfaces)
        has_lo = self.face_lo >= 0
        has_hi = self.face_hi >= 0
        rows = np.concatenate([self.face_lo[has_lo], self.face_hi[has_hi]])
        cols = np.concatenate([f[has_lo], f[has_hi]])
        shape = (self.ncells, self.nfaces)

        # Flux divergence: +1 where the cell is on the low side of the face.
        vals = np.concatenate([np.ones(has_lo.sum()), -np.ones(has_hi.sum())])
        self.divergence = sp.csr_matrix((vals, (rows, cols)), shape=shape)

        # Half-cell resistances, face by cell.
        gvals = np.concatenate([self.face_g_lo[has_lo],
            self.face_g_hi[has_hi]])
        self.resistance = sp.csr_matrix((gvals, (cols, rows)),
            shape=(self.nfaces, self.ncells))

        # Face velocity -> per-axis cell velocity (mean of opposing faces).
        self.averaging = []
        for axis in range(self.ndim):
            on_axis = self.face_axis[cols] == axis
            avals = np.full(on_axis.sum(), 0.5)
            self.averaging.append(sp.csr_matrix(
                (avals, (rows[on_axis], cols[on_axis])), shape=shape))
        logger.debug("built %s grid with %d cells and %d faces",
            self.geometry, self.ncells, self.nfaces)

    def __repr__(self):
        return "StructuredGrid(%r, %r, %r)" % (self.geometry, self.cells,
            self.extents)
