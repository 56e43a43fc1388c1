"""Cartesian and polar occupancy grids.

Cells are occupied iff their centre lies in the set.  Polar cells are annular
sectors; the area of a cell in ring ``i`` is ``r_i * dr * dth`` with ``r_i`` the
ring's midpoint radius, which is exact for annular sectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import BudgetError, DomainError, SetRegion
from .hull import point_set_diameter

DEFAULT_CELL_BUDGET = 50_000_000


def _frozen(a, dtype=bool):
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class CartesianRaster:
    """Square cells of side ``h``; ``occupancy[row, col]`` covers
    ``[ox + col*h, ox + (col+1)*h] x [oy + row*h, oy + (row+1)*h]``."""

    origin: tuple
    h: float
    occupancy: np.ndarray

    def __post_init__(self):
        if not self.h > 0:
            raise DomainError("cell size must be positive")
        object.__setattr__(self, "origin", tuple(float(v) for v in self.origin))
        object.__setattr__(self, "occupancy", _frozen(np.atleast_2d(self.occupancy)))

    @property
    def width(self) -> int:
        return self.occupancy.shape[1]

    @property
    def height(self) -> int:
        return self.occupancy.shape[0]

    @property
    def count(self) -> int:
        return int(self.occupancy.sum())

    def measure(self) -> float:
        return self.count * self.h * self.h

    def centers(self) -> np.ndarray:
        rows, cols = np.nonzero(self.occupancy)
        ox, oy = self.origin
        return np.column_stack([ox + (cols + 0.5) * self.h, oy + (rows + 0.5) * self.h])

    def contains(self, pts) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        col = np.floor((pts[:, 0] - self.origin[0]) / self.h).astype(np.int64)
        row = np.floor((pts[:, 1] - self.origin[1]) / self.h).astype(np.int64)
        ok = (col >= 0) & (col < self.width) & (row >= 0) & (row < self.height)
        out = np.zeros(len(pts), dtype=bool)
        out[ok] = self.occupancy[row[ok], col[ok]]
        return out

    def hull_corners(self) -> np.ndarray:
        """Outer corners of the leftmost and rightmost occupied cell of every row."""
        occ = self.occupancy
        rows = np.nonzero(occ.any(axis=1))[0]
        if len(rows) == 0:
            return np.empty((0, 2))
        first = occ[rows].argmax(axis=1)
        last = occ.shape[1] - 1 - occ[rows, ::-1].argmax(axis=1)
        ox, oy = self.origin
        h = self.h
        xs = np.concatenate([ox + first * h, ox + (last + 1) * h])
        y0 = np.concatenate([oy + rows * h, oy + rows * h])
        return np.concatenate([np.column_stack([xs, y0]), np.column_stack([xs, y0 + h])])

    def diameter(self) -> float:
        corners = self.hull_corners()
        if len(corners) == 0:
            raise DomainError("diameter of an empty raster")
        return point_set_diameter(corners)[0]

    def diameter_slack(self) -> float:
        return 2.0 * self.h * math.sqrt(2.0)

    def with_occupancy(self, occupancy, origin=None) -> "CartesianRaster":
        return CartesianRaster(self.origin if origin is None else origin, self.h, occupancy)


@dataclass(frozen=True, eq=False)
class PolarRaster:
    """Annular-sector cells; ``occupancy[i, j]`` is ring ``i`` (radius
    ``r_min + (i + 1/2) dr``), sector ``j`` (angle ``-pi + (j + 1/2) dth``)."""

    r_min: float
    r_max: float
    occupancy: np.ndarray

    def __post_init__(self):
        if not (0 <= self.r_min < self.r_max):
            raise DomainError("need 0 <= r_min < r_max")
        occ = np.atleast_2d(self.occupancy)
        if occ.shape[1] % 2:
            raise DomainError("sector count must be even so no sector straddles angle 0")
        object.__setattr__(self, "r_min", float(self.r_min))
        object.__setattr__(self, "r_max", float(self.r_max))
        object.__setattr__(self, "occupancy", _frozen(occ))

    @property
    def n_rings(self) -> int:
        return self.occupancy.shape[0]

    @property
    def n_sectors(self) -> int:
        return self.occupancy.shape[1]

    @property
    def dr(self) -> float:
        return (self.r_max - self.r_min) / self.n_rings

    @property
    def dth(self) -> float:
        return 2.0 * math.pi / self.n_sectors

    @property
    def radii(self) -> np.ndarray:
        return self.r_min + (np.arange(self.n_rings) + 0.5) * self.dr

    @property
    def angles(self) -> np.ndarray:
        return -math.pi + (np.arange(self.n_sectors) + 0.5) * self.dth

    def ring_counts(self) -> np.ndarray:
        return self.occupancy.sum(axis=1)

    def arc_lengths(self) -> np.ndarray:
        """Length of each ring's trace, counted at the ring's midpoint radius."""
        return self.ring_counts() * self.radii * self.dth

    def measure(self) -> float:
        return float(np.sum(self.ring_counts() * self.radii) * self.dr * self.dth)

    def centers(self) -> np.ndarray:
        i, j = np.nonzero(self.occupancy)
        r, t = self.radii[i], self.angles[j]
        return np.column_stack([r * np.cos(t), r * np.sin(t)])

    def boundary_cells(self) -> tuple:
        occ = self.occupancy
        pad = np.pad(occ, ((1, 1), (0, 0)), constant_values=False)
        interior = (
            occ
            & pad[:-2]
            & pad[2:]
            & np.roll(occ, 1, axis=1)
            & np.roll(occ, -1, axis=1)
        )
        return np.nonzero(occ & ~interior)

    def hull_corners(self) -> np.ndarray:
        i, j = self.boundary_cells()
        if len(i) == 0:
            return np.empty((0, 2))
        r = self.radii[i]
        t = self.angles[j]
        pts = []
        for dr in (-0.5 * self.dr, 0.5 * self.dr):
            for dt in (-0.5 * self.dth, 0.5 * self.dth):
                pts.append(np.column_stack([(r + dr) * np.cos(t + dt), (r + dr) * np.sin(t + dt)]))
        return np.concatenate(pts)

    def diameter(self) -> float:
        """Conservative diameter: corner hull plus the outer-arc bulge on both ends."""
        corners = self.hull_corners()
        if len(corners) == 0:
            raise DomainError("diameter of an empty raster")
        bulge = self.r_max * (1.0 - math.cos(0.5 * self.dth))
        return point_set_diameter(corners)[0] + 2.0 * bulge

    def diameter_slack(self) -> float:
        return 2.0 * max(self.dr, self.r_max * self.dth) * math.sqrt(2.0)

    def with_occupancy(self, occupancy) -> "PolarRaster":
        return PolarRaster(self.r_min, self.r_max, occupancy)


def _grid_budget(n: int, budget: int):
    if n > budget:
        raise BudgetError(f"grid of {n} cells exceeds the budget of {budget}")


def rasterize(s: SetRegion, h: float, max_cells: int = DEFAULT_CELL_BUDGET) -> CartesianRaster:
    """Centre-rule Cartesian raster with origin snapped to multiples of ``h``."""
    if not h > 0:
        raise DomainError("cell size must be positive")
    if s.dim != 2:
        raise DomainError("rasters are planar only")
    if s.is_empty:
        return CartesianRaster((0.0, 0.0), h, np.zeros((0, 0), dtype=bool))
    lo, hi = s.bounding_box()
    lo = np.floor(lo / h) * h
    w, ht = (int(v) for v in np.maximum(np.ceil((hi - lo) / h - 1e-9), 1))
    _grid_budget(w * ht, max_cells)
    xs = lo[0] + (np.arange(w) + 0.5) * h
    occ = np.zeros((ht, w), dtype=bool)
    step = max(1, 2_000_000 // w)
    for r0 in range(0, ht, step):
        ys = lo[1] + (np.arange(r0, min(ht, r0 + step)) + 0.5) * h
        X, Y = np.meshgrid(xs, ys)
        occ[r0 : r0 + len(ys)] = s.contains(np.column_stack([X.ravel(), Y.ravel()])).reshape(X.shape)
    return CartesianRaster(tuple(lo), h, occ)


def polar_grid(r_min: float, r_max: float, dr: float, dth: float) -> tuple:
    """(n_rings, n_sectors) for the requested steps; the sector count is rounded to even."""
    if not (dr > 0 and dth > 0):
        raise DomainError("dr and dth must be positive")
    if not (0 <= r_min < r_max):
        raise DomainError("need 0 <= r_min < r_max")
    n_r = max(1, int(round((r_max - r_min) / dr)))
    n_t = max(2, 2 * int(round(math.pi / dth)))
    return n_r, n_t


def to_polar(s, r_min: float, r_max: float, dr: float, dth: float,
             max_cells: int = DEFAULT_CELL_BUDGET) -> PolarRaster:
    """Polar raster of a region or Cartesian raster (cell-centre rule)."""
    n_r, n_t = polar_grid(r_min, r_max, dr, dth)
    _grid_budget(n_r * n_t, max_cells)
    grid = PolarRaster(r_min, r_max, np.zeros((n_r, n_t), dtype=bool))
    empty = s.is_empty if isinstance(s, SetRegion) else s.count == 0
    if empty:
        return grid
    occ = np.zeros((n_r, n_t), dtype=bool)
    cos_t, sin_t = np.cos(grid.angles), np.sin(grid.angles)
    for i, r in enumerate(grid.radii):
        occ[i] = s.contains(np.column_stack([r * cos_t, r * sin_t]))
    return grid.with_occupancy(occ)
