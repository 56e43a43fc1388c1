"""Exact set representations: disks, annulus / half-plane clips and their unions.

A :class:`SetRegion` is the union of its disks intersected with every clip.
Planar measure is computed by integrating the exact cross-section length
``L(x)`` with adaptive quadrature between the x-coordinates where the
cross-section changes combinatorially, so clips cost nothing extra.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np
from scipy import integrate
from scipy.special import gammaln


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class BudgetError(RuntimeError):
    """A grid or enumeration would exceed its configured size budget."""


def ball_volume(d: int) -> float:
    """Volume of the unit ball in R^d, pi^(d/2) / Gamma(d/2 + 1)."""
    if int(d) != d or d < 1:
        raise DomainError(f"dimension must be a positive integer, got {d!r}")
    return math.exp(0.5 * d * math.log(math.pi) - gammaln(0.5 * d + 1.0))


@dataclass(frozen=True)
class Disk:
    """Closed ball D(center, radius); in the plane a disk."""

    center: tuple
    radius: float

    def __post_init__(self):
        c = tuple(float(v) for v in np.atleast_1d(self.center))
        object.__setattr__(self, "center", c)
        if not all(math.isfinite(v) for v in c):
            raise DomainError("disk center must be finite")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise DomainError(f"disk radius must be positive, got {self.radius!r}")
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def dim(self) -> int:
        return len(self.center)


@dataclass(frozen=True)
class Annulus:
    """Closed annulus {inner <= |x| <= outer} centred at the origin."""

    inner: float
    outer: float

    def __post_init__(self):
        if not (0 < self.inner < self.outer):
            raise DomainError(f"need 0 < inner < outer, got {self.inner}, {self.outer}")
        object.__setattr__(self, "inner", float(self.inner))
        object.__setattr__(self, "outer", float(self.outer))


@dataclass(frozen=True)
class HalfPlane:
    """Closed half-plane {x : normal . x <= offset}."""

    normal: tuple
    offset: float

    def __post_init__(self):
        n = tuple(float(v) for v in self.normal)
        if len(n) != 2 or math.hypot(*n) == 0:
            raise DomainError("half-plane normal must be a nonzero 2-vector")
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", float(self.offset))


Clip = Union[Annulus, HalfPlane]


@dataclass(frozen=True)
class SetRegion:
    """Union of ``disks`` intersected with all ``clips``."""

    dim: int = 2
    disks: tuple = ()
    clips: tuple = ()

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError("dimension must be >= 1")
        object.__setattr__(self, "disks", tuple(self.disks))
        object.__setattr__(self, "clips", tuple(self.clips))
        for disk in self.disks:
            if disk.dim != self.dim:
                raise DomainError(f"disk of dimension {disk.dim} in a {self.dim}-d region")
        if self.clips and self.dim != 2:
            raise DomainError("clips are only supported in the plane")

    @classmethod
    def from_disks(cls, centers, radii, clips=()):
        centers = np.atleast_2d(np.asarray(centers, dtype=float))
        radii = np.broadcast_to(np.asarray(radii, dtype=float), (len(centers),))
        disks = tuple(Disk(tuple(c), r) for c, r in zip(centers, radii))
        return cls(dim=centers.shape[1], disks=disks, clips=tuple(clips))

    @property
    def is_empty(self) -> bool:
        return len(self.disks) == 0

    def contains(self, pts, eps: float = 0.0) -> np.ndarray:
        """Membership mask for an (n, dim) array of points; ``eps`` inflates every constraint."""
        pts = np.asarray(pts, dtype=float)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        inside = np.zeros(len(pts), dtype=bool)
        for disk in self.disks:
            c = np.asarray(disk.center)
            r = disk.radius + eps
            inside |= np.einsum("ij,ij->i", pts - c, pts - c) <= r * r
        for clip in self.clips:
            inside &= _clip_mask(clip, pts, eps)
        return inside[0] if single else inside

    def bounding_box(self) -> tuple:
        """(lo, hi) arrays of the axis-aligned box around all disks, tightened by annulus clips."""
        if self.is_empty:
            raise DomainError("empty region has no bounding box")
        c = np.array([d.center for d in self.disks])
        r = np.array([d.radius for d in self.disks])[:, None]
        lo, hi = (c - r).min(axis=0), (c + r).max(axis=0)
        for clip in self.clips:
            if isinstance(clip, Annulus):
                lo = np.maximum(lo, -clip.outer)
                hi = np.minimum(hi, clip.outer)
        # disks lying wholly outside the clip leave a zero-volume box
        return lo, np.maximum(hi, lo)

    def circles(self) -> list:
        """Every boundary circle as (cx, cy, r): disk rims and annulus rims."""
        out = [(d.center[0], d.center[1], d.radius) for d in self.disks]
        for clip in self.clips:
            if isinstance(clip, Annulus):
                out += [(0.0, 0.0, clip.inner), (0.0, 0.0, clip.outer)]
        return out

    def lines(self) -> list:
        return [c for c in self.clips if isinstance(c, HalfPlane)]


def _clip_mask(clip, pts, eps=0.0):
    if isinstance(clip, Annulus):
        r2 = np.einsum("ij,ij->i", pts, pts)
        return (r2 >= (clip.inner - eps) ** 2) & (r2 <= (clip.outer + eps) ** 2)
    n = np.asarray(clip.normal)
    return pts @ n <= clip.offset + eps * math.hypot(*n)


# ---------------------------------------------------------------------------
# cross-sections


def _union(intervals):
    if not intervals:
        return []
    intervals = sorted(intervals)
    out = [list(intervals[0])]
    for a, b in intervals[1:]:
        if a <= out[-1][1]:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return [tuple(iv) for iv in out]


def _intersect(xs, ys):
    out = []
    i = j = 0
    while i < len(xs) and j < len(ys):
        a = max(xs[i][0], ys[j][0])
        b = min(xs[i][1], ys[j][1])
        if a < b:
            out.append((a, b))
        if xs[i][1] < ys[j][1]:
            i += 1
        else:
            j += 1
    return out


def _clip_section(clip, x):
    if isinstance(clip, Annulus):
        if abs(x) >= clip.outer:
            return []
        top = math.sqrt(clip.outer**2 - x * x)
        if abs(x) >= clip.inner:
            return [(-top, top)]
        low = math.sqrt(clip.inner**2 - x * x)
        return [(-top, -low), (low, top)]
    nx, ny = clip.normal
    if ny == 0:
        return [(-math.inf, math.inf)] if nx * x <= clip.offset else []
    bound = (clip.offset - nx * x) / ny
    return [(-math.inf, bound)] if ny > 0 else [(bound, math.inf)]


def section(region: SetRegion, x: float) -> list:
    """The vertical cross-section of a planar region at abscissa ``x`` as disjoint intervals."""
    chords = []
    for d in region.disks:
        dx = x - d.center[0]
        if abs(dx) < d.radius:
            half = math.sqrt(d.radius * d.radius - dx * dx)
            chords.append((d.center[1] - half, d.center[1] + half))
    out = _union(chords)
    for clip in region.clips:
        if not out:
            break
        out = _intersect(out, _clip_section(clip, x))
    return out


def section_length(region: SetRegion, x: float) -> float:
    return sum(b - a for a, b in section(region, x))


def _circle_circle(c1, c2):
    (x1, y1, r1), (x2, y2, r2) = c1, c2
    dx, dy = x2 - x1, y2 - y1
    dist = math.hypot(dx, dy)
    if dist == 0 or dist > r1 + r2 or dist < abs(r1 - r2):
        return []
    along = (r1 * r1 - r2 * r2 + dist * dist) / (2 * dist)
    h = math.sqrt(max(r1 * r1 - along * along, 0.0))
    mx, my = x1 + along * dx / dist, y1 + along * dy / dist
    return [(mx - h * dy / dist, my + h * dx / dist), (mx + h * dy / dist, my - h * dx / dist)]


def _circle_line(circle, line):
    cx, cy, r = circle
    n = np.asarray(line.normal)
    nn = float(n @ n)
    dist = (line.offset - n @ (cx, cy)) / math.sqrt(nn)
    if abs(dist) > r:
        return []
    foot = np.array([cx, cy]) + dist * n / math.sqrt(nn)
    tangent = np.array([-n[1], n[0]]) / math.sqrt(nn)
    h = math.sqrt(max(r * r - dist * dist, 0.0))
    return [tuple(foot + h * tangent), tuple(foot - h * tangent)]


def _line_line(l1, l2):
    a = np.array([l1.normal, l2.normal])
    if abs(np.linalg.det(a)) < 1e-14:
        return []
    return [tuple(np.linalg.solve(a, [l1.offset, l2.offset]))]


def corner_points(region: SetRegion) -> np.ndarray:
    """Pairwise intersections of all boundary curves (candidate corners of the region)."""
    circles, lines = region.circles(), region.lines()
    pts = []
    for c1, c2 in itertools.combinations(circles, 2):
        pts += _circle_circle(c1, c2)
    for c in circles:
        for ln in lines:
            pts += _circle_line(c, ln)
    for l1, l2 in itertools.combinations(lines, 2):
        pts += _line_line(l1, l2)
    return np.array(pts, dtype=float).reshape(-1, 2)


def _breakpoints(region: SetRegion, lo: float, hi: float) -> np.ndarray:
    xs = [lo, hi]
    for cx, _, r in region.circles():
        xs += [cx - r, cx + r]
    for ln in region.lines():
        if ln.normal[1] == 0:
            xs.append(ln.offset / ln.normal[0])
    xs += list(corner_points(region)[:, 0])
    xs = np.unique(np.clip(np.array(xs, dtype=float), lo, hi))
    return xs


def measure(s, tol: float = 1e-6, samples: int = 200_000, seed: int = 0) -> float:
    """Lebesgue measure of a region or raster.

    Rasters return their exact cell sum.  Planar regions integrate the exact
    cross-section length piecewise with absolute tolerance ``tol``.  Regions in
    d >= 3 are exact for pairwise-disjoint balls and otherwise use a seeded
    Monte Carlo estimate with ``samples`` points.
    """
    if hasattr(s, "measure") and not isinstance(s, SetRegion):
        return s.measure()
    if s.is_empty:
        return 0.0
    if s.dim == 1:
        ivs = _union([(d.center[0] - d.radius, d.center[0] + d.radius) for d in s.disks])
        return float(sum(b - a for a, b in ivs))
    if s.dim >= 3:
        if _disjoint_balls(s):
            return float(sum(ball_volume(s.dim) * d.radius**s.dim for d in s.disks))
        return measure_mc(s, samples=samples, seed=seed).value
    lo, hi = s.bounding_box()
    xs = _breakpoints(s, lo[0], hi[0])
    pieces = max(len(xs) - 1, 1)
    total = 0.0
    for a, b in zip(xs[:-1], xs[1:]):
        if b - a <= 0:
            continue
        val, _ = integrate.quad(
            lambda x: section_length(s, x), a, b, epsabs=tol / pieces, epsrel=1e-12, limit=200
        )
        total += val
    return max(total, 0.0)


def _disjoint_balls(s: SetRegion) -> bool:
    for d1, d2 in itertools.combinations(s.disks, 2):
        if math.dist(d1.center, d2.center) < d1.radius + d2.radius:
            return False
    return not s.clips


def sample_uniform(s: SetRegion, n: int, rng: np.random.Generator, max_rounds: int = 200) -> np.ndarray:
    """``n`` points uniformly distributed in ``s`` by rejection from its bounding box."""
    lo, hi = s.bounding_box()
    out, have = [], 0
    for _ in range(max_rounds):
        if have >= n:
            break
        batch = rng.uniform(lo, hi, size=(max(2 * (n - have), 1024), s.dim))
        keep = batch[s.contains(batch)]
        out.append(keep)
        have += len(keep)
    if have < n:
        raise DomainError("region has (numerically) zero measure; cannot sample it")
    return np.concatenate(out)[:n]


def measure_mc(s: SetRegion, samples: int = 200_000, seed: int = 0):
    """Bounding-box Monte Carlo estimate of the measure, in any dimension."""
    from .graph import Estimate

    if s.is_empty:
        return Estimate(0.0, 0.0, samples, seed)
    lo, hi = s.bounding_box()
    box = float(np.prod(hi - lo))
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < samples:
        m = min(1_000_000, samples - done)
        hits += int(s.contains(rng.uniform(lo, hi, size=(m, s.dim))).sum())
        done += m
    p = hits / samples
    se = box * math.sqrt(p * (1 - p) / max(samples - 1, 1))
    return Estimate(box * p, se, samples, seed)


# ---------------------------------------------------------------------------
# boundary sampling, diameter, distance


def boundary_samples(region: SetRegion, per_circle: int = 4096, per_line: int = 4096) -> np.ndarray:
    """Points on the region's boundary: dense samples of every rim and line kept where
    they lie in the (slightly inflated) closed region, plus exact corners."""
    if region.dim != 2:
        raise DomainError("boundary sampling is planar only")
    pts = []
    t = np.linspace(-math.pi, math.pi, per_circle, endpoint=False)
    for cx, cy, r in region.circles():
        pts.append(np.column_stack([cx + r * np.cos(t), cy + r * np.sin(t)]))
    if region.lines():
        lo, hi = region.bounding_box()
        span = float(np.max(hi - lo)) + 1.0
        mid = 0.5 * (lo + hi)
        for ln in region.lines():
            n = np.asarray(ln.normal) / math.hypot(*ln.normal)
            off = ln.offset / math.hypot(*ln.normal)
            foot = mid + (off - mid @ n) * n
            tang = np.array([-n[1], n[0]])
            u = np.linspace(-span, span, per_line)
            pts.append(foot + u[:, None] * tang)
    pts.append(corner_points(region))
    pts = np.concatenate(pts)
    scale = max(1.0, float(np.abs(pts).max()))
    return pts[region.contains(pts, eps=1e-9 * scale)]


def _arc_tolerance(region: SetRegion, per_circle: int) -> float:
    rmax = max(r for _, _, r in region.circles())
    return 2.0 * rmax * (1.0 - math.cos(math.pi / per_circle))


def diameter_with_tolerance(s, per_circle: int = 4096) -> tuple:
    """(diameter, tolerance).  For rasters the value is the conservative
    outer-corner diameter and the tolerance is the corner inflation 2*h*sqrt(2)."""
    if not isinstance(s, SetRegion):
        return s.diameter(), s.diameter_slack()
    if s.is_empty:
        raise DomainError("diameter of an empty set")
    if not s.clips:
        # farthest points of a union of balls are on the segment through two centres
        c = np.array([d.center for d in s.disks])
        r = np.array([d.radius for d in s.disks])
        dist = np.sqrt(((c[:, None, :] - c[None, :, :]) ** 2).sum(-1))
        return float((dist + r[:, None] + r[None, :]).max()), 0.0
    from .hull import point_set_diameter

    pts = boundary_samples(s, per_circle=per_circle)
    if len(pts) == 0:
        raise DomainError("region is empty after clipping")
    value, _, _ = point_set_diameter(pts)
    return value, _arc_tolerance(s, per_circle)


def diameter(s, per_circle: int = 4096) -> float:
    """Diameter of a region (exact for unclipped disk unions) or a raster (outer corners)."""
    return diameter_with_tolerance(s, per_circle)[0]


def set_distance(a: SetRegion, b: SetRegion, per_circle: int = 4096) -> float:
    """dist(A, B) = inf |x - y|; zero when the sets meet."""
    if a.is_empty or b.is_empty:
        raise DomainError("distance to an empty set")
    if not a.clips and not b.clips:
        gaps = [
            math.dist(d1.center, d2.center) - d1.radius - d2.radius
            for d1 in a.disks
            for d2 in b.disks
        ]
        return max(0.0, min(gaps))
    if a.dim != 2:
        raise DomainError("clipped regions are planar only")
    from scipy.spatial import cKDTree

    pa, pb = boundary_samples(a, per_circle), boundary_samples(b, per_circle)
    if len(pa) == 0 or len(pb) == 0:
        raise DomainError("region is empty after clipping")
    if b.contains(pa).any() or a.contains(pb).any():
        return 0.0
    dist, _ = cKDTree(pb).query(pa)
    return float(dist.min())
