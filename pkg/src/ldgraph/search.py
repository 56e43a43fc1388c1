"""Extremal constructions and searches.

* the explicit maximiser of measure among diameter-2 subsets of an annulus,
* simulated annealing over polar rasters that tries to rediscover it,
* ball constructions for the clique-isodiametric problem and a small
  Nelder-Mead search over ball families.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import minimize

from . import bounds
from .clique import clique_search, exhaustive_clique, is_clique
from .geometry import Annulus, DomainError, SetRegion, ball_volume, measure
from .graph import edge_measure_mc, turan_bound
from .io import dumps_raster, region_to_dict
from .raster import PolarRaster, polar_grid

INNER = 2.0


@dataclass(frozen=True)
class SearchResult:
    """Best configuration of a search together with the bound it is compared to.

    ``target_bound`` is None when no bound is known (``target_label`` says
    why); ``gap`` is then None as well.
    """

    best_region: object
    best_value: float
    target_bound: float | None
    gap: float | None
    iterations: int
    seed: int
    wall_time: float
    target_label: str = "sharp"
    details: dict = field(default_factory=dict)

    def to_dict(self, include_region: bool = True) -> dict:
        out = {
            "best_value": self.best_value,
            "target_bound": self.target_bound,
            "target_label": self.target_label,
            "gap": self.gap,
            "iterations": self.iterations,
            "seed": self.seed,
            "wall_time": self.wall_time,
            "details": {k: v for k, v in self.details.items() if k != "trace"},
        }
        if include_region:
            if isinstance(self.best_region, SetRegion):
                out["best_region"] = {"scene": region_to_dict(self.best_region)}
            elif isinstance(self.best_region, PolarRaster):
                out["best_region"] = {"praster_shape": list(self.best_region.occupancy.shape),
                                      "cells": int(self.best_region.occupancy.sum())}
        return out

    def raster_text(self) -> str | None:
        if isinstance(self.best_region, PolarRaster):
            return dumps_raster(self.best_region)
        return None


def _result(region, value, target, label, iterations, seed, t0, details) -> SearchResult:
    gap = None if target is None else target - value
    return SearchResult(region, float(value), target, gap, int(iterations), int(seed),
                        time.perf_counter() - t0, label, details)


# ---------------------------------------------------------------------------
# the annulus maximiser


@dataclass(frozen=True)
class AnnulusExtremal:
    """D((s, 0), 1) & Annulus(2, R) with its four corners.

    X1, X2 = (x1, +-a) lie on the outer circle and Y1, Y2 = (y1, +-a) on the
    inner one; the unit circle about S = (s, 0) passes through all four.
    """

    R: float
    a: float
    s: float
    X1: tuple
    X2: tuple
    Y1: tuple
    Y2: tuple
    region: SetRegion

    def outline(self, n: int = 200) -> np.ndarray:
        """Closed counter-clockwise boundary polyline, ``n`` points per arc."""
        x1, y1, a, s = self.X1[0], self.Y1[0], self.a, self.s
        alpha = math.atan2(a, x1)
        beta = math.atan2(a, y1)
        phi_x = math.atan2(a, x1 - s)
        phi_y = math.atan2(a, y1 - s)
        t = np.linspace(0.0, 1.0, n)

        def arc(cx, r, a0, a1):
            ang = a0 + (a1 - a0) * t
            return np.column_stack([cx + r * np.cos(ang), r * np.sin(ang)])

        if a == 0.0:
            # degenerate: the whole unit disk
            ang = np.linspace(0.0, 2.0 * math.pi, 4 * n)
            return np.column_stack([s + np.cos(ang), np.sin(ang)])
        parts = [
            arc(0.0, self.R, -alpha, alpha),
            arc(s, 1.0, phi_x, phi_y),
            arc(0.0, INNER, beta, -beta),
            arc(s, 1.0, -phi_y, -phi_x),
        ]
        return np.concatenate(parts)


def optimal_annulus_set(R: float) -> AnnulusExtremal:
    """The measure maximiser among diameter-2 subsets of Annulus(2, R), R in [2*sqrt(2), 4]."""
    R = float(R)
    if not (bounds.Z_MIN - 1e-12 <= R <= bounds.Z_MAX + 1e-12):
        raise DomainError(f"R={R} is outside [2*sqrt(2), 4]")
    a = bounds.a_of(R)
    x1 = math.sqrt(R * R - a * a)
    y1 = math.sqrt(INNER * INNER - a * a)
    s = 0.5 * (x1 + y1)
    region = SetRegion.from_disks([(s, 0.0)], [1.0], clips=[Annulus(INNER, R)])
    return AnnulusExtremal(R, a, s, (x1, a), (x1, -a), (y1, a), (y1, -a), region)


# ---------------------------------------------------------------------------
# simulated annealing on arc profiles
#
# A state stores one contiguous arc [lo_i, hi_i) of sectors per ring; circular
# symmetrization shows nothing is lost by this.  The farthest pair of two
# annular sectors is always a pair of corners, so the exact diameter test
# reduces to one integer per pair of rings: the widest angular span (in
# sectors) the two rings may cover together.  A move is feasible iff
# max(hi_i - lo_j, hi_j - lo_i) <= span[i, j] for every occupied j.

_EMPTY = 10**9


@dataclass(frozen=True)
class AnnealParams:
    """Annealing schedule.

    Temperatures are in units of the mean cell area, so the schedule does not
    depend on the grid.  ``mix`` is the proposal mix (boundary flips, angular
    shifts, symmetrization).  Flips and shifts act on a band of consecutive
    rings whose width is 1 + Exp(``band_scale``); the step in sectors is
    1 + Exp(``step_scale``).
    """

    iterations: int = 200_000
    t_initial: float = 30.0
    cooling: float = 0.999
    steps_per_temperature: int = 30
    mix: tuple = (0.8, 0.15, 0.05)
    step_scale: float = 3.0
    band_scale: float = 8.0
    trace_every: int = 1000

    def validate(self) -> None:
        if self.iterations < 1 or self.steps_per_temperature < 1 or self.trace_every < 1:
            raise DomainError("iteration counts must be positive")
        if not (0.0 < self.cooling <= 1.0):
            raise DomainError("cooling factor must lie in (0, 1]")
        if not self.t_initial > 0:
            raise DomainError("initial temperature must be positive")
        if len(self.mix) != 3 or min(self.mix) < 0 or abs(sum(self.mix) - 1.0) > 1e-9:
            raise DomainError("proposal mix must be three nonnegative weights summing to 1")
        if self.step_scale < 0 or self.band_scale < 0:
            raise DomainError("step scales must be nonnegative")


def span_limits(r_min: float, r_max: float, n_rings: int, dth: float, diam: float = 2.0) -> np.ndarray:
    """Widest allowed joint angular span, in sectors, for every pair of rings.

    Entry (i, j) is the largest integer m such that every point of ring i and
    every point of ring j within a common angular window of m sectors are at
    most ``diam`` apart; -1 if even one sector is too wide.
    """
    dr = (r_max - r_min) / n_rings
    lo = r_min + np.arange(n_rings) * dr
    ends = (lo, lo + dr)
    worst = np.full((n_rings, n_rings), -np.inf)
    for a in ends:
        for b in ends:
            worst = np.maximum(worst, (a[:, None] ** 2 + b[None, :] ** 2 - diam * diam)
                               / (2.0 * a[:, None] * b[None, :]))
    ang = np.arccos(np.clip(worst, -1.0, 1.0))
    m = np.floor(ang / dth + 1e-9).astype(np.int64)
    m[worst > 1.0] = -1

    # guard the floor against rounding: recheck each entry with the corner formula
    def too_wide(span):
        c = np.cos(span * dth)
        d2 = np.full(span.shape, -np.inf)
        for a in ends:
            for b in ends:
                d2 = np.maximum(d2, a[:, None] ** 2 + b[None, :] ** 2 - 2.0 * a[:, None] * b[None, :] * c)
        return (d2 > diam * diam) & (span >= 0)

    while True:
        bad = too_wide(m)
        if not bad.any():
            return m
        m[bad] -= 1


def _profile_ok(lo, hi, limits) -> bool:
    occ = lo != _EMPTY
    if not occ.any():
        return True
    L, H = lo[occ], hi[occ]
    span = np.maximum(H[:, None] - L[None, :], H[None, :] - L[:, None])
    return bool((span <= limits[np.ix_(occ, occ)]).all())


def _corner_diameter(p: PolarRaster) -> float:
    """Exact diameter of the union of occupied cells (max over cell corners)."""
    from .hull import point_set_diameter

    i, j = np.nonzero(p.occupancy)
    if len(i) == 0:
        return 0.0
    r0 = p.r_min + i * p.dr
    t0 = -math.pi + j * p.dth
    pts = [np.column_stack([r * np.cos(t), r * np.sin(t)])
           for r in (r0, r0 + p.dr) for t in (t0, t0 + p.dth)]
    return point_set_diameter(np.concatenate(pts))[0]


class _ArcAnnealer:
    def __init__(self, R, n_r, n_t, schedule, seed):
        self.R, self.n_r, self.n_t, self.sch = R, n_r, n_t, schedule
        self.dr = (R - INNER) / n_r
        self.dth = 2.0 * math.pi / n_t
        self.limits = span_limits(INNER, R, n_r, self.dth)
        self.radii = INNER + (np.arange(n_r) + 0.5) * self.dr
        self.weight = self.radii / self.radii.mean()
        self.cell = float(self.radii.mean()) * self.dr * self.dth
        self.centre = n_t // 2
        # arcs stay inside the open half-plane x > 0
        self.win = (n_t // 4 + 1, 3 * n_t // 4 - 1)
        rng = np.random.default_rng(seed)
        its = schedule.iterations
        self.U = rng.random((its, 5))
        self.steps = 1 + rng.exponential(schedule.step_scale, its).astype(np.int64)
        self.widths = 1 + rng.exponential(schedule.band_scale, its).astype(np.int64)
        self.lo = np.full(n_r, _EMPTY, dtype=np.int64)
        self.hi = np.full(n_r, -_EMPTY, dtype=np.int64)
        self.value = 0.0
        self.best_value = 0.0
        self.best = (self.lo.copy(), self.hi.copy())
        self.T = schedule.t_initial
        self.accepted = 0

    def symmetrize(self):
        n = np.where(self.lo == _EMPTY, 0, self.hi - self.lo)
        occ = n > 0
        self.lo = np.where(occ, self.centre - n // 2, _EMPTY)
        self.hi = np.where(occ, self.centre + (n + 1) // 2, -_EMPTY)
        self.accepted += 1

    def proposal(self, it):
        """(a, b, new_lo, new_hi) for a band move, or None."""
        mix = self.sch.mix
        u_kind, u_ring, u_sign, u_side, _ = self.U[it]
        a = int(u_ring * self.n_r)
        b = min(self.n_r, a + int(self.widths[it]))
        old_lo, old_hi = self.lo[a:b], self.hi[a:b]
        empty = old_lo == _EMPTY
        d = int(self.steps[it]) if u_sign < 0.5 else -int(self.steps[it])
        if u_kind < mix[0]:
            if empty.any():
                if d < 0 and empty.all():
                    return None
                # new arcs start at the typical centre of the occupied ones
                occ = self.lo != _EMPTY
                mid = int(np.median((self.lo[occ] + self.hi[occ]) // 2)) if occ.any() else self.centre
                old_lo = np.where(empty, mid, old_lo)
                old_hi = np.where(empty, mid, old_hi)
            if u_side < 1 / 3:
                new_lo, new_hi = old_lo - d, old_hi
            elif u_side < 2 / 3:
                new_lo, new_hi = old_lo, old_hi + d
            else:
                half = int(math.copysign(abs(d) // 2, d))
                new_lo, new_hi = old_lo - half, old_hi + (d - half)
            gone = new_hi <= new_lo
            return a, b, np.where(gone, _EMPTY, new_lo), np.where(gone, -_EMPTY, new_hi)
        if u_kind < mix[0] + mix[1]:
            if empty.any():
                return None
            return a, b, old_lo + d, old_hi + d
        return "sym"

    def step(self, it):
        prop = self.proposal(it)
        if prop is None:
            return
        if prop == "sym":
            self.symmetrize()
            return
        a, b, new_lo, new_hi = prop
        live = new_lo != _EMPTY
        if live.any() and (new_lo[live].min() < self.win[0] or new_hi[live].max() > self.win[1]):
            return
        old_lo, old_hi = self.lo[a:b], self.hi[a:b]
        old_n = np.where(old_lo == _EMPTY, 0, old_hi - old_lo)
        new_n = np.where(live, new_hi - new_lo, 0)
        dv = float(self.weight[a:b] @ (new_n - old_n))
        if dv < 0 and self.U[it, 4] >= math.exp(dv / self.T):
            return
        lo = self.lo.copy()
        hi = self.hi.copy()
        lo[a:b] = new_lo
        hi[a:b] = new_hi
        if live.any():
            span = np.maximum(new_hi[live, None] - lo[None, :], hi[None, :] - new_lo[live, None])
            if (span > self.limits[a:b][live]).any():
                return
        self.lo, self.hi = lo, hi
        self.value += dv
        self.accepted += 1
        if self.value > self.best_value:
            self.best_value = self.value
            self.best = (lo.copy(), hi.copy())

    def raster(self, lo, hi) -> PolarRaster:
        j = np.arange(self.n_t)
        occ = (j[None, :] >= lo[:, None]) & (j[None, :] < hi[:, None])
        return PolarRaster(INNER, self.R, occ)


def _annulus_target(R):
    if R >= bounds.Z_MIN - 1e-12:
        return bounds.h_of(min(max(R, bounds.Z_MIN), bounds.Z_MAX)), "sharp"
    return None, "unknown: R is below 2*sqrt(2), where no sharp bound is known"


def anneal_annulus(R: float, dr: float, dth: float, schedule: AnnealParams | None = None,
                   seed: int = 0) -> SearchResult:
    """Anneal a diameter-2 polar raster inside Annulus(2, R) towards maximum measure.

    Every accepted state passes the exact cell-corner diameter test, so the
    returned raster, read as a union of closed cells, has diameter at most 2.
    The state is also re-audited from scratch at every trace row.
    ``details["trace"]`` holds rows (iteration, temperature, value, best, accepted).
    """
    schedule = schedule or AnnealParams()
    schedule.validate()
    R = float(R)
    if not (INNER < R <= bounds.Z_MAX + 1e-12):
        raise DomainError(f"R={R} is outside (2, 4]")
    t0 = time.perf_counter()
    n_r, n_t = polar_grid(INNER, R, dr, dth)
    st = _ArcAnnealer(R, n_r, n_t, schedule, seed)
    trace = []
    audit_failures = 0
    for it in range(schedule.iterations):
        if it and it % schedule.steps_per_temperature == 0:
            st.T *= schedule.cooling
        st.step(it)
        if (it + 1) % schedule.trace_every == 0 or it + 1 == schedule.iterations:
            audit_failures += not _profile_ok(st.lo, st.hi, st.limits)
            trace.append((it + 1, st.T, st.value * st.cell, st.best_value * st.cell, st.accepted))
    best = st.raster(*st.best)
    value = best.measure()
    target, label = _annulus_target(R)
    details = {
        "R": R,
        "dr": st.dr,
        "dth": st.dth,
        "accepted": st.accepted,
        "audits": len(trace),
        "audit_failures": audit_failures,
        "corner_diameter": _corner_diameter(best),
        "trace": trace,
    }
    return _result(best, value, target, label, schedule.iterations, seed, t0, details)


def _anneal_job(args):
    return anneal_annulus(*args)


def anneal_restarts(R: float, dr: float, dth: float, schedule: AnnealParams | None = None,
                    seed: int = 0, restarts: int = 4, workers: int = 1) -> SearchResult:
    """Best of ``restarts`` independent anneals seeded seed, seed+1, ...

    Ties go to the lowest restart index, so the result does not depend on
    ``workers``.
    """
    if restarts < 1:
        raise DomainError("need at least one restart")
    t0 = time.perf_counter()
    jobs = [(R, dr, dth, schedule, seed + i) for i in range(restarts)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            runs = list(pool.map(_anneal_job, jobs))
    else:
        runs = [_anneal_job(j) for j in jobs]
    best_i = max(range(restarts), key=lambda i: (runs[i].best_value, -i))
    best = runs[best_i]
    details = dict(best.details)
    details["restart_values"] = [r.best_value for r in runs]
    details["restart_index"] = best_i
    details["audit_failures"] = sum(r.details["audit_failures"] for r in runs)
    return replace(best, iterations=sum(r.iterations for r in runs),
                   wall_time=time.perf_counter() - t0, details=details)


def trace_csv(result: SearchResult) -> str:
    lines = ["iteration,temperature,value,best,accepted"]
    for it, T, v, b, acc in result.details["trace"]:
        lines.append(f"{it},{T!r},{v!r},{b!r},{acc}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# clique-isodiametric constructions

FAMILIES = ("balls", "single")


def known_optimum(d: int, k: int) -> float | None:
    """Largest measure of a K_k-free set in R^d where it is known."""
    if k == 2:
        return ball_volume(d)  # isodiametric inequality
    if (d, k) == (2, 3):
        return 2.0 * math.pi
    return None


def _measure_target(d, k):
    known = known_optimum(d, k)
    if known is not None:
        return known, "sharp"
    return bounds.crude_bounds(d, k)[0], "non-sharp: covering bound"


def simplex_centers(m: int, d: int, distance: float) -> np.ndarray:
    """``m`` points in R^d with all pairwise distances equal to ``distance``, centred at 0."""
    if m < 1:
        raise DomainError("need at least one centre")
    if m - 1 > d:
        raise DomainError(f"{m} equidistant centres do not fit in dimension {d}")
    if m == 1:
        return np.zeros((1, d))
    e = np.eye(m) * (distance / math.sqrt(2.0))
    e -= e.mean(axis=0)
    # coordinates in an orthonormal basis of the (m-1)-dim affine hull
    _, _, vt = np.linalg.svd(e)
    coords = e @ vt[: m - 1].T
    out = np.zeros((m, d))
    out[:, : m - 1] = coords
    return out


def _partitions(k, m):
    """Multisets of ball indices for k points, up to relabelling the (symmetric) balls."""
    def rec(n, largest, parts):
        if n == 0:
            yield parts
            return
        if len(parts) == m:
            return
        for p in range(min(n, largest), 0, -1):
            yield from rec(n - p, p, parts + [p])
    for parts in rec(k, k, []):
        yield [ball for ball, cnt in enumerate(parts) for _ in range(cnt)]


def max_min_distance(centers, radius: float, k: int, seed: int = 0, starts: int = 6) -> tuple:
    """(largest min pairwise distance, points) over k points of the union of
    equal balls about ``centers``; a multistart SLSQP search, so a lower bound."""
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    m, d = centers.shape
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(k), 2))
    best, best_pts = -1.0, None
    for assign in _partitions(k, m):
        c = centers[assign]

        def pair_con(z):
            x = z[:-1].reshape(k, d)
            return np.array([((x[i] - x[j]) ** 2).sum() for i, j in pairs]) - z[-1]

        def pair_jac(z):
            x = z[:-1].reshape(k, d)
            jac = np.zeros((len(pairs), k * d + 1))
            for row, (i, j) in enumerate(pairs):
                g = 2.0 * (x[i] - x[j])
                jac[row, i * d:(i + 1) * d] = g
                jac[row, j * d:(j + 1) * d] = -g
            jac[:, -1] = -1.0
            return jac

        def ball_con(z):
            x = z[:-1].reshape(k, d)
            return radius * radius - ((x - c) ** 2).sum(1)

        def ball_jac(z):
            x = z[:-1].reshape(k, d)
            jac = np.zeros((k, k * d + 1))
            for i in range(k):
                jac[i, i * d:(i + 1) * d] = -2.0 * (x[i] - c[i])
            return jac

        cons = [{"type": "ineq", "fun": pair_con, "jac": pair_jac},
                {"type": "ineq", "fun": ball_con, "jac": ball_jac}]
        obj_grad = np.zeros(k * d + 1)
        obj_grad[-1] = -1.0
        for _ in range(starts):
            u = rng.normal(size=(k, d))
            x0 = c + radius * u / np.linalg.norm(u, axis=1, keepdims=True)
            z0 = np.append(x0.ravel(), 0.0)
            res = minimize(lambda z: -z[-1], z0, jac=lambda z: obj_grad, method="SLSQP",
                           constraints=cons, options={"maxiter": 200, "ftol": 1e-12})
            x = res.x[:-1].reshape(k, d)
            # pull stragglers back into their balls before scoring
            off = x - c
            norm = np.linalg.norm(off, axis=1, keepdims=True)
            x = c + off * np.minimum(1.0, radius / np.maximum(norm, 1e-300))
            md = min(math.dist(x[i], x[j]) for i, j in pairs)
            if md > best:
                best, best_pts = md, x
    return best, best_pts


def single_ball_spread(d: int, k: int, radius: float) -> float | None:
    """Largest min distance of k points in a d-ball, when k <= d + 1 (regular simplex)."""
    if k > d + 1:
        return None
    return radius * math.sqrt(2.0 * k / (k - 1))


def _grid_clique_free(region: SetRegion, k: int, resolution: float, seed: int) -> dict:
    res = clique_search(region, k, resolution, seed=seed)
    return {"resolution": resolution, "found": res.found, "exhaustive": res.exhaustive,
            "candidates": res.candidates}


def multi_ball_construction(d: int, k: int, radius: float = 1.0, separation: float = 2.5,
                            resolution: float = 0.01, edge_samples: int = 1_000_000,
                            seed: int = 0, grid_check: bool | None = None) -> SearchResult:
    """k - 1 balls of one radius on a regular simplex with pairwise gap ``separation``.

    K_k-freeness is certified by pigeonhole when radius <= 1 and otherwise by a
    clique search.  The grid clique check runs by default in the plane.
    """
    t0 = time.perf_counter()
    if int(d) != d or d < 1 or int(k) != k or k < 2:
        raise DomainError("need integer d >= 1 and k >= 2")
    if not radius > 0 or separation < 0:
        raise DomainError("radius must be positive and separation nonnegative")
    m = k - 1
    centers = simplex_centers(m, d, 2.0 * radius + separation)
    region = SetRegion.from_disks(centers, radius)
    value = m * radius**d * ball_volume(d)
    details = {"d": d, "k": k, "radius": radius, "separation": separation, "balls": m}
    if radius <= 1.0:
        details["certificate"] = "pigeonhole"
        details["clique_free"] = True
    else:
        spread, _ = max_min_distance(centers, radius, k, seed=seed)
        details["certificate"] = "continuous search"
        details["max_min_distance"] = spread
        details["clique_free"] = bool(spread <= 2.0)
    if grid_check if grid_check is not None else d == 2:
        grid = _grid_clique_free(region, k, resolution, seed)
        details["grid"] = grid
        details["clique_free"] = details["clique_free"] and not grid["found"]
    if radius <= 1.0 and separation >= 2.0:
        # cross pairs are all far, same-ball pairs never are
        details["edge_measure"] = 0.5 * m * (m - 1) * (radius**d * ball_volume(d)) ** 2
        details["edge_measure_method"] = "exact"
    elif edge_samples > 0:
        est = edge_measure_mc(region, samples=edge_samples, seed=seed)
        details["edge_measure"] = est.value
        details["edge_measure_stderr"] = est.std_error
        details["edge_measure_method"] = "monte carlo"
    if radius == 1.0:
        details["edge_target"] = turan_bound(k, value)
    target, label = _measure_target(d, k)
    return _result(region, value, target, label, 0, seed, t0, details)


BIG_BALL_RADIUS = 2.0 / math.sqrt(3.0)


def big_ball_construction(d: int, samples: int = 4000, seed: int = 0, resolution: float = 0.01,
                          edge_samples: int = 0, grid_check: bool | None = None) -> SearchResult:
    """One ball of radius 2/sqrt(3), which is K3-free in every dimension.

    Three points pairwise more than 2 apart have a smallest enclosing ball of
    radius above 2/sqrt(3), so the certificate is exact; a sampled search over
    ``samples`` boundary points and (in the plane) a grid search confirm it.
    """
    t0 = time.perf_counter()
    if int(d) != d or d < 2:
        raise DomainError("need integer d >= 2")
    region = SetRegion.from_disks([np.zeros(d)], BIG_BALL_RADIUS)
    value = BIG_BALL_RADIUS**d * ball_volume(d)
    rng = np.random.default_rng(seed)
    u = rng.normal(size=(samples, d))
    pts = BIG_BALL_RADIUS * u / np.linalg.norm(u, axis=1, keepdims=True)
    sampled = exhaustive_clique(pts, 3)
    details = {"d": d, "radius": BIG_BALL_RADIUS, "certificate": "circumradius",
               "sampled_points": samples, "sampled_triangle": sampled is not None,
               "clique_free": sampled is None}
    if grid_check if grid_check is not None else d == 2:
        grid = _grid_clique_free(region, 3, resolution, seed)
        details["grid"] = grid
        details["clique_free"] = details["clique_free"] and not grid["found"]
    if edge_samples > 0:
        est = edge_measure_mc(region, samples=edge_samples, seed=seed)
        details["edge_measure"] = est.value
        details["edge_measure_stderr"] = est.std_error
    target, label = _measure_target(d, 3)
    return _result(region, value, target, label, 0, seed, t0, details)


# ---------------------------------------------------------------------------
# parametric search


class _Family:
    """A ball family: parameters -> (region, value, spread), spread being the
    largest min distance of k points in the region (K_k-free iff <= 2)."""

    def __init__(self, name, d, k, seed):
        self.name, self.d, self.k, self.seed = name, d, k, seed
        self.m = k - 1 if name == "balls" else 1
        if self.m - 1 > d:
            raise DomainError(f"{self.m} balls on a simplex need dimension >= {self.m - 1}")
        self.evaluations = 0

    def unpack(self, p):
        rho = abs(float(p[0])) + 1e-12
        gap = abs(float(p[1])) if self.name == "balls" else 0.0
        return rho, gap

    def value(self, rho):
        return self.m * rho**self.d * ball_volume(self.d)

    def centers(self, rho, gap):
        return simplex_centers(self.m, self.d, 2.0 * rho + gap)

    def spread(self, rho, gap):
        self.evaluations += 1
        if self.m == 1:
            exact = single_ball_spread(self.d, self.k, rho)
            if exact is not None:
                return exact
        elif rho <= 1.0:
            # pigeonhole: two of the k points share a ball of diameter <= 2
            return min(2.0 * rho, 2.0)
        return max_min_distance(self.centers(rho, gap), rho, self.k, seed=self.seed, starts=4)[0]

    def start(self, rng):
        p = [rng.uniform(0.3, 1.5)]
        if self.name == "balls":
            p.append(rng.uniform(0.0, 3.0))
        return np.array(p)


def _search_family(fam: _Family, budget: int, restarts: int, rng) -> tuple:
    def objective(p):
        rho, gap = fam.unpack(p)
        excess = fam.spread(rho, gap) - 2.0
        return excess if excess > 0 else -fam.value(rho)

    best = None
    per = max(1, budget // restarts)
    for _ in range(restarts):
        res = minimize(objective, fam.start(rng), method="Nelder-Mead",
                       options={"maxfev": per, "xatol": 1e-6, "fatol": 1e-9})
        rho, gap = fam.unpack(res.x)
        if fam.spread(rho, gap) <= 2.0 and (best is None or rho > best[0]):
            best = (rho, gap)
    if best is None:
        rho, gap = 1e-3, 0.0
    else:
        rho, gap = best
    # the value is increasing in rho: bisect the feasibility boundary at this gap
    lo, hi = rho, rho * 2.0
    while fam.spread(hi, gap) <= 2.0 and hi < 1e3:
        lo, hi = hi, hi * 2.0
    for _ in range(60):
        if hi - lo <= 1e-12 * hi:
            break
        mid = 0.5 * (lo + hi)
        if fam.spread(mid, gap) <= 2.0:
            lo = mid
        else:
            hi = mid
    return lo, gap


def parametric_clique_iso(d: int, k: int = 3, family: str = "both", budget: int = 60, seed: int = 0,
                          restarts: int = 3, resolution: float = 0.01) -> SearchResult:
    """Nelder-Mead over ball families for the largest K_k-free set in R^d.

    ``family`` is "balls" (k - 1 equal balls on a simplex, parameters radius
    and gap), "single" (one ball) or "both".  Feasibility is the largest
    min distance of k points being at most 2: closed form for one ball with
    k <= d + 1, pigeonhole for balls of radius <= 1, a continuous multistart
    search otherwise.  In the plane the winner is re-checked on a grid.
    """
    t0 = time.perf_counter()
    if int(d) != d or d < 1 or int(k) != k or k < 2:
        raise DomainError("need integer d >= 1 and k >= 2")
    if budget < 1:
        raise DomainError("budget must be >= 1")
    names = FAMILIES if family == "both" else (family,)
    if any(n not in FAMILIES for n in names):
        raise DomainError(f"unknown family {family!r}; use one of {FAMILIES + ('both',)}")
    rng = np.random.default_rng(seed)
    entries = {}
    for name in names:
        fam = _Family(name, d, k, seed)
        rho, gap = _search_family(fam, budget, restarts, rng)
        entries[name] = {"radius": rho, "gap": gap, "value": fam.value(rho),
                         "evaluations": fam.evaluations,
                         "region": SetRegion.from_disks(fam.centers(rho, gap), rho)}
    winner = max(names, key=lambda n: (entries[n]["value"], -names.index(n)))
    region = entries[winner]["region"]
    details = {"d": d, "k": k, "winner": winner,
               "families": {n: {kk: v for kk, v in e.items() if kk != "region"} for n, e in entries.items()},
               "crude_bounds": list(bounds.crude_bounds(d, k))}
    if d == 2:
        details["grid"] = _grid_clique_free(region, k, resolution, seed)
    target, label = _measure_target(d, k)
    iterations = sum(e["evaluations"] for e in entries.values())
    return _result(region, entries[winner]["value"], target, label, iterations, seed, t0, details)
