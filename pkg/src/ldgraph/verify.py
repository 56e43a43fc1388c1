"""Self-verification suite: each acceptance criterion as a function.

Every check returns a :class:`Check` with a pass flag and the numbers behind
it; :func:`run_suite` runs a named suite.  The CLI ``verify`` subcommand and
the acceptance tests both call these.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bounds
from .clique import clique_search, clique_witness
from .geometry import SetRegion, ball_volume, measure
from .graph import MotifGraph, StepGraphon, edge_measure_mc, graphon_density, turan_bound
from .raster import PolarRaster
from .search import (AnnealParams, anneal_restarts, big_ball_construction, multi_ball_construction,
                     optimal_annulus_set)
from .symmetrize import circular_symmetrize, d_maximal_check


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name} ({self.seconds:.2f} s)"

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "seconds": self.seconds, "detail": self.detail}


def _timed(name, fn, *args, **kw) -> Check:
    t0 = time.perf_counter()
    passed, detail = fn(*args, **kw)
    return Check(name, bool(passed), detail, time.perf_counter() - t0)


def closed_form_anchors(seed: int = 0) -> Check:
    def run():
        f4, h4, a4 = bounds.f_of(4.0), bounds.h_of(4.0), bounds.a_of(4.0)
        d = {"f4_error": abs(f4 - 2 * math.pi), "h4_error": abs(h4 - math.pi), "a4": a4}
        return d["f4_error"] <= 1e-12 and d["h4_error"] <= 1e-12 and a4 == 0.0, d
    return _timed("closed-form anchors", run)


def identity_suite(seed: int = 0) -> Check:
    def run():
        h_max = bounds.verify_H_identity(1000)
        fd = bounds.verify_f_monotone(grid=100)
        mono = bounds.verify_f_monotone(grid=1000)
        d = {"max_abs_H": h_max, "max_fd_error": fd.max_fd_error, "min_f_prime": mono.min_derivative}
        return h_max < 1e-9 and fd.max_fd_error < 1e-6 and mono.min_derivative > 0, d
    return _timed("identity suite", run)


def mantel_extremal(seed: int = 0, samples: int = 10_000_000) -> Check:
    def run():
        s = SetRegion.from_disks([(0.0, 0.0), (4.5, 0.0)], 1.0)
        lam = measure(s)
        est = edge_measure_mc(s, samples=samples, seed=seed)
        target = math.pi**2
        d = {"measure": lam, "edge": est.value, "stderr": est.std_error, "target": target,
             "z_score": (est.value - target) / est.std_error}
        ok = abs(lam - 2 * math.pi) <= 1e-4 and est.within(target, 3.0) and est.std_error < 0.01 * est.value
        return ok, d
    return _timed("Mantel extremal", run)


def random_k3_free_scene(rng: np.random.Generator) -> SetRegion:
    """Two clusters of disks, each inside a unit disk, so K3-free by pigeonhole."""
    sep = rng.uniform(0.0, 5.0)
    rot = rng.uniform(0.0, 2 * math.pi)
    rotm = np.array([[math.cos(rot), -math.sin(rot)], [math.sin(rot), math.cos(rot)]])
    centers, radii = [], []
    for c in (np.zeros(2), np.array([sep, 0.0])):
        for _ in range(int(rng.integers(1, 4))):
            r = rng.uniform(0.2, 1.0)
            off = rng.uniform(0.0, 1.0 - r)
            ang = rng.uniform(0.0, 2 * math.pi)
            centers.append(rotm @ (c + off * np.array([math.cos(ang), math.sin(ang)])))
            radii.append(r)
    return SetRegion.from_disks(centers, radii)


def turan_consistency(seed: int = 0, scenes: int = 20, samples: int = 1_000_000) -> Check:
    def run():
        rng = np.random.default_rng(seed)
        rows = []
        ok = True
        for i in range(scenes):
            s = random_k3_free_scene(rng)
            free = not clique_search(s, 3, 0.01, seed=seed + i).found
            lam = measure(s)
            est = edge_measure_mc(s, samples=samples, seed=seed + i)
            bound = turan_bound(3, lam)
            good = free and est.value <= bound + 3 * est.std_error
            ok &= good
            rows.append({"measure": lam, "edge": est.value, "stderr": est.std_error, "bound": bound,
                         "clique_free": free})
        worst = max((r["edge"] - r["bound"]) / max(r["stderr"], 1e-300) for r in rows)
        return ok, {"scenes": scenes, "worst_excess_in_stderr": worst}
    return _timed("Turan consistency", run)


def _block_density_exact(weights, values, k) -> Fraction:
    n = len(weights)
    total = Fraction(0)
    for blocks in np.ndindex(*(n,) * k):
        term = Fraction(1)
        for b in blocks:
            term *= weights[b]
        for i in range(k):
            for j in range(i + 1, k):
                term *= values[blocks[i]][blocks[j]]
        total += term
    return total


def graphon_oracle(seed: int = 0) -> Check:
    def run():
        two = StepGraphon.complete_partite(2)
        three = StepGraphon.complete_partite(3)
        k2, k3 = MotifGraph.complete(2), MotifGraph.complete(3)
        t_bi3, t_bi2, t_tri3 = graphon_density(two, k3), graphon_density(two, k2), graphon_density(three, k3)
        w3 = [Fraction(1, 3)] * 3
        v3 = [[Fraction(int(i != j)) for j in range(3)] for i in range(3)]
        brute = _block_density_exact(w3, v3, 3)
        d = {"bipartite_K3": t_bi3, "bipartite_K2": t_bi2, "tripartite_K3": t_tri3, "brute_force": str(brute)}
        ok = t_bi3 == 0.0 and t_bi2 == 0.5 and brute == Fraction(2, 9) and abs(t_tri3 - 2 / 9) <= 1e-15
        return ok, d
    return _timed("graphon oracle", run)


def random_window_raster(rng: np.random.Generator, dr: float = 0.02, dth: float = 0.01,
                         R: float = 3.0) -> PolarRaster:
    """A few random arcs per ring, all inside the angular window (-pi/2, pi/2)."""
    n_r = int(round((R - 2.0) / dr))
    n_t = 2 * int(round(math.pi / dth))
    occ = np.zeros((n_r, n_t), dtype=bool)
    lo, hi = n_t // 4 + 1, 3 * n_t // 4 - 1
    for i in range(n_r):
        if rng.random() < 0.2:
            continue
        for _ in range(int(rng.integers(1, 4))):
            a = int(rng.integers(lo, hi))
            b = min(hi, a + int(rng.integers(1, n_t // 8)))
            occ[i, a:b] = True
    return PolarRaster(2.0, R, occ)


def symmetrization_contracts(seed: int = 0, rasters: int = 100) -> Check:
    def run():
        rng = np.random.default_rng(seed)
        ok = True
        worst = -math.inf
        for _ in range(rasters):
            p = random_window_raster(rng)
            q = circular_symmetrize(p)
            rep = d_maximal_check(p, 3.0)
            counts_ok = np.array_equal(p.ring_counts(), q.ring_counts())
            idem = np.array_equal(circular_symmetrize(q).occupancy, q.occupancy)
            worst = max(worst, rep.output_diameter - rep.input_diameter)
            ok &= counts_ok and idem and not rep.violation
        return ok, {"rasters": rasters, "worst_diameter_increase": worst}
    return _timed("symmetrization contracts", run)


ANNULUS_RADII = (2 * math.sqrt(2), 3.0, 3.5, 4.0)


def annulus_extremal(seed: int = 0) -> Check:
    def run():
        worst_measure = worst_corner = 0.0
        for R in ANNULUS_RADII:
            e = optimal_annulus_set(R)
            worst_measure = max(worst_measure, abs(measure(e.region) - bounds.h_of(R)))
            X1, X2, Y1, Y2 = (np.array(p) for p in (e.X1, e.X2, e.Y1, e.Y2))
            errs = [
                abs(np.linalg.norm(X1 - Y2) - 2.0),
                abs(np.linalg.norm(X2 - Y1) - 2.0),
                abs(np.linalg.norm(X1 - X2) - np.linalg.norm(Y1 - Y2)),
                abs(np.linalg.norm(X1) - R),
                abs(np.linalg.norm(Y1) - 2.0),
            ]
            worst_corner = max(worst_corner, float(max(errs)))
        d = {"max_measure_error": worst_measure, "max_corner_error": worst_corner}
        return worst_measure <= 1e-4 and worst_corner <= 1e-9, d
    return _timed("annulus extremal", run)


def annealing_recovery(seed: int = 0, schedule: AnnealParams | None = None, restarts: int = 4) -> Check:
    def run():
        res = anneal_restarts(3.0, 0.005, 0.002, schedule, seed=seed, restarts=restarts)
        target = bounds.h_of(3.0)
        d = {"best_value": res.best_value, "ratio": res.best_value / target,
             "restart_values": res.details["restart_values"],
             "audit_failures": res.details["audit_failures"],
             "corner_diameter": res.details["corner_diameter"], "wall_time": res.wall_time}
        ok = (res.best_value >= 0.98 * target and res.details["audit_failures"] == 0
              and res.details["corner_diameter"] <= 2.0 + 1e-12)
        return ok, d
    return _timed("annealing recovery", run)


def dimension_crossover(seed: int = 0) -> Check:
    def run():
        ratios = {}
        ok = True
        for d in range(2, 9):
            big = big_ball_construction(d, samples=500, seed=seed, grid_check=False).best_value
            two = multi_ball_construction(d, 3, 1.0, 2.5, seed=seed, edge_samples=0, grid_check=False).best_value
            ratios[d] = big / two
            ok &= (big < two) if d <= 4 else (big > two)
            ok &= math.isclose(big, (2 / math.sqrt(3)) ** d * ball_volume(d), rel_tol=1e-12)
        found = {}
        for d in (2, 3):
            ball = SetRegion.from_disks([np.zeros(d)], 2 / math.sqrt(3))
            found[f"radius_2/sqrt3_d{d}"] = clique_witness(ball, 3, 0.01, seed=seed) is not None
        found["radius_1.2_d2"] = clique_witness(SetRegion.from_disks([(0.0, 0.0)], 1.2), 3, 0.01,
                                                seed=seed) is not None
        ok &= not found["radius_2/sqrt3_d2"] and not found["radius_2/sqrt3_d3"] and found["radius_1.2_d2"]
        return ok, {"big_over_two_balls": ratios, "triangle_found": found}
    return _timed("dimension crossover", run)


CRITERIA = {
    "anchors": closed_form_anchors,
    "identities": identity_suite,
    "mantel": mantel_extremal,
    "turan": turan_consistency,
    "graphon": graphon_oracle,
    "symmetrization": symmetrization_contracts,
    "annulus": annulus_extremal,
    "annealing": annealing_recovery,
    "crossover": dimension_crossover,
}

SUITES = {
    "core": tuple(CRITERIA),
    "quick": ("anchors", "identities", "graphon", "annulus", "symmetrization"),
}


def run_suite(suite: str = "core", seed: int = 0, on_check=None) -> list:
    if suite not in SUITES:
        from .geometry import DomainError

        raise DomainError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    out = []
    for key in SUITES[suite]:
        check = CRITERIA[key](seed=seed)
        out.append(check)
        if on_check is not None:
            on_check(check)
    return out
