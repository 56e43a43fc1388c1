import itertools
import math

import numpy as np
import pytest

from ldgraph import bounds
from ldgraph.geometry import DomainError, ball_volume, measure
from ldgraph.graph import turan_bound
from ldgraph.hull import point_set_diameter
from ldgraph.search import (AnnealParams, anneal_annulus, anneal_restarts, big_ball_construction,
                            known_optimum, max_min_distance, multi_ball_construction,
                            optimal_annulus_set, parametric_clique_iso, simplex_centers,
                            single_ball_spread, span_limits, trace_csv)

SHORT = AnnealParams(iterations=20_000, steps_per_temperature=3)


@pytest.mark.parametrize("R", np.linspace(bounds.Z_MIN, bounds.Z_MAX, 100))
def test_optimal_set_corners(R):
    e = optimal_annulus_set(R)
    X1, X2, Y1, Y2 = (np.array(p) for p in (e.X1, e.X2, e.Y1, e.Y2))
    S = np.array([e.s, 0.0])
    assert np.linalg.norm(X1) == pytest.approx(R, abs=1e-12)
    assert np.linalg.norm(Y1) == pytest.approx(2.0, abs=1e-12)
    assert np.linalg.norm(X1 - Y2) == pytest.approx(2.0, abs=1e-9)
    assert np.linalg.norm(X2 - Y1) == pytest.approx(2.0, abs=1e-9)
    for p in (X1, X2, Y1, Y2):
        assert np.linalg.norm(p - S) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("R", [2 * math.sqrt(2), 3.0, 3.5, 4.0])
def test_optimal_set_measure_and_outline(R):
    e = optimal_annulus_set(R)
    assert measure(e.region) == pytest.approx(bounds.h_of(R), abs=1e-4)
    ring = e.outline(400)
    # shoelace area of the outline polygon
    x, y = ring[:, 0], ring[:, 1]
    area = 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))
    assert area == pytest.approx(bounds.h_of(R), rel=1e-3)
    assert point_set_diameter(ring)[0] <= 2.0 + 1e-9


def test_outline_at_four_is_unit_circle():
    ring = optimal_annulus_set(4.0).outline(100)
    assert np.allclose(np.linalg.norm(ring - [3.0, 0.0], axis=1), 1.0)


def test_span_limits_against_corner_distances():
    r_min, r_max, n, dth = 2.0, 3.0, 10, 0.03
    m = span_limits(r_min, r_max, n, dth)
    dr = (r_max - r_min) / n

    def widest(i, j, span):
        radii_i = (r_min + i * dr, r_min + (i + 1) * dr)
        radii_j = (r_min + j * dr, r_min + (j + 1) * dr)
        return max(math.sqrt(a * a + b * b - 2 * a * b * math.cos(span * dth))
                   for a in radii_i for b in radii_j)

    for i, j in itertools.product(range(n), repeat=2):
        if m[i, j] >= 0:
            assert widest(i, j, m[i, j]) <= 2.0 + 1e-12
        assert widest(i, j, m[i, j] + 1) > 2.0


def test_anneal_is_reproducible_and_feasible():
    a = anneal_annulus(3.0, 0.05, 0.02, SHORT, seed=5)
    b = anneal_annulus(3.0, 0.05, 0.02, SHORT, seed=5)
    assert np.array_equal(a.best_region.occupancy, b.best_region.occupancy)
    assert trace_csv(a) == trace_csv(b)
    assert a.details["audit_failures"] == 0
    assert a.details["corner_diameter"] <= 2.0 + 1e-12
    assert a.gap >= 0
    assert a.best_value >= 0.95 * bounds.h_of(3.0)


def test_anneal_at_four_stays_below_pi():
    r = anneal_annulus(4.0, 0.05, 0.02, SHORT, seed=2)
    assert r.target_bound == pytest.approx(math.pi)
    assert 0.9 * math.pi <= r.best_value <= math.pi


def test_anneal_below_sharp_range_has_no_target():
    r = anneal_annulus(2.5, 0.05, 0.02, AnnealParams(iterations=2000), seed=0)
    assert r.target_bound is None and r.gap is None
    assert r.target_label.startswith("unknown")


def test_restarts_pick_best_and_sum_audits():
    r = anneal_restarts(3.0, 0.1, 0.05, AnnealParams(iterations=3000), seed=3, restarts=3)
    assert r.best_value == max(r.details["restart_values"])
    assert r.seed == 3 + r.details["restart_index"]
    assert r.details["audit_failures"] == 0


def test_anneal_result_bounds_f():
    # a diameter-2 set inside the annulus plus the disk part gives f(R) >= 2 (g(R) + value)
    r = anneal_annulus(3.5, 0.05, 0.02, SHORT, seed=0)
    assert bounds.f_of(3.5) >= 2 * (bounds.g_of(3.5) + r.best_value) - 1e-12


def test_anneal_rejects_bad_input():
    with pytest.raises(DomainError):
        anneal_annulus(4.5, 0.05, 0.02)
    with pytest.raises(DomainError):
        anneal_restarts(3.0, 0.05, 0.02, restarts=0)


@pytest.mark.parametrize("kw", [dict(iterations=0), dict(cooling=1.5), dict(t_initial=0.0),
                                dict(mix=(0.5, 0.5, 0.5)), dict(step_scale=-1.0)])
def test_anneal_params_validation(kw):
    with pytest.raises(DomainError):
        AnnealParams(**kw).validate()


@pytest.mark.parametrize("m,d", [(1, 2), (2, 2), (3, 2), (3, 3), (4, 3), (5, 6)])
def test_simplex_centers_equidistant(m, d):
    c = simplex_centers(m, d, 4.5)
    assert c.shape == (m, d)
    assert np.allclose(c.mean(0), 0.0, atol=1e-12)
    for p, q in itertools.combinations(c, 2):
        assert np.linalg.norm(p - q) == pytest.approx(4.5)


def test_simplex_centers_dimension_limit():
    with pytest.raises(DomainError):
        simplex_centers(4, 2, 1.0)


@pytest.mark.parametrize("rho", [0.9, 1.0, 1.2])
def test_max_min_distance_single_ball(rho):
    spread, pts = max_min_distance(np.zeros((1, 2)), rho, 3, seed=1)
    assert spread == pytest.approx(rho * math.sqrt(3), rel=1e-6)
    assert np.all(np.linalg.norm(pts, axis=1) <= rho + 1e-9)
    assert single_ball_spread(2, 3, rho) == pytest.approx(rho * math.sqrt(3))
    assert single_ball_spread(2, 4, rho) is None


def test_multi_ball_mantel():
    r = multi_ball_construction(2, 3)
    assert r.best_value == pytest.approx(2 * math.pi)
    assert r.target_bound == pytest.approx(2 * math.pi) and r.gap == pytest.approx(0.0, abs=1e-12)
    assert r.details["clique_free"] and not r.details["grid"]["found"]
    assert r.details["edge_measure"] == pytest.approx(math.pi**2)
    assert r.details["edge_measure"] == pytest.approx(turan_bound(3, r.best_value))


@pytest.mark.parametrize("d,k", [(2, 4), (3, 4), (4, 5)])
def test_multi_ball_meets_turan(d, k):
    r = multi_ball_construction(d, k, grid_check=False)
    assert r.details["edge_measure"] == pytest.approx(turan_bound(k, r.best_value))


def test_big_ball_is_triangle_free():
    r = big_ball_construction(2, samples=2000, seed=0)
    assert r.details["clique_free"] and not r.details["sampled_triangle"]
    assert r.best_value == pytest.approx(4 * math.pi / 3)
    assert r.best_value < 2 * math.pi


def test_known_optimum():
    assert known_optimum(3, 2) == pytest.approx(ball_volume(3))
    assert known_optimum(2, 3) == pytest.approx(2 * math.pi)
    assert known_optimum(3, 3) is None


@pytest.mark.parametrize("d", [2, 3])
def test_parametric_low_dimensions_prefer_balls(d):
    r = parametric_clique_iso(d, 3, budget=30, seed=0)
    assert r.details["winner"] == "balls"
    assert r.best_value == pytest.approx(2 * ball_volume(d), rel=1e-6)
    if d == 2:
        assert not r.details["grid"]["found"]
        assert r.gap == pytest.approx(0.0, abs=1e-5)


def test_parametric_high_dimension_prefers_single():
    r = parametric_clique_iso(5, 3, budget=30, seed=0)
    assert r.details["winner"] == "single"
    assert r.best_value == pytest.approx((2 / math.sqrt(3)) ** 5 * ball_volume(5), rel=1e-6)
    assert r.target_label.startswith("non-sharp")


def test_parametric_bad_family():
    with pytest.raises(DomainError):
        parametric_clique_iso(2, 3, family="cubes")


def test_result_to_dict_is_json():
    import json

    r = multi_ball_construction(2, 3, grid_check=False)
    d = json.loads(json.dumps(r.to_dict()))
    assert d["best_region"]["scene"]["dim"] == 2
    assert len(d["best_region"]["scene"]["disks"]) == 2
