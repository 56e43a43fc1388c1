import itertools

import numpy as np
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from ldgraph.hull import convex_hull, point_set_diameter, rotating_calipers


def brute_diameter(pts):
    return max((np.linalg.norm(a - b) for a, b in itertools.combinations(pts, 2)), default=0.0)


def test_square():
    pts = np.array([[0, 0], [1, 0], [1, 1], [0, 1], [0.5, 0.5]])
    hull = convex_hull(pts)
    assert len(hull) == 4
    assert point_set_diameter(pts)[0] == np.sqrt(2)


def test_degenerate():
    assert point_set_diameter([[1.0, 1.0]])[0] == 0.0
    assert point_set_diameter([[0, 0], [3, 4]])[0] == 5.0
    assert point_set_diameter([[0, 0], [1, 0], [2, 0]])[0] == 2.0


@settings(max_examples=100, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(2, 40), st.just(2)),
              elements=st.floats(-10, 10, allow_nan=False)))
def test_calipers_match_brute_force(pts):
    d, p, q = point_set_diameter(pts)
    assert abs(d - brute_diameter(pts)) <= 1e-9 * max(1.0, d)
    assert abs(np.linalg.norm(p - q) - d) <= 1e-9 * max(1.0, d)


def test_hull_is_counter_clockwise():
    rng = np.random.default_rng(0)
    hull = convex_hull(rng.normal(size=(200, 2)))
    area = 0.5 * np.sum(hull[:, 0] * np.roll(hull[:, 1], -1) - np.roll(hull[:, 0], -1) * hull[:, 1])
    assert area > 0
    assert rotating_calipers(hull)[0] == brute_diameter(hull)
