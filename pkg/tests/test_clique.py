import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from ldgraph.clique import clique_search, clique_witness, exhaustive_clique, grid_points, is_clique
from ldgraph.geometry import DomainError, SetRegion
from ldgraph.raster import rasterize


def brute_has_clique(pts, k, t=2.0):
    return any(is_clique(pts[list(c)], t) for c in itertools.combinations(range(len(pts)), k))


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(3, 12), st.just(2)), elements=st.floats(-2, 2)),
       st.integers(2, 4))
def test_exhaustive_matches_brute_force(pts, k):
    got = exhaustive_clique(pts, k)
    assert (got is not None) == brute_has_clique(pts, k)
    if got is not None:
        assert len(set(got.tolist())) == k
        assert is_clique(pts[got])


def test_threshold_is_strict():
    pts = np.array([[0.0, 0.0], [2.0, 0.0]])
    assert exhaustive_clique(pts, 2) is None
    assert exhaustive_clique(pts * 1.0000001, 2) is not None


def test_two_unit_disks_are_triangle_free():
    s = SetRegion.from_disks([(0, 0), (4.5, 0)], 1.0)
    res = clique_search(s, 3, 0.01)
    assert res.exhaustive and not res.found
    assert clique_witness(s, 2, 0.01) is not None


def test_ball_radii_around_two_over_root_three():
    assert clique_witness(SetRegion.from_disks([(0, 0)], 1.2), 3, 0.01) is not None
    assert clique_witness(SetRegion.from_disks([(0, 0)], 2 / math.sqrt(3)), 3, 0.01) is None


def test_three_dimensional_ball():
    ball = SetRegion.from_disks([(0, 0, 0)], 1.17)
    w = clique_witness(ball, 3, 0.02)
    assert w is not None and is_clique(w)
    assert ball.contains(w).all()


def test_k4_in_three_balls():
    far = SetRegion.from_disks([(0, 0), (4.5, 0), (2.25, 3.9)], 1.0)
    assert clique_witness(far, 3, 0.02) is not None
    assert clique_witness(far, 4, 0.02) is None


def test_raster_input():
    r = rasterize(SetRegion.from_disks([(0, 0), (4.5, 0)], 1.0), 0.02)
    res = clique_search(r, 2, 0.02)
    assert res.found and is_clique(res.witness)


def test_grid_points_boundary_only():
    s = SetRegion.from_disks([(0, 0)], 1.0)
    all_pts = grid_points(s, 0.05, boundary_only=False)
    rim = grid_points(s, 0.05, boundary_only=True)
    assert len(rim) < len(all_pts)
    assert np.linalg.norm(rim, axis=1).min() > 0.85


def test_bad_k():
    with pytest.raises(DomainError):
        clique_search(SetRegion.from_disks([(0, 0)], 1.0), 1, 0.1)


def test_is_clique():
    assert is_clique([[0, 0], [3, 0], [1.5, 2.7]])
    assert not is_clique([[0, 0], [2, 0]])
