import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from ldgraph.geometry import DomainError, SetRegion, measure
from ldgraph.graph import (Estimate, MotifGraph, StepGraphon, edge_measure_grid, edge_measure_mc,
                           graphon_density, graphon_of_region, motif_measure_mc, turan_bound)
from ldgraph.raster import rasterize

MANTEL = SetRegion.from_disks([(0.0, 0.0), (4.5, 0.0)], 1.0)
TANGENT = SetRegion.from_disks([(0.0, 0.0), (2.0, 0.0)], 1.0)


def circle_overlap(r1, r2, d):
    if d >= r1 + r2:
        return 0.0
    if d <= abs(r1 - r2):
        return math.pi * min(r1, r2) ** 2
    a = r1 * r1 * math.acos((d * d + r1 * r1 - r2 * r2) / (2 * d * r1))
    b = r2 * r2 * math.acos((d * d + r2 * r2 - r1 * r1) / (2 * d * r2))
    return a + b - 0.5 * math.sqrt((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2))


def tangent_edge_oracle():
    """e = integral over p in the left disk of |right disk minus D(p, 2)|."""
    def far_area(phi, rho):
        d = math.hypot(rho * math.cos(phi) - 2.0, rho * math.sin(phi))
        return rho * (math.pi - circle_overlap(1.0, 2.0, d))

    return integrate.dblquad(far_area, 0.0, 1.0, 0.0, 2 * math.pi, epsabs=1e-9)[0]


TANGENT_EDGE = 5.656668  # tangent_edge_oracle(), frozen


def test_tangent_oracle_value():
    assert tangent_edge_oracle() == pytest.approx(TANGENT_EDGE, abs=1e-6)


def test_turan_bound():
    assert turan_bound(3, 2 * math.pi) == pytest.approx(math.pi**2)
    assert turan_bound(2, 5.0) == 0.0
    assert turan_bound(4, 3.0) == pytest.approx(0.5 * (2 / 3) * 9)
    with pytest.raises(DomainError):
        turan_bound(1, 1.0)
    with pytest.raises(DomainError):
        turan_bound(3, -1.0)


def test_mantel_edge_measure_mc():
    est = edge_measure_mc(MANTEL, samples=2_000_000, seed=11)
    assert est.within(math.pi**2, 3.0)
    assert est.std_error < 0.01 * est.value


def test_tangent_edge_measure_mc():
    est = edge_measure_mc(TANGENT, samples=2_000_000, seed=5)
    assert est.within(TANGENT_EDGE, 4.0)


def test_mc_is_reproducible_and_worker_independent():
    a = edge_measure_mc(MANTEL, samples=300_000, seed=9, workers=1)
    b = edge_measure_mc(MANTEL, samples=300_000, seed=9, workers=4)
    c = edge_measure_mc(MANTEL, samples=300_000, seed=10)
    assert a == b
    assert a.value != c.value


def test_unit_disk_has_no_edges():
    est = edge_measure_mc(SetRegion.from_disks([(0, 0)], 1.0), samples=200_000)
    assert est.value == 0.0
    assert edge_measure_grid(rasterize(SetRegion.from_disks([(0, 0)], 1.0), 0.02)) <= 0.01 * math.pi**2


def test_grid_edge_measure():
    value = edge_measure_grid(rasterize(MANTEL, 0.05))
    assert value == pytest.approx(math.pi**2, rel=0.02)
    assert edge_measure_grid(rasterize(SetRegion(), 0.05)) == 0.0


@pytest.mark.parametrize("seed", range(4))
def test_grid_and_mc_agree_on_random_scenes(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    s = SetRegion.from_disks(rng.uniform(-2, 2, size=(n, 2)), rng.uniform(0.3, 1.0, size=n))
    est = edge_measure_mc(s, samples=1_000_000, seed=seed)
    grid = edge_measure_grid(rasterize(s, 0.02))
    # the grid error is of order perimeter * h * diameter; allow it next to the MC error
    assert abs(grid - est.value) <= 3 * est.std_error + 0.02 * max(grid, 1.0)


def test_motif_measures():
    lam = measure(MANTEL)
    k2 = motif_measure_mc(MANTEL, MotifGraph.complete(2), samples=400_000, seed=2)
    e = edge_measure_mc(MANTEL, samples=400_000, seed=2)
    assert k2.value == pytest.approx(2 * e.value)
    empty = motif_measure_mc(MANTEL, MotifGraph.empty(3), samples=400_000, seed=2)
    assert empty.within(lam**3, 4.0)
    assert motif_measure_mc(MANTEL, MotifGraph.complete(3), samples=200_000).value == 0.0


def test_estimate_json_roundtrip():
    est = Estimate(1.5, 0.01, 100, 3)
    assert Estimate.from_dict(est.to_dict()) == est
    assert set(est.to_dict()) == {"value", "stderr", "samples", "seed"}


def test_motif_validation():
    with pytest.raises(DomainError):
        MotifGraph(7, frozenset())
    with pytest.raises(DomainError):
        MotifGraph(3, frozenset({(1, 1)}))
    with pytest.raises(DomainError):
        MotifGraph(3, frozenset({(1, 4)}))
    g = MotifGraph.from_dict({"k": 3, "edges": [[2, 1], [3, 2]]})
    assert g.sorted_edges() == [(1, 2), (2, 3)]
    assert MotifGraph.from_dict(g.to_dict()) == g


def test_step_graphon_validation():
    with pytest.raises(DomainError):
        StepGraphon([0.5, 0.6], [[0, 1], [1, 0]])
    with pytest.raises(DomainError):
        StepGraphon([0.5, 0.5], [[0, 1], [0.5, 0]])
    with pytest.raises(DomainError):
        StepGraphon(np.full(65, 1 / 65), np.zeros((65, 65)))


def test_partite_graphons():
    assert graphon_density(StepGraphon.complete_partite(2), MotifGraph.complete(3)) == 0.0
    assert graphon_density(StepGraphon.complete_partite(2), MotifGraph.complete(2)) == 0.5
    assert graphon_density(StepGraphon.complete_partite(3), MotifGraph.complete(3)) == pytest.approx(2 / 9)


def brute_density(w, h):
    total = 0.0
    for blocks in itertools.product(range(w.n_blocks), repeat=h.k):
        term = np.prod([w.block_weights[b] for b in blocks])
        for i, j in h.edges:
            term *= w.block_values[blocks[i - 1], blocks[j - 1]]
        total += term
    return total


@st.composite
def graphon_and_motif(draw):
    n = draw(st.integers(1, 4))
    raw = np.array(draw(st.lists(st.floats(0.1, 1.0), min_size=n, max_size=n)))
    vals = np.array(draw(st.lists(st.floats(0.0, 1.0), min_size=n * n, max_size=n * n))).reshape(n, n)
    vals = np.triu(vals) + np.triu(vals, 1).T
    k = draw(st.integers(2, 4))
    pairs = list(itertools.combinations(range(1, k + 1), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True))
    return StepGraphon(raw / raw.sum(), vals), MotifGraph(k, frozenset(edges))


@settings(max_examples=60, deadline=None)
@given(graphon_and_motif())
def test_graphon_density_matches_enumeration(pair):
    w, h = pair
    assert graphon_density(w, h) == pytest.approx(brute_density(w, h), abs=1e-12)


def test_graphon_of_tangent_disks():
    w = graphon_of_region(TANGENT, 2, seed=0, samples=4000)
    assert w.block_weights == pytest.approx([0.5, 0.5], abs=1e-3)
    # equal-mass blocks can swap a handful of samples across the tangent point
    assert w.block_values[0, 0] < 1e-3 and w.block_values[1, 1] < 1e-3
    assert w.block_values[0, 1] == pytest.approx(TANGENT_EDGE / math.pi**2, abs=0.02)


def test_graphon_of_mantel_scene():
    w = graphon_of_region(MANTEL, 2, seed=1)
    assert w.block_weights == pytest.approx([0.5, 0.5], abs=1e-9)
    assert w.block_values.tolist() == [[0.0, 1.0], [1.0, 0.0]]
    # t(K2) = 2e / lambda^2 = 1/2, the Turan equality case
    assert graphon_density(w, MotifGraph.complete(2)) == 0.5
    finer = graphon_of_region(MANTEL, 8, seed=1)
    assert graphon_density(finer, MotifGraph.complete(3)) == 0.0
    assert graphon_density(finer, MotifGraph.complete(2)) == pytest.approx(0.5, abs=1e-6)


def test_graphon_of_single_disk_is_zero():
    w = graphon_of_region(SetRegion.from_disks([(0, 0)], 1.0), 5, seed=2)
    assert w.block_values.max() == 0.0
    with pytest.raises(DomainError):
        graphon_of_region(SetRegion(), 2)


def test_graphon_density_drops_with_more_edges():
    w = graphon_of_region(TANGENT, 6, seed=3)
    path = MotifGraph(3, frozenset({(1, 2), (2, 3)}))
    single = MotifGraph(3, frozenset({(1, 2)}))
    assert graphon_density(w, MotifGraph.complete(3)) <= graphon_density(w, path) <= graphon_density(w, single)
