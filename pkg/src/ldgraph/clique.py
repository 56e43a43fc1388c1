"""Clique witnesses in large-distance graphs of grid-discretised sets.

For k <= 3 a clique can be pushed outward until every vertex sits on the
boundary (moving a point away from the other two never shrinks a distance),
so only boundary grid points are searched.  When the candidate set fits the
exhaustive budget the search is complete over the grid; otherwise a coarse
pass seeds greedy farthest-point tuples that are refined locally at full
resolution.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .geometry import BudgetError, DomainError, SetRegion
from .raster import DEFAULT_CELL_BUDGET, CartesianRaster

EXHAUSTIVE_BUDGET = 4000


@dataclass(frozen=True)
class CliqueSearch:
    witness: np.ndarray | None
    exhaustive: bool
    candidates: int
    resolution: float

    @property
    def found(self) -> bool:
        return self.witness is not None


def _boundary_mask(occ: np.ndarray) -> np.ndarray:
    interior = occ.copy()
    for axis in range(occ.ndim):
        pad = [(0, 0)] * occ.ndim
        pad[axis] = (1, 1)
        p = np.pad(occ, pad, constant_values=False)
        lo = [slice(None)] * occ.ndim
        hi = [slice(None)] * occ.ndim
        lo[axis] = slice(0, -2)
        hi[axis] = slice(2, None)
        interior &= p[tuple(lo)] & p[tuple(hi)]
    return occ & ~interior


def grid_points(s, resolution: float, boundary_only: bool,
                max_cells: int = DEFAULT_CELL_BUDGET) -> np.ndarray:
    """Occupied grid-cell centres (pitch ``resolution``) of a region or raster, in any dimension."""
    if isinstance(s, CartesianRaster):
        occ = s.occupancy
        if boundary_only:
            occ = _boundary_mask(occ)
        rows, cols = np.nonzero(occ)
        return np.column_stack([s.origin[0] + (cols + 0.5) * s.h, s.origin[1] + (rows + 0.5) * s.h])
    if not resolution > 0:
        raise DomainError("resolution must be positive")
    if s.is_empty:
        return np.empty((0, s.dim))
    lo, hi = s.bounding_box()
    lo = np.floor(lo / resolution) * resolution
    shape = tuple(int(v) for v in np.maximum(np.ceil((hi - lo) / resolution - 1e-9), 1))
    if math.prod(shape) > max_cells:
        raise BudgetError(f"grid of {math.prod(shape)} cells exceeds the budget of {max_cells}")
    axes = [lo[i] + (np.arange(n) + 0.5) * resolution for i, n in enumerate(shape)]
    occ = np.zeros(shape, dtype=bool)
    rest = np.stack(np.meshgrid(*axes[1:], indexing="ij"), axis=-1).reshape(-1, s.dim - 1) \
        if s.dim > 1 else np.empty((1, 0))
    for i, x0 in enumerate(axes[0]):
        pts = np.column_stack([np.full(len(rest), x0), rest])
        occ[i] = s.contains(pts).reshape(shape[1:])
    if boundary_only:
        occ = _boundary_mask(occ)
    idx = np.nonzero(occ)
    return np.column_stack([axes[i][idx[i]] for i in range(s.dim)])


def _far(p: np.ndarray, q: np.ndarray, t2: float) -> np.ndarray:
    d2 = (p * p).sum(1)[:, None] + (q * q).sum(1)[None, :] - 2.0 * p @ q.T
    far = d2 > t2
    # the expanded form can round across the threshold; recheck the near ones exactly
    near = np.abs(d2 - t2) < 1e-9 * max(t2, 1.0)
    if near.any():
        i, j = np.nonzero(near)
        far[i, j] = ((p[i] - q[j]) ** 2).sum(1) > t2
    return far


def _pairwise_far(pts, t2):
    return _far(pts, pts, t2)


def exhaustive_clique(pts: np.ndarray, k: int, threshold: float = 2.0) -> np.ndarray | None:
    """Indices of k points pairwise farther than ``threshold`` apart, or None.  Complete."""
    n = len(pts)
    if n < k:
        return None
    adj = _pairwise_far(pts, threshold * threshold)
    if k == 2:
        i, j = np.nonzero(np.triu(adj))
        return np.array([i[0], j[0]]) if len(i) else None
    if k == 3:
        a = adj.astype(np.float32)
        common = (a @ a) * a
        i, j = np.nonzero(common)
        if len(i) == 0:
            return None
        m = int(np.nonzero(adj[i[0]] & adj[j[0]])[0][0])
        return np.array([i[0], j[0], m])

    def colour_sort(cand):
        # greedy colouring; a clique uses each colour at most once
        classes = []
        for v in cand:
            for cl in classes:
                if not (adj[v] & cl[0]).any():
                    cl[0][v] = True
                    cl[1].append(v)
                    break
            else:
                mask = np.zeros(n, dtype=bool)
                mask[v] = True
                classes.append((mask, [v]))
        order = [v for _, members in classes for v in members]
        colours = [c + 1 for c, (_, members) in enumerate(classes) for _ in members]
        return np.array(order, dtype=np.int64), colours

    def extend(chosen, cand):
        order, colours = colour_sort(cand)
        for idx in range(len(order) - 1, -1, -1):
            if len(chosen) + colours[idx] < k:
                return None
            v = int(order[idx])
            if len(chosen) + 1 == k:
                return chosen + [v]
            nxt = order[:idx]
            nxt = nxt[adj[v, nxt]]
            if len(nxt) >= k - len(chosen) - 1:
                got = extend(chosen + [v], nxt)
                if got is not None:
                    return got
        return None

    degree = adj.sum(1)
    got = extend([], np.nonzero(degree >= k - 1)[0])
    return None if got is None else np.array(got)


def _greedy_tuple(pts, k, start):
    chosen = [start]
    mind = np.sqrt(((pts - pts[start]) ** 2).sum(1))
    for _ in range(k - 1):
        nxt = int(np.argmax(mind))
        chosen.append(nxt)
        mind = np.minimum(mind, np.sqrt(((pts - pts[nxt]) ** 2).sum(1)))
    # coordinate ascent: move each vertex to the point farthest from the others
    for _ in range(4):
        moved = False
        for slot in range(k):
            others = [c for m, c in enumerate(chosen) if m != slot]
            d = np.min(np.sqrt(((pts[:, None, :] - pts[others][None]) ** 2).sum(-1)), axis=1)
            best = int(np.argmax(d))
            if best != chosen[slot] and d[best] > d[chosen[slot]]:
                chosen[slot] = best
                moved = True
        if not moved:
            break
    c = pts[chosen]
    spread = min(math.dist(c[a], c[b]) for a, b in itertools.combinations(range(k), 2))
    return tuple(sorted(chosen)), spread


def _heuristic_clique(pts, k, resolution, threshold, budget, seed, n_seeds=24, n_refine=12):
    dim = pts.shape[1]
    pitch = 4.0 * resolution
    while True:
        keys = np.floor(pts / pitch).astype(np.int64)
        _, rep = np.unique(keys, axis=0, return_index=True)
        if len(rep) <= budget:
            break
        pitch *= 1.5
    coarse = pts[rep]
    hit = exhaustive_clique(coarse, k, threshold) if len(coarse) <= budget else None
    if hit is not None:
        return coarse[hit]
    rng = np.random.default_rng(seed)
    centroid = coarse.mean(0)
    starts = [int(np.argmax(((coarse - centroid) ** 2).sum(1)))]
    starts += list(rng.choice(len(coarse), size=min(n_seeds, len(coarse)), replace=False))
    tuples = {}
    for st in starts:
        tup, spread = _greedy_tuple(coarse, k, int(st))
        tuples[tup] = spread
    ranked = sorted(tuples.items(), key=lambda kv: -kv[1])[:n_refine]
    # one coarse cell around each seed vertex
    radius = pitch * math.sqrt(dim)
    for tup, _ in ranked:
        near = np.zeros(len(pts), dtype=bool)
        for c in coarse[list(tup)]:
            near |= ((pts - c) ** 2).sum(1) <= radius * radius
        local = pts[near]
        if len(local) > budget:
            local = local[rng.choice(len(local), budget, replace=False)]
        hit = exhaustive_clique(local, k, threshold)
        if hit is not None:
            return local[hit]
    return None


def clique_search(s, k: int, resolution: float, threshold: float = 2.0,
                  budget: int = EXHAUSTIVE_BUDGET, seed: int = 0,
                  max_cells: int = DEFAULT_CELL_BUDGET) -> CliqueSearch:
    if int(k) != k or k < 2:
        raise DomainError("k must be an integer >= 2")
    res = s.h if isinstance(s, CartesianRaster) else resolution
    pts = grid_points(s, resolution, boundary_only=k <= 3, max_cells=max_cells)
    exhaustive = len(pts) <= budget
    if exhaustive:
        idx = exhaustive_clique(pts, k, threshold)
        witness = None if idx is None else pts[idx]
    else:
        witness = _heuristic_clique(pts, k, res, threshold, budget, seed)
    if witness is not None:
        assert is_clique(witness, threshold)
    return CliqueSearch(witness, exhaustive, len(pts), res)


def clique_witness(s, k: int, resolution: float, threshold: float = 2.0, **kw) -> np.ndarray | None:
    """k grid points of ``s`` (pitch ``resolution``) pairwise > ``threshold`` apart, or None.

    None means "K_k-free at this resolution".  In the exhaustive regime every
    clique whose pairwise distances exceed threshold + 2*sqrt(2)*resolution is
    found; beyond the budget the search is a seeded heuristic.
    """
    return clique_search(s, k, resolution, threshold, **kw).witness


def is_clique(points, threshold: float = 2.0) -> bool:
    """Exact check that all pairwise squared distances exceed threshold^2."""
    pts = np.asarray(points, dtype=float)
    t2 = threshold * threshold
    return all(float(((pts[a] - pts[b]) ** 2).sum()) > t2
               for a, b in itertools.combinations(range(len(pts)), 2))
