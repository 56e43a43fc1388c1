"""Large-distance graphs: edge and motif measures, graphon densities.

Two points of a set are adjacent when their distance strictly exceeds the
threshold (2 by default).  The edge measure of a set A is half the 2d-dim
measure of the ordered adjacent pairs in A x A.
"""

from __future__ import annotations

import itertools
import json
import math
import os
import string
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from .geometry import BudgetError, DomainError, HalfPlane, SetRegion, measure, sample_uniform
from .raster import CartesianRaster

MAX_MOTIF_K = 6
MAX_BLOCKS = 64
DEFAULT_STREAMS = 8
_CHUNK = 250_000


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo result; ``std_error`` is the sample std of the estimator over ``sqrt(samples)``."""

    value: float
    std_error: float
    samples: int
    seed: int

    def to_dict(self) -> dict:
        return {"value": self.value, "stderr": self.std_error, "samples": self.samples, "seed": self.seed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "Estimate":
        return cls(float(d["value"]), float(d["stderr"]), int(d["samples"]), int(d["seed"]))

    def within(self, target: float, n_se: float = 3.0) -> bool:
        return abs(self.value - target) <= n_se * self.std_error


@dataclass(frozen=True)
class MotifGraph:
    """Graph on labelled vertices 1..k; edges are unordered pairs."""

    k: int
    edges: frozenset

    def __post_init__(self):
        if not (2 <= self.k <= MAX_MOTIF_K):
            raise DomainError(f"motif size must be in [2, {MAX_MOTIF_K}], got {self.k}")
        edges = set()
        for e in self.edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise DomainError("motif graphs have no loops")
            if not (1 <= i <= self.k and 1 <= j <= self.k):
                raise DomainError(f"edge {e} references a vertex outside 1..{self.k}")
            edges.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def complete(cls, k: int) -> "MotifGraph":
        return cls(k, frozenset(itertools.combinations(range(1, k + 1), 2)))

    @classmethod
    def empty(cls, k: int) -> "MotifGraph":
        return cls(k, frozenset())

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def to_dict(self) -> dict:
        return {"k": self.k, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_dict(cls, d: dict) -> "MotifGraph":
        return cls(int(d["k"]), frozenset(tuple(e) for e in d["edges"]))


@dataclass(frozen=True, eq=False)
class StepGraphon:
    """Block-constant graphon: blocks of probability ``block_weights[i]`` and
    value ``block_values[i, j]`` on block i x block j."""

    block_weights: np.ndarray
    block_values: np.ndarray

    def __post_init__(self):
        w = np.array(self.block_weights, dtype=float)
        m = np.array(self.block_values, dtype=float)
        if w.ndim != 1 or len(w) == 0 or len(w) > MAX_BLOCKS:
            raise DomainError(f"need between 1 and {MAX_BLOCKS} blocks")
        if np.any(w <= 0) or abs(w.sum() - 1.0) > 1e-9:
            raise DomainError("block weights must be positive and sum to 1")
        if m.shape != (len(w), len(w)):
            raise DomainError("block value matrix has the wrong shape")
        if not np.allclose(m, m.T, atol=0, rtol=0) or m.min() < 0 or m.max() > 1:
            raise DomainError("block values must be symmetric with entries in [0, 1]")
        w.setflags(write=False)
        m.setflags(write=False)
        object.__setattr__(self, "block_weights", w)
        object.__setattr__(self, "block_values", m)

    @property
    def n_blocks(self) -> int:
        return len(self.block_weights)

    @classmethod
    def complete_partite(cls, parts: int) -> "StepGraphon":
        """Balanced complete ``parts``-partite graphon (1 off the diagonal blocks)."""
        return cls(np.full(parts, 1.0 / parts), 1.0 - np.eye(parts))


def turan_bound(k: int, lam: float) -> float:
    """Largest edge measure of an (essentially) K_k-free set of measure ``lam``."""
    if int(k) != k or k < 2:
        raise DomainError("k must be an integer >= 2")
    if lam < 0:
        raise DomainError("measure must be nonnegative")
    return 0.5 * (1.0 - 1.0 / (k - 1)) * lam * lam


# ---------------------------------------------------------------------------
# Monte Carlo


def _split(samples: int, streams: int) -> list:
    base, extra = divmod(samples, streams)
    return [base + (i < extra) for i in range(streams)]


def _run_streams(fn, seed, samples, streams, workers):
    """Run ``fn(rng, n)`` per stream (stream i seeded with seed + i) and sum hit counts by index."""
    sizes = _split(samples, streams)
    jobs = [(np.random.default_rng(seed + i), n) for i, n in enumerate(sizes)]
    workers = workers or min(streams, os.cpu_count() or 1)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            hits = list(pool.map(lambda job: fn(*job), jobs))
    else:
        hits = [fn(*job) for job in jobs]
    return sum(hits)


def _tuple_estimate(s: SetRegion, k: int, far_pairs, t2, samples, seed, streams, workers):
    if samples < 1:
        raise DomainError("need at least one sample")
    if s.is_empty:
        return Estimate(0.0, 0.0, samples, seed)
    lo, hi = s.bounding_box()
    box = float(np.prod(hi - lo))

    def count(rng, n):
        hits = 0
        done = 0
        while done < n:
            m = min(_CHUNK, n - done)
            pts = rng.uniform(lo, hi, size=(k, m, s.dim))
            ok = np.ones(m, dtype=bool)
            for i in range(k):
                ok &= s.contains(pts[i])
            for i, j in far_pairs:
                diff = pts[i] - pts[j]
                ok &= np.einsum("ij,ij->i", diff, diff) > t2
            hits += int(ok.sum())
            done += m
        return hits

    hits = _run_streams(count, seed, samples, streams, workers)
    p = hits / samples
    scale = box**k
    sd = math.sqrt(p * (1.0 - p) * samples / (samples - 1)) if samples > 1 else 0.0
    return Estimate(scale * p, scale * sd / math.sqrt(samples), samples, seed)


def edge_measure_mc(s: SetRegion, threshold: float = 2.0, samples: int = 1_000_000, seed: int = 0,
                    streams: int = DEFAULT_STREAMS, workers: int | None = None) -> Estimate:
    """Unbiased estimate of e(G_A) = 1/2 * measure{(p, q) in A x A : |p - q| > threshold}.

    Pairs are drawn uniformly from the bounding box squared.  The value is a
    deterministic function of (seed, samples, streams); ``workers`` only
    changes wall time.
    """
    est = motif_measure_mc(s, MotifGraph.complete(2), samples, seed, threshold, streams, workers)
    return Estimate(0.5 * est.value, 0.5 * est.std_error, samples, seed)


def motif_measure_mc(s: SetRegion, h: MotifGraph, samples: int = 1_000_000, seed: int = 0,
                     threshold: float = 2.0, streams: int = DEFAULT_STREAMS,
                     workers: int | None = None) -> Estimate:
    """Estimate of the k*d-dim measure of labelled k-tuples of A whose H-edges are all far.

    Reported on ordered (labelled) tuples, so for H = K2 it equals 2 e(G_A).
    """
    far_pairs = [(i - 1, j - 1) for i, j in h.sorted_edges()]
    return _tuple_estimate(s, h.k, far_pairs, threshold * threshold, samples, seed, streams, workers)


# ---------------------------------------------------------------------------
# deterministic grid edge measure


def far_pair_count(occupancy: np.ndarray, h: float, threshold: float = 2.0) -> int:
    """Ordered pairs of occupied cells whose centres are more than ``threshold`` apart.

    Uses the occupancy autocorrelation, so each displacement is tested once.
    """
    occ = np.asarray(occupancy, dtype=float)
    if occ.sum() == 0:
        return 0
    corr = np.rint(fftconvolve(occ, occ[::-1, ::-1], mode="full")).astype(np.int64)
    ht, w = occ.shape
    dy = (np.arange(2 * ht - 1) - (ht - 1)) * h
    dx = (np.arange(2 * w - 1) - (w - 1)) * h
    far = dy[:, None] ** 2 + dx[None, :] ** 2 > threshold * threshold
    return int(corr[far].sum())


def edge_measure_grid(r: CartesianRaster, threshold: float = 2.0, max_cells: int = 16_000_000) -> float:
    """1/2 * h^4 * (ordered occupied-cell pairs with centre distance > threshold)."""
    if r.count == 0:
        return 0.0
    if 4 * r.width * r.height > max_cells:
        raise BudgetError(f"raster of {r.width}x{r.height} exceeds the pair budget")
    return 0.5 * far_pair_count(r.occupancy, r.h, threshold) * r.h**4


# ---------------------------------------------------------------------------
# graphons


def graphon_density(w: StepGraphon, h: MotifGraph) -> float:
    """Homomorphism density t(H, W) as an exact block sum (tensor contraction)."""
    letters = string.ascii_letters[: h.k]
    ops, subs = [], []
    for v in range(h.k):
        ops.append(w.block_weights)
        subs.append(letters[v])
    for i, j in h.sorted_edges():
        ops.append(w.block_values)
        subs.append(letters[i - 1] + letters[j - 1])
    expr = ",".join(subs) + "->"
    return float(np.einsum(expr, *ops, optimize="greedy"))


def _kd_blocks(pts: np.ndarray, blocks: int) -> tuple:
    """Labels and boxes of a recursive split into ``blocks`` cells of roughly equal mass.

    Each cut is placed in the widest gap between samples within 5% of the
    target quantile, so well separated clusters are never split by sampling
    noise.  Boxes are (lo, hi) arrays; outer faces are infinite.
    """
    labels = np.zeros(len(pts), dtype=np.int64)
    boxes = [None] * blocks

    def split(idx, n_blocks, first, lo, hi):
        if n_blocks == 1:
            labels[idx] = first
            boxes[first] = (lo, hi)
            return
        sub = pts[idx]
        axis = int(np.argmax(sub.max(axis=0) - sub.min(axis=0)))
        order = idx[np.argsort(sub[:, axis], kind="stable")]
        xs = pts[order, axis]
        left = n_blocks // 2
        n = len(order)
        target = int(round(n * left / n_blocks))
        win = max(1, n // 20)
        cands = np.arange(max(1, target - win), min(n - 1, target + win) + 1)
        cut = int(cands[np.argmax(xs[cands] - xs[cands - 1])])
        at = 0.5 * (xs[cut - 1] + xs[cut])
        lo_r, hi_l = lo.copy(), hi.copy()
        hi_l[axis] = at
        lo_r[axis] = at
        split(order[:cut], left, first, lo, hi_l)
        split(order[cut:], n_blocks - left, first + left, lo_r, hi)

    dim = pts.shape[1]
    split(np.arange(len(pts)), blocks, 0, np.full(dim, -np.inf), np.full(dim, np.inf))
    return labels, boxes


def _box_measure(s: SetRegion, lo, hi) -> float:
    clips = list(s.clips)
    for axis, sign, bound in ((0, -1, lo[0]), (0, 1, hi[0]), (1, -1, lo[1]), (1, 1, hi[1])):
        if math.isfinite(bound):
            normal = [0.0, 0.0]
            normal[axis] = float(sign)
            clips.append(HalfPlane(tuple(normal), sign * float(bound)))
    return measure(SetRegion(2, s.disks, tuple(clips)))


def graphon_of_region(s: SetRegion, blocks: int, seed: int = 0, samples: int = 4000,
                      threshold: float = 2.0) -> StepGraphon:
    """Step-graphon approximation of the large-distance graph of ``s``.

    Uniform samples of ``s`` are cut into ``blocks`` boxes of roughly equal
    mass by recursive splits along the widest axis; each block value is the
    sampled fraction of far pairs between the two boxes.  In the plane block
    weights are the exact measures of the boxes' pieces of ``s``; elsewhere
    they are sample fractions.
    """
    if not (1 <= blocks <= MAX_BLOCKS):
        raise DomainError(f"block count must be in [1, {MAX_BLOCKS}]")
    if s.is_empty or measure(s) <= 0:
        raise DomainError("graphon of a zero-measure region")
    rng = np.random.default_rng(seed)
    pts = sample_uniform(s, max(samples, 2 * blocks), rng)
    labels, boxes = _kd_blocks(pts, blocks)
    if s.dim == 2:
        weights = np.array([_box_measure(s, lo, hi) for lo, hi in boxes])
    else:
        weights = np.bincount(labels, minlength=blocks) / len(pts)
    vals = np.zeros((blocks, blocks))
    t2 = threshold * threshold
    groups = [pts[labels == b] for b in range(blocks)]
    for a in range(blocks):
        for b in range(a, blocks):
            d2 = ((groups[a][:, None, :] - groups[b][None, :, :]) ** 2).sum(-1)
            far = d2 > t2
            if a == b:
                n = len(groups[a])
                v = far.sum() / max(n * (n - 1), 1)
            else:
                v = far.mean()
            vals[a, b] = vals[b, a] = v
    return StepGraphon(weights / weights.sum(), vals)
