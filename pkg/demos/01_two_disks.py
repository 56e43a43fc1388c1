"""Two far-apart unit disks: the triangle-free set of largest area.

Run with ``python3 demos/01_two_disks.py``.
"""

import math

from ldgraph import SetRegion, measure
from ldgraph.clique import clique_search
from ldgraph.graph import edge_measure_mc, graphon_density, graphon_of_region, MotifGraph, turan_bound

# Two unit disks with centres 4.5 apart.  Inside one disk no pair is farther
# than 2, so any three points put two in the same disk.
scene = SetRegion.from_disks([(0.0, 0.0), (4.5, 0.0)], 1.0)
lam = measure(scene)
print(f"area            {lam:.6f}   (2 pi = {2 * math.pi:.6f})")

# Every cross pair is far, so half the ordered cross measure is pi^2.
est = edge_measure_mc(scene, samples=2_000_000, seed=1)
print(f"edge measure    {est.value:.4f} +- {est.std_error:.4f}   (pi^2 = {math.pi**2:.4f})")
print(f"Turan bound     {turan_bound(3, lam):.4f}")

# A grid search finds no far triangle, but does find far pairs.
print("triangle found:", clique_search(scene, 3, 0.02).found)
print("far pair found:", clique_search(scene, 2, 0.02).found)

# Seen as a graphon the scene is the complete bipartite one.
w = graphon_of_region(scene, blocks=4, seed=0)
print(f"t(K2) = {graphon_density(w, MotifGraph.complete(2)):.4f}, "
      f"t(K3) = {graphon_density(w, MotifGraph.complete(3)):.4f}")
