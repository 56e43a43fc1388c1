"""Two unit balls against one ball of radius 2/sqrt(3), dimension by dimension.

Both sets have no three points pairwise farther than 2 apart.  Two unit balls
win up to dimension 4; from dimension 5 the single larger ball has more
volume.  The parametric search finds the same switch on its own.

Run with ``python3 demos/03_dimension_crossover.py``.
"""

from ldgraph.geometry import ball_volume
from ldgraph.search import big_ball_construction, multi_ball_construction, parametric_clique_iso

print(" d   two balls    one ball    ratio   search winner")
for d in range(2, 9):
    two = multi_ball_construction(d, 3, edge_samples=0, grid_check=False).best_value
    one = big_ball_construction(d, samples=500, grid_check=False).best_value
    found = parametric_clique_iso(d, 3, budget=30, seed=0)
    print(f"{d:2d}  {two:10.5f}  {one:10.5f}  {one / two:6.3f}   {found.details['winner']}"
          f" ({found.best_value / ball_volume(d):.4f} unit balls)")
