"""Largest diameter-2 set inside the annulus 2 <= |x| <= R, exact and annealed.

The exact answer is a unit disk cut by the two circles.  The annealer works
on a polar grid and only ever holds sets whose closed cells have diameter at
most 2, so its value is a certified lower bound that stays below h(R).

Run with ``python3 demos/02_annulus_extremal.py``.  Takes about half a minute.
"""

import numpy as np

from ldgraph import bounds
from ldgraph.search import AnnealParams, anneal_restarts, optimal_annulus_set

print(" R       h(R)      a(R)      s(R)")
for R in (2 * np.sqrt(2), 3.0, 3.5, 4.0):
    e = optimal_annulus_set(R)
    print(f"{R:.4f}  {bounds.h_of(R):.6f}  {e.a:.6f}  {e.s:.6f}")

# A coarser grid than the acceptance run, so this finishes quickly.
sched = AnnealParams(iterations=60_000, steps_per_temperature=9)
res = anneal_restarts(3.0, 0.01, 0.005, sched, seed=0, restarts=2)
print()
print(f"annealed at R=3: {res.best_value:.5f} of {res.target_bound:.5f} "
      f"({100 * res.best_value / res.target_bound:.2f}%)")
print("restart values:", [round(v, 5) for v in res.details["restart_values"]])
print(f"corner diameter {res.details['corner_diameter']:.6f}, "
      f"audit failures {res.details['audit_failures']}")

# How the best value grew along the run.
for it, T, v, best, acc in res.details["trace"][::10]:
    print(f"  it {it:6d}  T {T:9.4f}  best {best:.5f}")
