"""Large-distance graphs of Euclidean sets.

Points of a set are joined when they are more than 2 apart.  The package
measures these graphs (edge and motif measures, graphon densities), checks
clique-freeness, evaluates the closed-form bounds for K3-free planar sets and
for diameter-2 subsets of an annulus, symmetrizes rasters, and searches for
extremal configurations.
"""

from .bounds import (a_of, crude_bounds, f_of, f_prime, g_of, h_of, H_of, lens_area, verify_f_monotone,
                     verify_H_identity)
from .clique import clique_search, clique_witness, is_clique
from .geometry import (Annulus, BudgetError, Disk, DomainError, HalfPlane, SetRegion, ball_volume, diameter,
                       measure, set_distance)
from .graph import (Estimate, MotifGraph, StepGraphon, edge_measure_grid, edge_measure_mc, graphon_density,
                    graphon_of_region, motif_measure_mc, turan_bound)
from .raster import CartesianRaster, PolarRaster, rasterize, to_polar
from .search import (AnnealParams, AnnulusExtremal, SearchResult, anneal_annulus, anneal_restarts,
                     big_ball_construction, multi_ball_construction, optimal_annulus_set,
                     parametric_clique_iso)
from .symmetrize import SymmetrizationReport, circular_symmetrize, d_maximal_check, steiner_symmetrize

__version__ = "0.1.0"
