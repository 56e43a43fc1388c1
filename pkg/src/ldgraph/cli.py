"""Command-line front end: ``ldgraph <subcommand> [options]``.

Exit codes: 0 success, 1 domain error, 2 I/O error, 3 verification failure.
Errors are printed to stderr as one line of JSON.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import bounds
from .clique import clique_search
from .geometry import BudgetError, DomainError, SetRegion, diameter_with_tolerance, measure
from .graph import (MotifGraph, StepGraphon, edge_measure_grid, edge_measure_mc, graphon_density,
                    graphon_of_region, motif_measure_mc)
from .io import FormatError, dumps_raster, load_any, load_raster, load_region, loads_motif, read_text
from .raster import CartesianRaster, PolarRaster, rasterize
from .search import AnnealParams, anneal_restarts, optimal_annulus_set, parametric_clique_iso, trace_csv
from .symmetrize import circular_symmetrize, d_maximal_check, steiner_symmetrize
from .verify import SUITES, run_suite

EXIT_OK, EXIT_DOMAIN, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(DomainError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(kind):
    def conv(text):
        try:
            v = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}")
        if not v > 0:
            raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
        return v
    return conv


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _finite(obj):
    # strict JSON has no infinities; one-sided limits such as a'(4) become null
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


def _dumps(obj) -> str:
    return json.dumps(_finite(obj), default=_json_default, allow_nan=False)


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _need_scene(args):
    if not args.scene:
        raise UsageError("--scene is required")
    return load_any(args.scene)


# --- subcommands -------------------------------------------------------------


def cmd_measure(args):
    s = _need_scene(args)
    _emit(args, _dumps({"measure": measure(s, tol=args.tol)}))


def cmd_diameter(args):
    s = _need_scene(args)
    if isinstance(s, SetRegion):
        if s.is_empty:
            raise DomainError("diameter of an empty region")
        value, tol = diameter_with_tolerance(s)
    else:
        value, tol = s.diameter(), s.diameter_slack()
    _emit(args, _dumps({"diameter": value, "tolerance": tol}))


def cmd_edge_measure(args):
    s = _need_scene(args)
    if isinstance(s, CartesianRaster):
        _emit(args, _dumps({"value": edge_measure_grid(s), "method": "grid"}))
    elif isinstance(s, PolarRaster):
        raise DomainError("edge-measure takes a scene or a Cartesian raster")
    elif args.cell_size:
        _emit(args, _dumps({"value": edge_measure_grid(rasterize(s, args.cell_size)), "method": "grid"}))
    else:
        _emit(args, edge_measure_mc(s, samples=args.samples, seed=args.seed).to_json())


def cmd_clique(args):
    s = _need_scene(args)
    if isinstance(s, PolarRaster):
        raise DomainError("clique takes a scene or a Cartesian raster")
    res = clique_search(s, args.k, args.resolution, seed=args.seed)
    _emit(args, _dumps({"k": args.k, "found": res.found,
                        "witness": None if res.witness is None else res.witness.tolist(),
                        "exhaustive": res.exhaustive, "candidates": res.candidates,
                        "resolution": res.resolution}))


def _motif(args) -> MotifGraph:
    if args.motif:
        return loads_motif(read_text(args.motif))
    return MotifGraph.complete(args.k)


def cmd_motif(args):
    s = load_region(args.scene) if args.scene else None
    if s is None:
        raise UsageError("--scene is required")
    est = motif_measure_mc(s, _motif(args), samples=args.samples, seed=args.seed)
    _emit(args, est.to_json())


def cmd_graphon_density(args):
    h = _motif(args)
    if args.scene:
        w = graphon_of_region(load_region(args.scene), args.blocks, seed=args.seed, samples=args.samples)
    elif args.parts:
        w = StepGraphon.complete_partite(args.parts)
    else:
        raise UsageError("give --scene or --parts")
    _emit(args, _dumps({"density": graphon_density(w, h), "motif": h.to_dict(), "blocks": w.n_blocks}))


def cmd_bound(args):
    if args.z is None:
        raise UsageError("--z is required")
    row = bounds.BoundLedger.at(args.z)
    if args.format == "json":
        _emit(args, _dumps(row.as_dict()))
    else:
        _emit(args, bounds.ledger_csv([args.z]))


def cmd_symmetrize(args):
    r = load_raster(_require(args.scene, "--scene"))
    if isinstance(r, PolarRaster):
        out = circular_symmetrize(r)
        report = d_maximal_check(r, args.R if args.R is not None else r.r_max).to_dict()
    else:
        axis = args.axis_x
        if axis is None:
            axis = float(r.centers()[:, 0].mean()) if r.count else r.origin[0]
        out = steiner_symmetrize(r, axis)
        report = {"input_measure": r.measure(), "output_measure": out.measure(),
                  "input_diameter": r.diameter() if r.count else 0.0,
                  "output_diameter": out.diameter() if out.count else 0.0,
                  "axis_x": axis}
    _emit(args, dumps_raster(out))
    # the raster owns stdout unless it went to a file
    stream = sys.stdout if args.out else sys.stderr
    stream.write(_dumps(report) + "\n")


def _require(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def cmd_search_annulus(args):
    R = _require(args.R, "--R")
    sched = AnnealParams(iterations=args.iterations)
    res = anneal_restarts(R, args.dr, args.dth, sched, seed=args.seed, restarts=args.restarts)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(res.raster_text())
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(trace_csv(res))
    sys.stdout.write(_dumps(res.to_dict()) + "\n")


def cmd_search_clique_iso(args):
    res = parametric_clique_iso(args.d, args.k, args.family, budget=args.budget, seed=args.seed,
                                resolution=args.resolution)
    _emit(args, _dumps(res.to_dict()))


def cmd_verify(args):
    def show(check):
        sys.stdout.write(_dumps(check.to_dict()) + "\n")
        sys.stdout.flush()

    checks = run_suite(args.suite, seed=args.seed, on_check=show)
    passed = all(c.passed for c in checks)
    sys.stdout.write(_dumps({"suite": args.suite, "seed": args.seed, "passed": passed,
                             "failed": [c.name for c in checks if not c.passed]}) + "\n")
    return EXIT_OK if passed else EXIT_VERIFY


def _range(args, lo, hi):
    if args.range:
        lo, hi = args.range
    if not hi > lo:
        raise DomainError("range must be increasing")
    return lo, hi


def cmd_plot_data(args):
    kind = args.kind
    if kind == "bound-ledger":
        lo, hi = _range(args, bounds.Z_MIN, bounds.Z_MAX)
        _emit(args, bounds.ledger_csv(np.linspace(lo, hi, args.points)))
    elif kind == "annulus-extremal-outline":
        e = optimal_annulus_set(_require(args.R, "--R"))
        pts = e.outline(args.points)
        _emit(args, "x,y\n" + "".join(f"{x!r},{y!r}\n" for x, y in pts.tolist()))
    elif kind == "search-trace":
        sched = AnnealParams(iterations=args.iterations)
        res = anneal_restarts(_require(args.R, "--R"), args.dr, args.dth, sched, seed=args.seed, restarts=1)
        _emit(args, trace_csv(res))
    else:
        raise DomainError(f"unknown plot kind {kind!r}")


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ldgraph", description="Large-distance graphs of planar and spatial sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--out", help="write the main output here instead of stdout")
        return sp

    def scene(sp):
        sp.add_argument("--scene", help="scene JSON or raster text file")

    def seed(sp, samples=1_000_000):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=_positive(int), default=samples)

    sp = add("measure", cmd_measure, "measure of a scene or raster")
    scene(sp)
    sp.add_argument("--tol", type=_positive(float), default=1e-6)

    sp = add("diameter", cmd_diameter, "diameter with its tolerance")
    scene(sp)

    sp = add("edge-measure", cmd_edge_measure, "edge measure (Monte Carlo, or grid with --cell-size)")
    scene(sp)
    seed(sp)
    sp.add_argument("--cell-size", type=_positive(float))

    sp = add("clique", cmd_clique, "search for a k-clique witness")
    scene(sp)
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--resolution", type=_positive(float), default=0.01)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("motif", cmd_motif, "labelled motif measure (Monte Carlo)")
    scene(sp)
    seed(sp)
    sp.add_argument("--motif", help="motif JSON file; default is the complete graph on --k vertices")
    sp.add_argument("--k", type=int, default=3)

    sp = add("graphon-density", cmd_graphon_density, "homomorphism density of a step graphon")
    scene(sp)
    seed(sp, samples=4000)
    sp.add_argument("--parts", type=_positive(int), help="balanced complete multipartite graphon")
    sp.add_argument("--blocks", type=_positive(int), default=16)
    sp.add_argument("--motif")
    sp.add_argument("--k", type=int, default=3)

    sp = add("bound", cmd_bound, "closed-form bound ledger row at z")
    sp.add_argument("--z", type=float)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = add("symmetrize", cmd_symmetrize, "circular (polar) or Steiner (Cartesian) symmetrization")
    scene(sp)
    sp.add_argument("--R", type=_positive(float), help="outer radius for the window check")
    sp.add_argument("--axis-x", type=float, help="Steiner axis x = const")

    sp = add("search-annulus", cmd_search_annulus, "anneal a diameter-2 subset of Annulus(2, R)")
    sp.add_argument("--R", type=_positive(float))
    sp.add_argument("--dr", type=_positive(float), default=0.005)
    sp.add_argument("--dth", type=_positive(float), default=0.002)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--restarts", type=_positive(int), default=4)
    sp.add_argument("--iterations", type=_positive(int), default=AnnealParams.iterations)
    sp.add_argument("--trace", help="write the annealing trace CSV here")

    sp = add("search-clique-iso", cmd_search_clique_iso, "ball-family search for K_k-free sets")
    sp.add_argument("--d", type=_positive(int), default=2)
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--family", choices=("balls", "single", "both"), default="both")
    sp.add_argument("--budget", type=_positive(int), default=60)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--resolution", type=_positive(float), default=0.01)

    sp = add("verify", cmd_verify, "run the acceptance suite")
    sp.add_argument("--suite", choices=sorted(SUITES), default="core")
    sp.add_argument("--seed", type=int, default=0)

    sp = add("plot-data", cmd_plot_data, "CSV data for external plotting")
    sp.add_argument("--kind", required=True,
                    choices=("bound-ledger", "annulus-extremal-outline", "search-trace"))
    sp.add_argument("--points", type=_positive(int), default=100)
    sp.add_argument("--range", type=float, nargs=2, metavar=("LO", "HI"))
    sp.add_argument("--R", type=_positive(float))
    sp.add_argument("--dr", type=_positive(float), default=0.02)
    sp.add_argument("--dth", type=_positive(float), default=0.01)
    sp.add_argument("--iterations", type=_positive(int), default=20_000)
    sp.add_argument("--seed", type=int, default=0)
    return p


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        code = args.fn(args)
        return EXIT_OK if code is None else code
    except FormatError as exc:
        return _fail("format", str(exc), EXIT_IO)
    except (DomainError, BudgetError) as exc:
        return _fail("domain", str(exc), EXIT_DOMAIN)
    except OSError as exc:
        return _fail("io", str(exc), EXIT_IO)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
