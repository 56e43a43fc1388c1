"""Scene JSON and raster text formats.

Scene JSON::

    {"dim": 2, "disks": [{"c": [x, y], "r": r}, ...],
     "clips": [{"annulus": [inner, outer]} | {"halfplane": {"n": [nx, ny], "b": b}}]}

Cartesian rasters are a header ``RASTER h=<h> w=<w> ht=<ht> ox=<ox> oy=<oy>``
followed by ``ht`` rows of ``w`` 0/1 characters, lowest y first.  Polar
rasters use the header ``PRASTER <rmin> <rmax> <dr> <dth>`` followed by one row
per ring, innermost first, sectors ordered from angle -pi.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .geometry import Annulus, Disk, DomainError, HalfPlane, SetRegion
from .graph import MotifGraph
from .raster import CartesianRaster, PolarRaster


class FormatError(DomainError):
    """Malformed scene, raster or motif input."""


def region_to_dict(s: SetRegion) -> dict:
    clips = []
    for c in s.clips:
        if isinstance(c, Annulus):
            clips.append({"annulus": [c.inner, c.outer]})
        else:
            clips.append({"halfplane": {"n": list(c.normal), "b": c.offset}})
    return {"dim": s.dim, "disks": [{"c": list(d.center), "r": d.radius} for d in s.disks], "clips": clips}


def region_from_dict(d: dict) -> SetRegion:
    try:
        dim = int(d.get("dim", 2))
        disks = tuple(Disk(tuple(e["c"]), float(e["r"])) for e in d.get("disks", []))
        clips = []
        for e in d.get("clips", []):
            if "annulus" in e:
                inner, outer = e["annulus"]
                clips.append(Annulus(float(inner), float(outer)))
            elif "halfplane" in e:
                clips.append(HalfPlane(tuple(e["halfplane"]["n"]), float(e["halfplane"]["b"])))
            else:
                raise FormatError(f"unknown clip {e!r}")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise FormatError(f"bad scene: {exc}") from exc
    return SetRegion(dim, disks, tuple(clips))


def dumps_region(s: SetRegion) -> str:
    return json.dumps(region_to_dict(s))


def loads_region(text: str) -> SetRegion:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"scene is not valid JSON: {exc}") from exc
    if not isinstance(d, dict):
        raise FormatError("scene must be a JSON object")
    return region_from_dict(d)


def _rows_text(occ: np.ndarray) -> str:
    return "\n".join("".join("1" if v else "0" for v in row) for row in occ)


def _parse_rows(lines, n_rows, n_cols) -> np.ndarray:
    rows = [ln.strip() for ln in lines if ln.strip()]
    if len(rows) != n_rows:
        raise FormatError(f"expected {n_rows} rows, got {len(rows)}")
    if any(len(r) != n_cols or set(r) - {"0", "1"} for r in rows):
        raise FormatError(f"every row must be {n_cols} characters of 0/1")
    if n_rows == 0:
        return np.zeros((0, n_cols), dtype=bool)
    return np.array([[c == "1" for c in r] for r in rows], dtype=bool)


def dumps_raster(r) -> str:
    if isinstance(r, PolarRaster):
        head = f"PRASTER {r.r_min!r} {r.r_max!r} {r.dr!r} {r.dth!r}"
    else:
        head = f"RASTER h={r.h!r} w={r.width} ht={r.height} ox={r.origin[0]!r} oy={r.origin[1]!r}"
    body = _rows_text(r.occupancy)
    return head + "\n" + body + ("\n" if body else "")


def loads_raster(text: str):
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty raster file")
    head = lines[0].split()
    try:
        if head[0] == "RASTER":
            kv = dict(tok.split("=", 1) for tok in head[1:])
            h, w, ht = float(kv["h"]), int(kv["w"]), int(kv["ht"])
            occ = _parse_rows(lines[1:], ht, w)
            return CartesianRaster((float(kv["ox"]), float(kv["oy"])), h, occ.reshape(ht, w))
        if head[0] == "PRASTER":
            r_min, r_max, dr, dth = (float(v) for v in head[1:5])
            n_r = int(round((r_max - r_min) / dr))
            n_t = int(round(2 * math.pi / dth))
            return PolarRaster(r_min, r_max, _parse_rows(lines[1:], n_r, n_t))
    except (KeyError, IndexError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise FormatError(f"bad raster header {lines[0]!r}: {exc}") from exc
    raise FormatError(f"unknown raster header {lines[0]!r}")


def loads_motif(text: str) -> MotifGraph:
    try:
        return MotifGraph.from_dict(json.loads(text))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise FormatError(f"bad motif graph: {exc}") from exc


def read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_region(path: str) -> SetRegion:
    return loads_region(read_text(path))


def load_raster(path: str):
    return loads_raster(read_text(path))


def load_any(path: str):
    """A scene (JSON) or a raster (text), decided by the first character."""
    text = read_text(path)
    if text.lstrip().startswith("{"):
        return loads_region(text)
    return loads_raster(text)
