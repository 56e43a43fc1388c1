import math

import numpy as np
import pytest

from ldgraph.geometry import Annulus, HalfPlane, SetRegion
from ldgraph.io import (FormatError, dumps_raster, dumps_region, load_any, loads_motif, loads_raster,
                        loads_region)
from ldgraph.raster import PolarRaster, rasterize


def test_scene_roundtrip():
    s = SetRegion.from_disks([(0, 0), (4.5, 0)], [1.0, 0.5],
                             clips=[Annulus(0.5, 5.0), HalfPlane((0, 1), 0.25)])
    assert loads_region(dumps_region(s)) == s


def test_scene_format():
    s = loads_region('{"dim":2,"disks":[{"c":[1,2],"r":3}],"clips":[{"annulus":[1,2]},'
                     '{"halfplane":{"n":[1,0],"b":0.5}}]}')
    assert s.disks[0].center == (1.0, 2.0) and s.disks[0].radius == 3.0
    assert s.clips == (Annulus(1.0, 2.0), HalfPlane((1.0, 0.0), 0.5))


@pytest.mark.parametrize("text", ["not json", "[]", '{"disks":[{"c":[0,0]}]}', '{"clips":[{"box":1}]}',
                                  '{"disks":[{"c":[0,0],"r":-1}]}'])
def test_bad_scenes(text):
    with pytest.raises(Exception) as info:
        loads_region(text)
    assert isinstance(info.value, ValueError)


def test_cartesian_raster_roundtrip():
    r = rasterize(SetRegion.from_disks([(0.3, -0.2)], 0.7), 0.1)
    back = loads_raster(dumps_raster(r))
    assert np.array_equal(back.occupancy, r.occupancy)
    assert back.origin == r.origin and back.h == r.h
    assert dumps_raster(r).startswith(f"RASTER h=0.1 w={r.width} ht={r.height}")


def test_polar_raster_roundtrip():
    occ = np.zeros((5, 12), dtype=bool)
    occ[2, 3:7] = True
    p = PolarRaster(2.0, 3.0, occ)
    text = dumps_raster(p)
    assert text.splitlines()[0].split()[0] == "PRASTER"
    back = loads_raster(text)
    assert np.array_equal(back.occupancy, occ)
    assert back.dth == pytest.approx(2 * math.pi / 12)


@pytest.mark.parametrize("text", ["", "GRID 1 2", "RASTER h=1 w=2 ht=2 ox=0 oy=0\n01\n", "RASTER h=1 w=2 ht=1 ox=0 oy=0\n0x\n"])
def test_bad_rasters(text):
    with pytest.raises(FormatError):
        loads_raster(text)


def test_motif_json():
    g = loads_motif('{"k":3,"edges":[[1,2],[2,3],[1,3]]}')
    assert g.k == 3 and len(g.edges) == 3
    with pytest.raises(FormatError):
        loads_motif('{"edges": []}')


def test_load_any(tmp_path):
    scene = tmp_path / "s.json"
    scene.write_text('{"dim":2,"disks":[],"clips":[]}')
    assert load_any(str(scene)).is_empty
    raster = tmp_path / "r.txt"
    raster.write_text("RASTER h=0.5 w=2 ht=1 ox=0 oy=0\n11\n")
    assert load_any(str(raster)).count == 2
