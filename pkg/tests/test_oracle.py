import random
import warnings

import pytest

from dirmorph import oracle as O
from dirmorph.bitplane import BinaryImage
from dirmorph.extraction import PipelineConfig
from dirmorph.scenes import (
    Blob,
    Noise,
    SceneSpec,
    SolidLine,
    StippleLine,
    Track,
    line_points,
    random_line_scene,
    synth,
)

from conftest import random_image, to_ref


# -- reference image basics ------------------------------------------------------

def test_refimage_bounds_check():
    with pytest.raises(ValueError):
        O.RefImage.from_points(2, 2, [(2, 0)])


def test_refimage_algebra():
    a = O.RefImage.from_points(3, 3, [(0, 0), (1, 1)])
    b = O.RefImage.from_points(3, 3, [(1, 1), (2, 2)])
    assert (a | b).pixels == {(0, 0), (1, 1), (2, 2)}
    assert (a & b).pixels == {(1, 1)}
    assert (a - b).pixels == {(0, 0)}
    assert (~a).pixels == {(1, 0), (2, 0), (0, 1), (2, 1), (0, 2), (1, 2), (2, 2)}


def test_ref_neighbor_border_zero_fill():
    img = O.RefImage.from_points(2, 2, [(1, 1)])
    assert O.ref_neighbor(img, 0).pixels == {(0, 1)}
    assert O.ref_neighbor(O.RefImage.full(1, 1), 3).pixels == set()


# -- registry ----------------------------------------------------------------------

def test_oracle_eval_dispatch():
    img = O.RefImage.from_points(3, 3, [(1, 1)])
    out = O.oracle_eval("dilate", img, "n8")
    assert out.pixels == {(x, y) for x in range(3) for y in range(3)}
    planes = O.oracle_eval("decompose", O.RefImage.empty(2, 2))
    assert all(not p.pixels for p in planes)


def test_oracle_eval_unknown_op():
    with pytest.raises(ValueError):
        O.oracle_eval("sharpen", O.RefImage.empty(2, 2))


def test_oracle_pipeline_composition_is_pure_reference():
    # the oracle never touches the packed engine: spot-check its output
    # against hand-computable facts
    cfg = PipelineConfig()
    run = O.RefImage.from_points(40, 9, [(x, 4) for x in range(5, 35)])
    solid, stippled = O.ref_extract(run, cfg)
    assert solid.pixels == run.pixels
    assert run.pixels <= stippled.pixels


# -- line rasterizer ------------------------------------------------------------------

def test_line_points_single_point():
    assert line_points((3, 3), (3, 3)) == [(3, 3)]


def test_line_points_axis_aligned():
    assert line_points((1, 1), (4, 1)) == [(1, 1), (2, 1), (3, 1), (4, 1)]
    assert line_points((1, 3), (1, 1)) == [(1, 3), (1, 2), (1, 1)]


def test_line_points_diagonal():
    assert line_points((0, 0), (3, 3)) == [(0, 0), (1, 1), (2, 2), (3, 3)]


def test_line_points_steps_are_8_connected():
    from dirmorph.bitplane import OFFSETS

    rng = random.Random(6)
    for _ in range(50):
        a = (rng.randrange(30), rng.randrange(30))
        b = (rng.randrange(30), rng.randrange(30))
        pts = line_points(a, b)
        assert pts[0] == a and pts[-1] == b
        for p, q in zip(pts, pts[1:]):
            assert (q[0] - p[0], q[1] - p[1]) in OFFSETS


def test_line_points_length_is_step_count():
    assert len(line_points((0, 0), (9, 4))) == 10


# -- scene generation -------------------------------------------------------------------

def test_synth_empty_scene():
    scene = synth(SceneSpec((64, 64)))
    assert scene.image.popcount == 0
    assert all(t.popcount == 0 for t in scene.truth.values())


def test_synth_solid_line_popcount():
    scene = synth(SceneSpec((256, 256), (SolidLine((10, 50), (109, 50)),)))
    assert scene.image.popcount == 100
    assert scene.truth["solid"] == scene.image


def test_synth_stipple_dash_pattern():
    scene = synth(SceneSpec((64, 64), (StippleLine((0, 10), (19, 10), dash_len=3, gap_len=2),)))
    xs = sorted(x for (x, y) in scene.image.to_points())
    assert xs == [0, 1, 2, 5, 6, 7, 10, 11, 12, 15, 16, 17]
    # truth carries the ideal centerline, gaps included
    assert scene.truth["stippled"].popcount == 20
    assert scene.truth["path"] == scene.truth["stippled"]


def test_synth_track_geometry():
    scene = synth(SceneSpec((256, 256), (Track((10, 100), (159, 100), 3, 6, 3),)))
    pts = scene.image.to_points()
    assert {(x, 100) for x in range(10, 160)} <= pts
    stip_rows = {y for (_, y) in pts if y != 100}
    assert stip_rows == {103}
    # corridor truth: a single 150-px midline band between the pair
    truth = scene.truth["track"].to_points()
    assert truth == {(x, 101) for x in range(10, 160)}
    # a track's stippled member is not path truth
    assert scene.truth["path"].popcount == 0


def test_synth_blob_and_clip_warning():
    scene = synth(SceneSpec((32, 32), (Blob((2, 2), 3, 3),)))
    assert scene.image.popcount == 9
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        synth(SceneSpec((32, 32), (SolidLine((40, 40), (50, 50)),)))
    assert any("outside" in str(w.message) for w in caught)


def test_synth_noise_deterministic():
    spec = SceneSpec((48, 48), (Noise(0.1, seed=7),))
    assert synth(spec).image == synth(spec).image
    assert synth(spec).image.popcount > 0


def test_synth_thickness():
    thin = synth(SceneSpec((32, 32), (SolidLine((5, 10), (25, 10), thickness=1),)))
    thick = synth(SceneSpec((32, 32), (SolidLine((5, 10), (25, 10), thickness=3),)))
    assert thick.image.popcount == 3 * thin.image.popcount
    assert thin.truth["solid"] == thick.truth["solid"]


def test_random_line_scene_deterministic():
    a = random_line_scene(64, 5, seed=9)
    b = random_line_scene(64, 5, seed=9)
    c = random_line_scene(64, 5, seed=10)
    assert a == b
    assert a != c
    assert a.popcount > 0


# -- packed/oracle agreement on composite ops (randomized spot checks) ------------------

@pytest.mark.parametrize("seed", [1, 2, 3])
def test_masked_open_close_agreement(seed):
    from dirmorph.morphology import open_close, orth_fan
    from conftest import same_pixels

    rng = random.Random(seed)
    f = random_image(rng, 16, 16, density=0.4)
    g = random_image(rng, 16, 16, density=0.6)
    for which in ("open", "close"):
        for semantics in ("ek_dk", "repeated"):
            for mask, ref_mask in ((None, None), ("self", "self"), (g, to_ref(g))):
                packed = open_close(f, orth_fan(3), 2, mask, which, semantics=semantics)
                ref = O.ref_open_close(
                    to_ref(f), "orth_fan", 3, 2, ref_mask, which, semantics=semantics
                )
                assert same_pixels(packed, ref)
