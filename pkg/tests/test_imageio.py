import numpy as np
import pytest
from hypothesis import given

from dirmorph.bitplane import BinaryImage
from dirmorph.imageio import (
    ColorClassSpec,
    ImageFormatError,
    color_separate,
    read_binary,
    read_color,
    rgb_to_hsi,
    write_binary,
    write_overlay,
    write_ppm,
)
from dirmorph.scenes import demo_scene_spec, synth

from conftest import binary_images


# -- PBM ------------------------------------------------------------------------

def test_p1_parse(tmp_path):
    p = tmp_path / "t.pbm"
    p.write_bytes(b"P1\n# two by two\n2 2\n1 0\n0 1\n")
    img = read_binary(p)
    assert img.width == 2 and img.height == 2
    assert img.to_points() == {(0, 0), (1, 1)}


def test_p1_tolerates_packed_digits(tmp_path):
    p = tmp_path / "t.pbm"
    p.write_bytes(b"P1\n3 2\n101010\n")
    assert read_binary(p).to_points() == {(0, 0), (2, 0), (1, 1)}


@given(binary_images(max_side=17))
def test_p4_roundtrip(img, tmp_path_factory):
    p = tmp_path_factory.mktemp("pbm") / "t.pbm"
    write_binary(img, p, format="P4")
    assert read_binary(p) == img


@given(binary_images(max_side=9))
def test_p1_roundtrip(img, tmp_path_factory):
    p = tmp_path_factory.mktemp("pbm") / "t.pbm"
    write_binary(img, p, format="P1")
    assert read_binary(p) == img


def test_p4_payload_size(tmp_path):
    scene = synth(demo_scene_spec())
    p = tmp_path / "scene.pbm"
    write_binary(scene.image, p)
    data = p.read_bytes()
    header_end = data.index(b"\n", data.index(b"\n") + 1) + 1
    assert len(data) - header_end == 256 * 256 // 8


def test_empty_image_writes_zero_bits(tmp_path):
    p = tmp_path / "e.pbm"
    write_binary(BinaryImage.empty(10, 3), p)
    assert read_binary(p).popcount == 0


def test_pbm_error_cases(tmp_path):
    bad = tmp_path / "bad.pbm"
    bad.write_bytes(b"P4\n8 4\n\x00")  # truncated
    with pytest.raises(ImageFormatError):
        read_binary(bad)
    bad.write_bytes(b"P1\n2 x\n")
    with pytest.raises(ImageFormatError):
        read_binary(bad)
    bad.write_bytes(b"P5\n2 2\n255\n\x00\x00\x00\x00")
    with pytest.raises(ImageFormatError):
        read_binary(bad)
    with pytest.raises(ImageFormatError):
        write_binary(BinaryImage.empty(2, 2), bad, format="P7")


# -- PNG ------------------------------------------------------------------------

def test_png_bilevel_and_threshold(tmp_path):
    from PIL import Image

    gray = np.array([[0, 100], [127, 255]], dtype=np.uint8)
    p = tmp_path / "g.png"
    Image.fromarray(gray, mode="L").save(p)
    img = read_binary(p)  # default threshold 128: ink below it
    assert img.to_points() == {(0, 0), (1, 0), (0, 1)}
    assert read_binary(p, threshold=50).to_points() == {(0, 0)}

    bil = Image.fromarray(gray, mode="L").convert("1")
    p2 = tmp_path / "b.png"
    bil.save(p2)
    assert (0, 0) in read_binary(p2).to_points()
    assert (1, 1) not in read_binary(p2).to_points()


def test_png_rgb_rejected_for_binary(tmp_path):
    from PIL import Image

    p = tmp_path / "c.png"
    Image.fromarray(np.zeros((2, 2, 3), dtype=np.uint8), mode="RGB").save(p)
    with pytest.raises(ImageFormatError):
        read_binary(p)
    # but readable through the color path
    assert read_color(p).shape == (2, 2, 3)


# -- PPM / color -------------------------------------------------------------------

def test_p6_roundtrip(tmp_path):
    rgb = np.arange(2 * 3 * 3, dtype=np.uint8).reshape(2, 3, 3) * 10
    p = tmp_path / "c.ppm"
    write_ppm(rgb, p)
    assert np.array_equal(read_color(p), rgb)


def test_p6_maxval_check(tmp_path):
    p = tmp_path / "c.ppm"
    p.write_bytes(b"P6\n1 1\n65535\n\x00\x00\x00\x00\x00\x00")
    with pytest.raises(ImageFormatError):
        read_color(p)


# -- HSI ------------------------------------------------------------------------------

def test_hsi_known_values():
    rgb = np.array(
        [[[0, 0, 0], [255, 255, 255], [255, 0, 0], [0, 0, 255]]], dtype=np.uint8
    )
    h, s, i = rgb_to_hsi(rgb)
    assert i[0, 0] == 0.0 and s[0, 0] == 0.0
    assert i[0, 1] == 1.0 and s[0, 1] == pytest.approx(0.0)
    assert np.isnan(h[0, 0]) and np.isnan(h[0, 1])
    assert h[0, 2] == pytest.approx(0.0)
    assert s[0, 2] == pytest.approx(1.0)
    assert i[0, 2] == pytest.approx(1 / 3)
    assert h[0, 3] == pytest.approx(240.0)


def test_color_separate_black_class():
    black = ColorClassSpec("black", intensity_range=(0.0, 0.2))
    rgb = np.array([[[0, 0, 0], [255, 255, 255]]], dtype=np.uint8)
    planes = color_separate(rgb, [black])
    assert planes["black"].to_points() == {(0, 0)}


def test_color_separate_red_vs_black():
    classes = [
        ColorClassSpec("black", intensity_range=(0.0, 0.2)),
        ColorClassSpec("red", hue_range=(350.0, 10.0), saturation_min=0.5),
    ]
    rgb = np.array([[[255, 0, 0], [10, 10, 10], [0, 255, 0]]], dtype=np.uint8)
    planes = color_separate(rgb, classes)
    assert planes["red"].to_points() == {(0, 0)}
    assert planes["black"].to_points() == {(1, 0)}


def test_color_separate_first_match_priority_and_disjoint():
    classes = [
        ColorClassSpec("dark", intensity_range=(0.0, 0.5)),
        ColorClassSpec("also_dark", intensity_range=(0.0, 0.5)),
    ]
    rgb = np.zeros((2, 2, 3), dtype=np.uint8)
    planes = color_separate(rgb, classes)
    assert planes["dark"].popcount == 4
    assert planes["also_dark"].popcount == 0


def test_color_separate_achromatic_skips_hue_classes():
    classes = [ColorClassSpec("bluish", hue_range=(180.0, 270.0))]
    gray = np.full((1, 1, 3), 128, dtype=np.uint8)
    assert color_separate(gray, classes)["bluish"].popcount == 0


def test_color_separate_errors():
    with pytest.raises(ValueError):
        color_separate(np.zeros((2, 2, 3), dtype=np.uint8), [])
    with pytest.raises(ImageFormatError):
        color_separate(np.zeros((0, 2, 3), dtype=np.uint8), [ColorClassSpec("x")])
    with pytest.raises(ImageFormatError):
        color_separate(np.zeros((2, 2), dtype=np.uint8), [ColorClassSpec("x")])


# -- overlay ---------------------------------------------------------------------------

def test_overlay_paints_classes(tmp_path):
    a = BinaryImage.from_points(3, 2, [(0, 0)])
    b = BinaryImage.from_points(3, 2, [(2, 1)])
    p = tmp_path / "o.ppm"
    write_overlay({"solid": a, "track": b}, p)
    rgb = read_color(p)
    assert rgb.shape == (2, 3, 3)
    assert tuple(rgb[0, 0]) == (0, 0, 0)
    assert tuple(rgb[1, 2]) == (230, 80, 30)
    assert tuple(rgb[0, 1]) == (255, 255, 255)
