import random

from hypothesis import strategies as st

from dirmorph.bitplane import BinaryImage
from dirmorph.oracle import RefImage


def to_ref(img: BinaryImage) -> RefImage:
    return RefImage(img.width, img.height, frozenset(img.to_points()))


def same_pixels(packed: BinaryImage, ref: RefImage) -> bool:
    return packed.to_points() == set(ref.pixels)


@st.composite
def binary_images(draw, min_side=1, max_side=9):
    w = draw(st.integers(min_side, max_side))
    h = draw(st.integers(min_side, max_side))
    bits = draw(st.integers(0, (1 << (w * h)) - 1))
    return BinaryImage(w, h, bits)


@st.composite
def image_pairs(draw, min_side=1, max_side=9):
    """Two images of equal dimensions."""
    w = draw(st.integers(min_side, max_side))
    h = draw(st.integers(min_side, max_side))
    top = (1 << (w * h)) - 1
    return (
        BinaryImage(w, h, draw(st.integers(0, top))),
        BinaryImage(w, h, draw(st.integers(0, top))),
    )


def random_image(rng: random.Random, w: int, h: int, density: float = 0.3) -> BinaryImage:
    bits = 0
    for i in range(w * h):
        if rng.random() < density:
            bits |= 1 << i
    return BinaryImage(w, h, bits)
