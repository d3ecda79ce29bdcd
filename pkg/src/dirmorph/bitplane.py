r"""Bit-packed binary images and their decomposition into directional planes.

A ``BinaryImage`` stores the whole raster in a single arbitrary-precision
integer: bit ``y*width + x`` holds pixel ``(x, y)``, least significant bit
first, x growing rightward and y growing downward.  Every boolean operation
and every one-pixel shift is then a single word-parallel integer operation,
which is what makes the iterated morphology in :mod:`dirmorph.morphology`
fast.  There are no per-row padding bits; the only invariant to maintain is
that no bit at index >= width*height is ever set, so population counts and
equality stay exact.

Directions are integer codes 0..7 with modulo-8 arithmetic.  Code 0 points
east (+x) and codes advance counterclockwise in compass terms, i.e. 2 is
north, which in raster coordinates is -y:

    3   2   1
      \ | /
    4 - + - 0        offset table: OFFSETS[d] = (dx, dy)
      / | \
    5   6   7

Out-of-image pixels always read as 0 (the image border behaves like
background).  All functions are pure: images are immutable values and may be
shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "OFFSETS",
    "BinaryImage",
    "DirectionalPlanes",
    "DimensionMismatch",
    "neighbor",
    "bool_op",
    "decompose",
    "merge",
    "interior8",
    "rotate90",
    "planes_to_bytes",
    "bytes_to_planes",
]

# Direction code -> (dx, dy).  0=E, 1=NE, 2=N, 3=NW, 4=W, 5=SW, 6=S, 7=SE.
OFFSETS: tuple[tuple[int, int], ...] = (
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
)


class DimensionMismatch(ValueError):
    """Two images with different widths or heights were combined."""


@lru_cache(maxsize=None)
class _Geometry:
    """Per-(width, height) bit masks shared by all images of that size."""

    def __init__(self, width: int, height: int):
        n = width * height
        self.full = (1 << n) - 1
        # Column masks guard one-pixel horizontal shifts against bits
        # wrapping into the adjacent row.
        col0 = 0
        for y in range(height):
            col0 |= 1 << (y * width)
        self.not_col0 = self.full ^ col0
        self.not_col_last = self.full ^ (col0 << (width - 1))


@dataclass(frozen=True)
class BinaryImage:
    """Immutable bit-packed 2-D binary raster; 1 means foreground/ink."""

    width: int
    height: int
    bits: int

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"image dimensions must be >= 1, got {self.width}x{self.height}")
        if self.bits < 0 or self.bits >> (self.width * self.height):
            raise ValueError("bits outside the width*height range are set")

    # -- constructors ----------------------------------------------------

    @classmethod
    def empty(cls, width: int, height: int) -> "BinaryImage":
        return cls(width, height, 0)

    @classmethod
    def full(cls, width: int, height: int) -> "BinaryImage":
        return cls(width, height, (1 << (width * height)) - 1)

    @classmethod
    def from_points(cls, width: int, height: int, points: Iterable[tuple[int, int]]) -> "BinaryImage":
        bits = 0
        for x, y in points:
            if not (0 <= x < width and 0 <= y < height):
                raise ValueError(f"point ({x}, {y}) outside {width}x{height} image")
            bits |= 1 << (y * width + x)
        return cls(width, height, bits)

    @classmethod
    def from_rows(cls, rows: list[str], on: str = "#") -> "BinaryImage":
        """Build from ASCII art rows, e.g. ``["..#", "###"]``."""
        height = len(rows)
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("all rows must have equal length")
        bits = 0
        for y, row in enumerate(rows):
            for x, ch in enumerate(row):
                if ch == on:
                    bits |= 1 << (y * width + x)
        return cls(width, height, bits)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "BinaryImage":
        """Build from a (height, width) array; nonzero means foreground."""
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        h, w = arr.shape
        flat = np.ascontiguousarray(arr != 0).reshape(-1)
        packed = np.packbits(flat, bitorder="little").tobytes()
        return cls(w, h, int.from_bytes(packed, "little"))

    # -- inspection ------------------------------------------------------

    def get(self, x: int, y: int) -> int:
        """Pixel value with border semantics: out-of-range reads 0."""
        if not (0 <= x < self.width and 0 <= y < self.height):
            return 0
        return (self.bits >> (y * self.width + x)) & 1

    @property
    def popcount(self) -> int:
        return self.bits.bit_count()

    def to_points(self) -> set[tuple[int, int]]:
        pts = set()
        w = self.width
        v = self.bits
        while v:
            low = v & -v
            i = low.bit_length() - 1
            pts.add((i % w, i // w))
            v ^= low
        return pts

    def to_array(self) -> np.ndarray:
        """(height, width) uint8 array of 0/1 pixel values."""
        nbytes = (self.width * self.height + 7) // 8
        raw = np.frombuffer(self.bits.to_bytes(nbytes, "little"), dtype=np.uint8)
        flat = np.unpackbits(raw, bitorder="little")[: self.width * self.height]
        return flat.reshape(self.height, self.width)

    def to_rows(self, on: str = "#", off: str = ".") -> list[str]:
        arr = self.to_array()
        return ["".join(on if v else off for v in row) for row in arr]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.to_points()))

    # -- comparisons (dimension-checked, per the stats contract) ----------

    def _check_dims(self, other: "BinaryImage") -> None:
        if self.width != other.width or self.height != other.height:
            raise DimensionMismatch(
                f"image dimensions differ: {self.width}x{self.height} vs {other.width}x{other.height}"
            )

    def equals(self, other: "BinaryImage") -> bool:
        self._check_dims(other)
        return self.bits == other.bits

    def subset_of(self, other: "BinaryImage") -> bool:
        self._check_dims(other)
        return self.bits & ~other.bits == 0

    # -- boolean algebra ---------------------------------------------------

    def complement(self) -> "BinaryImage":
        geom = _Geometry(self.width, self.height)
        return BinaryImage(self.width, self.height, geom.full ^ self.bits)

    def union(self, other: "BinaryImage") -> "BinaryImage":
        self._check_dims(other)
        return BinaryImage(self.width, self.height, self.bits | other.bits)

    def intersection(self, other: "BinaryImage") -> "BinaryImage":
        self._check_dims(other)
        return BinaryImage(self.width, self.height, self.bits & other.bits)

    def difference(self, other: "BinaryImage") -> "BinaryImage":
        self._check_dims(other)
        return BinaryImage(self.width, self.height, self.bits & ~other.bits)

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __invert__ = complement


def neighbor(f: BinaryImage, d: int) -> BinaryImage:
    """One-pixel neighborhood image: result(p) = f(p + OFFSETS[d]).

    Pixels whose source would fall outside the image become 0.  The whole
    shift is two or three integer operations regardless of image size.
    """
    d &= 7
    dx, dy = OFFSETS[d]
    w = f.width
    geom = _Geometry(w, f.height)
    shift = dy * w + dx
    if shift >= 0:
        v = f.bits >> shift
    else:
        v = (f.bits << -shift) & geom.full
    # A horizontal component makes row-boundary bits wrap into the wrong
    # column of the adjacent row; that column must read as border zeros.
    if dx == 1:
        v &= geom.not_col_last
    elif dx == -1:
        v &= geom.not_col0
    return BinaryImage(w, f.height, v & geom.full)


def bool_op(kind: str, f: BinaryImage, g: BinaryImage | None = None) -> BinaryImage:
    """Dispatch-style boolean connective, mirroring the oracle registry."""
    if kind == "complement":
        return f.complement()
    if g is None:
        raise ValueError(f"bool_op {kind!r} needs a second operand")
    if kind == "union":
        return f.union(g)
    if kind == "intersection":
        return f.intersection(g)
    if kind == "difference":
        return f.difference(g)
    raise ValueError(f"unknown bool_op kind {kind!r}")


@dataclass(frozen=True)
class DirectionalPlanes:
    """The 8 per-direction planes of one image, indexed by direction code."""

    planes: tuple[BinaryImage, ...]

    def __post_init__(self):
        if len(self.planes) != 8:
            raise ValueError("exactly 8 planes required")
        w, h = self.planes[0].width, self.planes[0].height
        if any(p.width != w or p.height != h for p in self.planes):
            raise DimensionMismatch("all planes must share one width/height")

    def __getitem__(self, d: int) -> BinaryImage:
        return self.planes[d & 7]

    @property
    def width(self) -> int:
        return self.planes[0].width

    @property
    def height(self) -> int:
        return self.planes[0].height


def decompose(b: BinaryImage) -> DirectionalPlanes:
    """Split an image into its 8 directional contour planes.

    Plane d keeps the pixels of b whose neighbor toward d is background,
    i.e. the contour of b as seen from direction d.  The union of all
    planes is b without its 8-connected interior.
    """
    return DirectionalPlanes(tuple(b - neighbor(b, d) for d in range(8)))


def merge(planes: DirectionalPlanes) -> BinaryImage:
    """Pixelwise union of all 8 planes."""
    out = planes[0]
    for d in range(1, 8):
        out = out | planes[d]
    return out


def interior8(b: BinaryImage) -> BinaryImage:
    """Pixels of b all 8 of whose neighbors are foreground (border excluded)."""
    out = b
    for d in range(8):
        out = out & neighbor(b, d)
    return out


def rotate90(f: BinaryImage) -> BinaryImage:
    """Rotate so a structure aligned with direction d aligns with d+2.

    The returned image is height x width; borders map to borders, so every
    zero-fill shift commutes with this rotation after relabeling d -> d+2.
    """
    return BinaryImage.from_array(f.to_array().T[::-1])


def planes_to_bytes(planes: DirectionalPlanes) -> bytes:
    """Byte-per-pixel interoperability dump: bit d of each byte = plane d."""
    acc = np.zeros(planes.height * planes.width, dtype=np.uint8)
    for d in range(8):
        acc |= planes[d].to_array().reshape(-1) << d
    return acc.tobytes()


def bytes_to_planes(width: int, height: int, data: bytes) -> DirectionalPlanes:
    """Inverse of :func:`planes_to_bytes`."""
    if len(data) != width * height:
        raise ValueError(f"expected {width * height} bytes, got {len(data)}")
    arr = np.frombuffer(data, dtype=np.uint8).reshape(height, width)
    return DirectionalPlanes(tuple(BinaryImage.from_array((arr >> d) & 1) for d in range(8)))
