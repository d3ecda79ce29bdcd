"""Slow reference implementations of every operator, for equivalence testing.

Everything here works on plain sets of (x, y) coordinates and is written as
direct per-pixel transcriptions of the operator definitions: a neighborhood
image is a set comprehension over pixels, erosion and dilation are literal
intersections/unions of those sets.  Nothing is shared with the packed
big-integer engine, so agreement between the two is meaningful evidence.

The pipeline compositions (edge/short/middle/long gates, recognition) are
deliberately restated here rather than imported, for the same reason.

This module is intentionally unoptimized; do not speed it up at the cost of
readability.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitplane import OFFSETS

Points = frozenset


@dataclass(frozen=True)
class RefImage:
    """Reference binary image: explicit coordinate set plus bounds."""

    width: int
    height: int
    pixels: frozenset[tuple[int, int]]

    @classmethod
    def from_points(cls, width, height, points):
        pts = frozenset(points)
        for (x, y) in pts:
            if not (0 <= x < width and 0 <= y < height):
                raise ValueError(f"point ({x}, {y}) outside {width}x{height}")
        return cls(width, height, pts)

    @classmethod
    def empty(cls, width, height):
        return cls(width, height, frozenset())

    @classmethod
    def full(cls, width, height):
        return cls(width, height, frozenset((x, y) for y in range(height) for x in range(width)))

    def _check(self, other):
        if (self.width, self.height) != (other.width, other.height):
            raise ValueError("dimension mismatch")

    def __or__(self, other):
        self._check(other)
        return RefImage(self.width, self.height, self.pixels | other.pixels)

    def __and__(self, other):
        self._check(other)
        return RefImage(self.width, self.height, self.pixels & other.pixels)

    def __sub__(self, other):
        self._check(other)
        return RefImage(self.width, self.height, self.pixels - other.pixels)

    def __invert__(self):
        return RefImage(
            self.width,
            self.height,
            frozenset(
                (x, y) for y in range(self.height) for x in range(self.width) if (x, y) not in self.pixels
            ),
        )


def ref_neighbor(f: RefImage, d: int) -> RefImage:
    """result(p) = f(p + offset(d)); sources outside the image read 0."""
    dx, dy = OFFSETS[d & 7]
    pts = frozenset(
        (x - dx, y - dy)
        for (x, y) in f.pixels
        if 0 <= x - dx < f.width and 0 <= y - dy < f.height
    )
    return RefImage(f.width, f.height, pts)


def ref_decompose(b: RefImage) -> list[RefImage]:
    """Plane d: pixels of b whose neighbor toward d is background."""
    return [b - ref_neighbor(b, d) for d in range(8)]


def ref_merge(planes) -> RefImage:
    out = planes[0]
    for p in planes[1:]:
        out = out | p
    return out


def ref_interior8(b: RefImage) -> RefImage:
    out = b
    for d in range(8):
        out = out & ref_neighbor(b, d)
    return out


# -- erosion / dilation selectors -----------------------------------------

def ref_dilate(f: RefImage, kind: str, d: int = 0) -> RefImage:
    out = f
    if kind == "n4":
        for i in (0, 2, 4, 6):
            out = out | ref_neighbor(f, i)
    elif kind == "n8":
        for i in range(8):
            out = out | ref_neighbor(f, i)
    elif kind == "single":
        out = out | ref_neighbor(f, d + 4)
    elif kind == "fan":
        for i in (d + 3, d + 4, d + 5):
            out = out | ref_neighbor(f, i)
    elif kind == "orth_single":
        out = ref_dilate(f, "single", d - 2) | ref_dilate(f, "single", d + 2)
    elif kind == "orth_fan":
        out = ref_dilate(f, "fan", d - 2) | ref_dilate(f, "fan", d + 2)
    else:
        raise ValueError(f"unknown selector kind {kind!r}")
    return out


def ref_erode(f: RefImage, kind: str, d: int = 0, variant: str = "union_of_shifts") -> RefImage:
    if kind == "n4":
        out = f
        for i in (0, 2, 4, 6):
            out = out & ref_neighbor(f, i)
    elif kind == "n8":
        out = f
        for i in range(8):
            out = out & ref_neighbor(f, i)
    elif kind == "single":
        out = f & ref_neighbor(f, d)
    elif kind == "fan":
        shifts = [ref_neighbor(f, i) for i in (d - 1, d, d + 1)]
        if variant == "union_of_shifts":
            out = f & (shifts[0] | shifts[1] | shifts[2])
        elif variant == "intersection_of_shifts":
            out = f & shifts[0] & shifts[1] & shifts[2]
        else:
            raise ValueError(f"unknown fan erosion variant {variant!r}")
    elif kind == "orth_single":
        out = ref_erode(f, "single", d - 2, variant) & ref_erode(f, "single", d + 2, variant)
    elif kind == "orth_fan":
        out = ref_erode(f, "fan", d - 2, variant) & ref_erode(f, "fan", d + 2, variant)
    else:
        raise ValueError(f"unknown selector kind {kind!r}")
    return out


def ref_masked_dilate(f: RefImage, g: RefImage, kind: str, d: int = 0) -> RefImage:
    return g & ref_dilate(f, kind, d)


def ref_masked_erode(f, g, kind, d=0, variant="union_of_shifts") -> RefImage:
    return ref_erode(f | g, kind, d, variant)


def ref_end_points(f: RefImage, d: int, variant: str = "union_of_shifts") -> RefImage:
    """Pixels removed by the fan erosion toward d: the line ends facing d."""
    return f - ref_erode(f, "fan", d, variant)


def ref_open_close(
    f: RefImage,
    kind: str,
    d: int,
    k: int,
    mask: RefImage | str | None,
    which: str,
    variant: str = "union_of_shifts",
    semantics: str = "ek_dk",
) -> RefImage:
    if k < 1:
        raise ValueError("k must be >= 1")
    mask_img = f if mask == "self" else mask

    def dil(x):
        x = ref_dilate(x, kind, d)
        if mask_img is not None:
            x = x & mask_img
        return x

    def ero(x):
        return ref_erode(x, kind, d, variant)

    if semantics == "ek_dk":
        out = f
        first, second = (ero, dil) if which == "open" else (dil, ero)
        for _ in range(k):
            out = first(out)
        for _ in range(k):
            out = second(out)
        return out
    if semantics == "repeated":
        out = f
        for _ in range(k):
            out = dil(ero(out)) if which == "open" else ero(dil(out))
        return out
    raise ValueError(f"unknown open/close semantics {semantics!r}")


# -- extraction pipeline, restated ------------------------------------------

def ref_edge(f_d: RefImage, d: int, cfg) -> RefImage:
    perp = ref_neighbor(f_d, d - 2) | ref_neighbor(f_d, d + 2) \
        if cfg.edge_connective == "union" \
        else ref_neighbor(f_d, d - 2) & ref_neighbor(f_d, d + 2)
    return f_d & perp


def _ref_grow_masked_fan(seed, mask, e, steps):
    out = seed
    for _ in range(steps):
        out = ref_masked_dilate(out, mask, "fan", e)
    return out


def ref_short(f_edge: RefImage, f_d: RefImage, d: int, cfg) -> RefImage:
    mask = f_d if cfg.short_mask == "plane" else f_edge
    inner = f_edge
    for e in (d - 2, d + 2):
        ends = ref_end_points(f_edge, e, cfg.fan_variant)
        inner = inner | _ref_grow_masked_fan(ends, mask, e, cfg.short_growth)
    eroded = inner
    for _ in range(cfg.short_growth):
        eroded = ref_erode(eroded, "orth_fan", d, cfg.fan_variant)
    pre = f_edge | eroded
    return ref_open_close(pre, "orth_fan", d, 1, "self", "open", cfg.fan_variant, cfg.open_semantics)


def ref_middle(f_short: RefImage, b: RefImage, d: int, cfg) -> RefImage:
    inner = f_short
    for e in (d - 2, d + 2):
        grown = ref_end_points(f_short, e, cfg.fan_variant)
        grown = ref_masked_dilate(grown, b, "fan", e)
        for _ in range(cfg.middle_growth - 1):
            grown = ref_masked_dilate(grown, b, "single", e)
        inner = inner | grown
    eroded = inner
    for _ in range(cfg.middle_growth):
        eroded = ref_erode(eroded, "orth_fan", d, cfg.fan_variant)
    pre = f_short | eroded
    return ref_open_close(pre, "orth_fan", d, 1, "self", "open", cfg.fan_variant, cfg.open_semantics)


def ref_long_solid(f_middle: RefImage, d: int, cfg) -> RefImage:
    return ref_open_close(
        f_middle, "orth_fan", d, cfg.long_len, "self", "open", cfg.fan_variant, cfg.open_semantics
    )


def ref_long_stippled(f_middle: RefImage, d: int, cfg) -> RefImage:
    inner = f_middle
    for e in (d - 2, d + 2):
        grown = ref_end_points(f_middle, e, cfg.fan_variant)
        grown = ref_dilate(grown, "fan", e)
        for _ in range(cfg.stipple_reach_dilate):
            grown = ref_dilate(grown, "single", e)
        inner = inner | grown
    eroded = inner
    for _ in range(cfg.stipple_reach_erode):
        eroded = ref_erode(eroded, "orth_fan", d, cfg.fan_variant)
    pre = f_middle | eroded
    return ref_open_close(
        pre, "orth_fan", d, cfg.long_len, "self", "open", cfg.fan_variant, cfg.open_semantics
    )


def ref_extract(b: RefImage, cfg) -> tuple[RefImage, RefImage]:
    """(solid, stippled_segments) for the whole image."""
    solid = RefImage.empty(b.width, b.height)
    stippled = RefImage.empty(b.width, b.height)
    planes = ref_decompose(b)
    for d in range(8):
        f_e = ref_edge(planes[d], d, cfg)
        f_s = ref_short(f_e, planes[d], d, cfg)
        f_m = ref_middle(f_s, b, d, cfg)
        solid = solid | ref_long_solid(f_m, d, cfg)
        stippled = stippled | ref_long_stippled(f_m, d, cfg)
    return solid, stippled


# -- recognition, restated ---------------------------------------------------

def ref_stippled_lines(f_longw: RefImage, rcfg, semantics: str = "ek_dk") -> RefImage:
    return ref_open_close(f_longw, "n8", 0, rcfg.stipple_close, None, "close", semantics=semantics)


def ref_track_lines(f_longb: RefImage, f_stippled: RefImage, rcfg, semantics: str = "ek_dk") -> RefImage:
    total = f_longb | f_stippled
    closed = ref_open_close(total, "n8", 0, rcfg.track_close, None, "close", semantics=semantics)
    corridor = closed - total
    out = corridor
    for _ in range(rcfg.track_dilate):
        out = ref_masked_dilate(out, closed, "n8")
    return out


def ref_path_lines(f_stippled: RefImage, f_track: RefImage, rcfg) -> RefImage:
    guard = f_track
    for _ in range(rcfg.path_guard_dilate):
        guard = ref_dilate(guard, "n8")
    return f_stippled - guard


def ref_recognize(b: RefImage, pcfg, rcfg):
    """(solid, stippled, track, path) class rasters.

    The stippled class is closed from the stippled gate minus the solid
    raster, keeping solid runs out of the stippled plane so track corridors
    survive the closing.
    """
    solid, longw = ref_extract(b, pcfg)
    stippled = ref_stippled_lines(longw - solid, rcfg, pcfg.open_semantics)
    track = ref_track_lines(solid, stippled, rcfg, pcfg.open_semantics)
    path = ref_path_lines(stippled, track, rcfg)
    return solid, stippled, track, path


# -- operator registry --------------------------------------------------------

_REGISTRY = {
    "neighbor": ref_neighbor,
    "complement": lambda f: ~f,
    "union": lambda f, g: f | g,
    "intersection": lambda f, g: f & g,
    "difference": lambda f, g: f - g,
    "decompose": ref_decompose,
    "merge": ref_merge,
    "interior8": ref_interior8,
    "dilate": ref_dilate,
    "erode": ref_erode,
    "masked_dilate": ref_masked_dilate,
    "masked_erode": ref_masked_erode,
    "end_points": ref_end_points,
    "open_close": ref_open_close,
    "edge": ref_edge,
    "short": ref_short,
    "middle": ref_middle,
    "long_solid": ref_long_solid,
    "long_stippled": ref_long_stippled,
    "extract": ref_extract,
    "stippled_lines": ref_stippled_lines,
    "track_lines": ref_track_lines,
    "path_lines": ref_path_lines,
    "recognize": ref_recognize,
}


def oracle_eval(op_id: str, *args, **kwargs):
    """Evaluate a registered operation by name on reference images."""
    try:
        fn = _REGISTRY[op_id]
    except KeyError:
        raise ValueError(f"unknown operation {op_id!r}") from None
    return fn(*args, **kwargs)
