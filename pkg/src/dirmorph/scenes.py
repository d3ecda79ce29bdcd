"""Synthetic scene generation with per-class ground truth.

Stands in for scanned source material: scenes are built from straight solid
or stippled lines, double-line tracks, rectangular blobs (stand-ins for
characters and other non-linear clutter), and salt noise.  Rasterization
uses integer midpoint stepping, so every generated line is a chain of
one-pixel moves in the 8 compass directions and meets the straightness
assumption the extraction pipeline relies on exactly.

Ground truth is returned per element class as centerline rasters: the ideal
line including dash gaps for stippled elements, and the corridor midline for
tracks.  That is what recall/precision scoring measures against.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from typing import Union

from .bitplane import BinaryImage, OFFSETS

__all__ = [
    "SolidLine",
    "StippleLine",
    "Track",
    "Blob",
    "Noise",
    "SceneSpec",
    "Scene",
    "line_points",
    "synth",
    "demo_scene_spec",
    "random_line_scene",
]

TRUTH_CLASSES = ("solid", "stippled", "track", "path")


@dataclass(frozen=True)
class SolidLine:
    start: tuple[int, int]
    end: tuple[int, int]
    thickness: int = 1


@dataclass(frozen=True)
class StippleLine:
    start: tuple[int, int]
    end: tuple[int, int]
    dash_len: int = 6
    gap_len: int = 3
    thickness: int = 1


@dataclass(frozen=True)
class Track:
    """Double line: solid at start..end, stippled offset to its right side."""

    start: tuple[int, int]
    end: tuple[int, int]
    separation: int = 3
    dash_len: int = 6
    gap_len: int = 3


@dataclass(frozen=True)
class Blob:
    center: tuple[int, int]
    w: int = 3
    h: int = 3


@dataclass(frozen=True)
class Noise:
    density: float = 0.001
    seed: int = 0


Element = Union[SolidLine, StippleLine, Track, Blob, Noise]


@dataclass(frozen=True)
class SceneSpec:
    size: tuple[int, int]
    elements: tuple[Element, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class Scene:
    image: BinaryImage
    truth: dict[str, BinaryImage]


def line_points(start: tuple[int, int], end: tuple[int, int]) -> list[tuple[int, int]]:
    """Midpoint-stepped straight line, endpoints included.

    Each step moves one pixel in one of the 8 directions; the step count is
    max(|dx|, |dy|), so dash patterns measured in steps are well defined.
    """
    x0, y0 = start
    x1, y1 = end
    dx, dy = x1 - x0, y1 - y0
    steps = max(abs(dx), abs(dy))
    if steps == 0:
        return [start]
    pts = []
    err_x = err_y = 0
    x, y = x0, y0
    sx = 1 if dx > 0 else -1
    sy = 1 if dy > 0 else -1
    for _ in range(steps + 1):
        pts.append((x, y))
        err_x += abs(dx)
        err_y += abs(dy)
        if 2 * err_x >= steps:
            x += sx
            err_x -= steps
        if 2 * err_y >= steps:
            y += sy
            err_y -= steps
    return pts


def _dominant_direction(start, end) -> int:
    """Direction code of the line's dominant step."""
    dx, dy = end[0] - start[0], end[1] - start[1]
    sx = (dx > 0) - (dx < 0)
    sy = (dy > 0) - (dy < 0)
    if abs(dx) > 2 * abs(dy):
        sy = 0
    if abs(dy) > 2 * abs(dx):
        sx = 0
    return OFFSETS.index((sx, sy)) if (sx, sy) != (0, 0) else 0

def _perp_offset(start, end) -> tuple[int, int]:
    """Unit offset perpendicular to the line, on its right-hand side."""
    d = _dominant_direction(start, end)
    return OFFSETS[(d - 2) % 8]


def _clip(points, width, height, what: str) -> set[tuple[int, int]]:
    inside = {(x, y) for (x, y) in points if 0 <= x < width and 0 <= y < height}
    if points and not inside:
        warnings.warn(f"{what} lies entirely outside the {width}x{height} scene", stacklevel=3)
    return inside


def _thicken(centerline, perp, thickness) -> list[tuple[int, int]]:
    px, py = perp
    offsets = range(-(thickness - 1) // 2, thickness // 2 + 1)
    return [(x + k * px, y + k * py) for (x, y) in centerline for k in offsets]


def _stipple(points, dash_len, gap_len) -> list[tuple[int, int]]:
    period = dash_len + gap_len
    return [p for i, p in enumerate(points) if i % period < dash_len]


def synth(spec: SceneSpec) -> Scene:
    """Rasterize a scene spec into an image plus per-class truth rasters."""
    w, h = spec.size
    ink: set[tuple[int, int]] = set()
    truth: dict[str, set[tuple[int, int]]] = {name: set() for name in TRUTH_CLASSES}
    for el in spec.elements:
        if isinstance(el, SolidLine):
            center = line_points(el.start, el.end)
            ink |= _clip(_thicken(center, _perp_offset(el.start, el.end), el.thickness), w, h, "solid line")
            truth["solid"] |= _clip(center, w, h, "solid line centerline")
        elif isinstance(el, StippleLine):
            center = line_points(el.start, el.end)
            dashes = _stipple(center, el.dash_len, el.gap_len)
            ink |= _clip(_thicken(dashes, _perp_offset(el.start, el.end), el.thickness), w, h, "stippled line")
            ideal = _clip(center, w, h, "stippled line centerline")
            truth["stippled"] |= ideal
            truth["path"] |= ideal
        elif isinstance(el, Track):
            px, py = _perp_offset(el.start, el.end)
            solid_center = line_points(el.start, el.end)
            s = el.separation
            stip_center = line_points(
                (el.start[0] + s * px, el.start[1] + s * py),
                (el.end[0] + s * px, el.end[1] + s * py),
            )
            mid = s // 2
            corridor = line_points(
                (el.start[0] + mid * px, el.start[1] + mid * py),
                (el.end[0] + mid * px, el.end[1] + mid * py),
            )
            dashes = _stipple(stip_center, el.dash_len, el.gap_len)
            ink |= _clip(solid_center, w, h, "track solid line")
            ink |= _clip(dashes, w, h, "track stippled line")
            truth["solid"] |= _clip(solid_center, w, h, "track solid centerline")
            truth["stippled"] |= _clip(stip_center, w, h, "track stippled centerline")
            truth["track"] |= _clip(corridor, w, h, "track corridor midline")
        elif isinstance(el, Blob):
            cx, cy = el.center
            pts = [
                (x, y)
                for y in range(cy - (el.h - 1) // 2, cy + el.h // 2 + 1)
                for x in range(cx - (el.w - 1) // 2, cx + el.w // 2 + 1)
            ]
            ink |= _clip(pts, w, h, "blob")
        elif isinstance(el, Noise):
            rng = random.Random(el.seed)
            ink |= {
                (x, y)
                for y in range(h)
                for x in range(w)
                if rng.random() < el.density
            }
        else:
            raise TypeError(f"unknown scene element {el!r}")
    image = BinaryImage.from_points(w, h, ink)
    return Scene(
        image=image,
        truth={name: BinaryImage.from_points(w, h, pts) for name, pts in truth.items()},
    )


def demo_scene_spec() -> SceneSpec:
    """The reference 256x256 evaluation scene.

    One solid+stippled track at 3-px separation, a straight stippled path, a
    second stippled path crossing the track (so recognition shows the
    expected interruptions near the crossing), a row of five character-sized
    blobs close enough to masquerade as a dashed line, and one isolated blob.
    """
    return SceneSpec(
        size=(256, 256),
        elements=(
            Track((20, 60), (235, 60), separation=3, dash_len=6, gap_len=3),
            StippleLine((20, 140), (235, 140), dash_len=6, gap_len=3),
            StippleLine((120, 235), (165, 20), dash_len=6, gap_len=3),
            Blob((60, 190)), Blob((70, 190)), Blob((80, 190)),
            Blob((90, 190)), Blob((100, 190)),
            Blob((200, 200)),
        ),
    )


def random_line_scene(size: int, n_lines: int, seed: int) -> BinaryImage:
    """Benchmark scene: n random solid/stippled lines in a size x size image.

    Deterministic for a given (size, n_lines, seed).
    """
    rng = random.Random(seed)
    elements: list[Element] = []
    margin = 8
    for i in range(n_lines):
        start = (rng.randrange(margin, size - margin), rng.randrange(margin, size - margin))
        end = (rng.randrange(margin, size - margin), rng.randrange(margin, size - margin))
        if start == end:
            end = (end[0] + margin, end[1])
        if i % 3 == 0:
            elements.append(StippleLine(start, end, dash_len=6, gap_len=3))
        else:
            elements.append(SolidLine(start, end))
    return synth(SceneSpec((size, size), tuple(elements))).image
