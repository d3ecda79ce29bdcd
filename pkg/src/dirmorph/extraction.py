"""Per-plane line extraction: edge cores, re-joining, and length gating.

The pipeline runs independently on each of the 8 directional planes and
unions the results.  Within plane d all work happens along the perpendicular
axis (directions d-2 and d+2), because that is the axis segments in plane d
run along:

  edge     keep pixels with a same-plane neighbor along the perpendicular
           axis (segment cores).
  short    re-join segments broken by contour noise: grow the segment ends a
           few steps, but only through pixels of the plane itself, then
           erode back so only growth that bridged to something survives.
  middle   same re-joining but grown through the original image, closing
           interruptions caused by direction changes and line crossings.
  long_*   keep only runs that survive a k-step self-masked opening: the
           solid gate applies it directly, the stippled gate first lets
           segment ends expand freely so dash segments within reach connect.

Every grow step is masked (except in the stippled gate, where free expansion
is the point), and every stage ends with a self-masked opening, so stage
outputs stay inside their stage inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .bitplane import BinaryImage, DirectionalPlanes, decompose, neighbor
from .morphology import (
    FAN_VARIANTS,
    UNION_OF_SHIFTS,
    dilate,
    end_points,
    erode,
    fan,
    masked_dilate,
    open_close,
    orth_fan,
    single,
    trace_stage,
)

__all__ = ["PipelineConfig", "ExtractionResult", "STAGES", "edge", "short", "middle",
           "long_solid", "long_stippled", "extract"]

# Stage names in pipeline order; also the stage-dump file name stems.
STAGES = ("plane", "edge", "short", "middle", "longb", "longw")


@dataclass(frozen=True)
class PipelineConfig:
    """Iteration coefficients and formula-variant switches for extraction.

    The defaults are the coefficients the line classes were calibrated
    with; all of them are exposed because different map series need
    different values.
    """

    short_growth: int = 2
    middle_growth: int = 2
    long_len: int = 12
    stipple_reach_erode: int = 4
    stipple_reach_dilate: int = 3
    fan_variant: str = UNION_OF_SHIFTS
    short_mask: str = "plane"          # "plane" | "edge"
    edge_connective: str = "union"     # "union" | "intersection"
    open_semantics: str = "ek_dk"      # "ek_dk" | "repeated"

    def __post_init__(self):
        for name in ("short_growth", "middle_growth", "long_len",
                     "stipple_reach_erode", "stipple_reach_dilate"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {v!r}")
        if self.fan_variant not in FAN_VARIANTS:
            raise ValueError(f"fan_variant must be one of {FAN_VARIANTS}")
        if self.short_mask not in ("plane", "edge"):
            raise ValueError("short_mask must be 'plane' or 'edge'")
        if self.edge_connective not in ("union", "intersection"):
            raise ValueError("edge_connective must be 'union' or 'intersection'")
        if self.open_semantics not in ("ek_dk", "repeated"):
            raise ValueError("open_semantics must be 'ek_dk' or 'repeated'")


@dataclass(frozen=True)
class ExtractionResult:
    """Class-level line rasters merged over all 8 planes."""

    solid: BinaryImage
    stippled_segments: BinaryImage
    per_plane_stages: Optional[dict[str, DirectionalPlanes]] = field(default=None)


def edge(f_d: BinaryImage, d: int, cfg: PipelineConfig) -> BinaryImage:
    """Segment cores: plane pixels with perpendicular same-plane support."""
    a = neighbor(f_d, d - 2)
    b = neighbor(f_d, d + 2)
    perp = a | b if cfg.edge_connective == "union" else a & b
    return f_d & perp


def _grow_ends_masked_fan(f: BinaryImage, mask: BinaryImage, e: int, steps: int,
                          variant: str) -> BinaryImage:
    """Fan-grow the ends of f facing e, clipped to mask at every step."""
    out = end_points(f, e, variant)
    for _ in range(steps):
        out = masked_dilate(out, mask, fan(e))
    return out


def _rejoin(f: BinaryImage, grown_parts: list[BinaryImage], d: int, k: int,
            cfg: PipelineConfig) -> BinaryImage:
    """Common tail of the re-joining stages: erode the grown image k steps so
    only bridging growth survives, re-add f, and clean up with a self-masked
    perpendicular opening."""
    inner = f
    for g in grown_parts:
        inner = inner | g
    eroded = inner
    for _ in range(k):
        eroded = erode(eroded, orth_fan(d), cfg.fan_variant)
    pre = f | eroded
    return open_close(pre, orth_fan(d), 1, "self", "open", cfg.fan_variant, cfg.open_semantics)


def short(f_edge: BinaryImage, f_d: BinaryImage, d: int, cfg: PipelineConfig) -> BinaryImage:
    """Re-join edge segments broken by contour noise, within the plane."""
    mask = f_d if cfg.short_mask == "plane" else f_edge
    grown = [
        _grow_ends_masked_fan(f_edge, mask, e, cfg.short_growth, cfg.fan_variant)
        for e in (d - 2, d + 2)
    ]
    return _rejoin(f_edge, grown, d, cfg.short_growth, cfg)


def middle(f_short: BinaryImage, b: BinaryImage, d: int, cfg: PipelineConfig) -> BinaryImage:
    """Close interruptions from direction changes/crossings, within b."""
    f_short._check_dims(b)
    grown = []
    for e in (d - 2, d + 2):
        g = end_points(f_short, e, cfg.fan_variant)
        g = masked_dilate(g, b, fan(e))
        for _ in range(cfg.middle_growth - 1):
            g = masked_dilate(g, b, single(e))
        grown.append(g)
    return _rejoin(f_short, grown, d, cfg.middle_growth, cfg)


def long_solid(f_middle: BinaryImage, d: int, cfg: PipelineConfig) -> BinaryImage:
    """Length gate: only runs surviving a long_len self-masked opening."""
    return open_close(f_middle, orth_fan(d), cfg.long_len, "self", "open",
                      cfg.fan_variant, cfg.open_semantics)


def long_stippled(f_middle: BinaryImage, d: int, cfg: PipelineConfig) -> BinaryImage:
    """Length gate after free end expansion, connecting dashes within reach."""
    grown = []
    for e in (d - 2, d + 2):
        g = end_points(f_middle, e, cfg.fan_variant)
        g = dilate(g, fan(e))
        for _ in range(cfg.stipple_reach_dilate):
            g = dilate(g, single(e))
        grown.append(g)
    inner = f_middle
    for g in grown:
        inner = inner | g
    eroded = inner
    for _ in range(cfg.stipple_reach_erode):
        eroded = erode(eroded, orth_fan(d), cfg.fan_variant)
    pre = f_middle | eroded
    return open_close(pre, orth_fan(d), cfg.long_len, "self", "open",
                      cfg.fan_variant, cfg.open_semantics)


def extract(b: BinaryImage, cfg: PipelineConfig = PipelineConfig(),
            collect_stages: bool = False) -> ExtractionResult:
    """Run the full per-plane pipeline and merge class outputs over planes."""
    planes = decompose(b)
    per_d: dict[str, list[BinaryImage]] = {name: [] for name in STAGES}
    solid = BinaryImage.empty(b.width, b.height)
    stippled = BinaryImage.empty(b.width, b.height)
    for d in range(8):
        f_d = planes[d]
        with trace_stage(f"edge_d{d}"):
            f_e = edge(f_d, d, cfg)
        with trace_stage(f"short_d{d}"):
            f_s = short(f_e, f_d, d, cfg)
        with trace_stage(f"middle_d{d}"):
            f_m = middle(f_s, b, d, cfg)
        with trace_stage(f"longb_d{d}"):
            f_lb = long_solid(f_m, d, cfg)
        with trace_stage(f"longw_d{d}"):
            f_lw = long_stippled(f_m, d, cfg)
        solid = solid | f_lb
        stippled = stippled | f_lw
        if collect_stages:
            for name, img in zip(STAGES, (f_d, f_e, f_s, f_m, f_lb, f_lw)):
                per_d[name].append(img)
    stages = None
    if collect_stages:
        stages = {name: DirectionalPlanes(tuple(per_d[name])) for name in STAGES}
    return ExtractionResult(solid=solid, stippled_segments=stippled, per_plane_stages=stages)
