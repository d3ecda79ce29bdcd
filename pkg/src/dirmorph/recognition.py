"""Map-legend line classifiers built on the extraction outputs.

Three classes on top of the solid/stippled primitives:

  stippled  the stippled-segment raster closed isotropically, bridging
            residual dash gaps.
  track     a double line (one solid, one stippled) whose route is the space
            between the two: close the union of both classes, take what the
            closing added (the inter-line corridor), and dilate it back out
            without leaving the closed region.
  path      stippled lines that are not part of a track: everything stippled
            outside a safety dilation of the track raster.

Class rasters may overlap; only the path/track separation is exclusive by
construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitplane import BinaryImage
from .extraction import ExtractionResult, PipelineConfig, extract
from .morphology import dilate, iterate, masked_dilate, n8, open_close

__all__ = ["RecognitionConfig", "RecognitionResult", "stippled_lines", "track_lines",
           "path_lines", "recognize"]


@dataclass(frozen=True)
class RecognitionConfig:
    """Iteration counts for the class-level closings and dilations."""

    stipple_close: int = 2
    track_close: int = 2
    track_dilate: int = 2
    path_guard_dilate: int = 3

    def __post_init__(self):
        for name in ("stipple_close", "track_close", "track_dilate", "path_guard_dilate"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {v!r}")


@dataclass(frozen=True)
class RecognitionResult:
    """Per-line-class output rasters."""

    solid: BinaryImage
    stippled: BinaryImage
    track: BinaryImage
    path: BinaryImage


def stippled_lines(f_longw: BinaryImage, cfg: RecognitionConfig = RecognitionConfig(),
                   semantics: str = "ek_dk") -> BinaryImage:
    """Bridge residual dash gaps with an isotropic closing."""
    return open_close(f_longw, n8(), cfg.stipple_close, None, "close", semantics=semantics)


def track_lines(f_longb: BinaryImage, f_stippled: BinaryImage,
                cfg: RecognitionConfig = RecognitionConfig(),
                semantics: str = "ek_dk") -> BinaryImage:
    """The inter-line corridor of solid+stippled double lines."""
    f_longb._check_dims(f_stippled)
    total = f_longb | f_stippled
    closed = open_close(total, n8(), cfg.track_close, None, "close", semantics=semantics)
    corridor = closed - total
    return iterate(lambda x: masked_dilate(x, closed, n8()), corridor, cfg.track_dilate)


def path_lines(f_stippled: BinaryImage, f_track: BinaryImage,
               cfg: RecognitionConfig = RecognitionConfig()) -> BinaryImage:
    """Stippled pixels outside the dilated track raster."""
    f_stippled._check_dims(f_track)
    guard = iterate(lambda x: dilate(x, n8()), f_track, cfg.path_guard_dilate)
    return f_stippled - guard


def recognize(b: BinaryImage, pcfg: PipelineConfig = PipelineConfig(),
              rcfg: RecognitionConfig = RecognitionConfig(),
              collect_stages: bool = False) -> RecognitionResult:
    """Extract then classify; returns all four class rasters.

    The stippled class is built from the stippled-gate raster minus the
    solid raster: every solid run also passes the stippled gate, and leaving
    it in would let the stippled closing fill a track's corridor before the
    track stage ever sees it.
    """
    ex: ExtractionResult = extract(b, pcfg, collect_stages=collect_stages)
    stip = stippled_lines(ex.stippled_segments - ex.solid, rcfg, pcfg.open_semantics)
    track = track_lines(ex.solid, stip, rcfg, pcfg.open_semantics)
    path = path_lines(stip, track, rcfg)
    return RecognitionResult(solid=ex.solid, stippled=stip, track=track, path=path)
