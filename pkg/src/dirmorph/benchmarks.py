"""Wall-time measurement helpers for the extraction engine.

The headline property being measured: because the engine works by whole-image
plane shifts, extraction time depends on image size only, not on how many
lines the image contains.  `line_count_sensitivity` quantifies that directly;
`compare_with_oracle` measures the packed engine against the per-pixel
reference path on the same scene.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

from . import oracle as orc
from .bitplane import BinaryImage
from .extraction import PipelineConfig, extract
from .scenes import random_line_scene

__all__ = ["TimingResult", "time_extract", "line_count_sensitivity", "compare_with_oracle"]


@dataclass(frozen=True)
class TimingResult:
    label: str
    runs: tuple[float, ...]

    @property
    def median(self) -> float:
        return statistics.median(self.runs)


def time_extract(b: BinaryImage, cfg: PipelineConfig, repeats: int = 5, label: str = "") -> TimingResult:
    """Median-of-repeats wall time for one extract; one warmup run discarded."""
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    extract(b, cfg)  # warmup
    runs = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        extract(b, cfg)
        runs.append(time.perf_counter() - t0)
    return TimingResult(label or f"{b.width}x{b.height}", tuple(runs))


def line_count_sensitivity(
    size: int = 1024,
    line_counts: tuple[int, ...] = (10, 200),
    repeats: int = 5,
    seed: int = 1,
    cfg: PipelineConfig = PipelineConfig(),
) -> list[TimingResult]:
    """Time extract on same-size scenes with different line counts."""
    results = []
    for n in line_counts:
        scene = random_line_scene(size, n, seed)
        results.append(time_extract(scene, cfg, repeats, label=f"{size}x{size}/{n} lines"))
    return results


def compare_with_oracle(
    size: int = 1024, n_lines: int = 40, repeats: int = 3, seed: int = 1,
    cfg: PipelineConfig = PipelineConfig(),
) -> tuple[TimingResult, float]:
    """(packed timing, oracle wall time) for one extract on the same scene.

    The oracle is run once; it is orders of magnitude slower and its time
    does not fluctuate enough to matter for the speedup ratio.
    """
    scene = random_line_scene(size, n_lines, seed)
    packed = time_extract(scene, cfg, repeats, label=f"packed {size}x{size}")
    ref = orc.RefImage(scene.width, scene.height, frozenset(scene.to_points()))
    t0 = time.perf_counter()
    orc.ref_extract(ref, cfg)
    oracle_time = time.perf_counter() - t0
    return packed, oracle_time
