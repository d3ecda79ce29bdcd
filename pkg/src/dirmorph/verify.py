"""Packed-vs-oracle equivalence sweeps.

Two sweeps back the correctness story: an exhaustive one over every binary
image up to a small size for each primitive operator, and a randomized one
running the full extraction/recognition pipelines on random images and
synthetic scenes.  Both compare the packed engine against the coordinate-set
oracle pixel for pixel and report mismatch counts per operation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import oracle as orc
from .bitplane import BinaryImage, decompose, interior8, merge, neighbor
from .extraction import PipelineConfig, extract
from .morphology import FAN_VARIANTS, Selector, end_points, erode, dilate, masked_dilate, masked_erode
from .recognition import RecognitionConfig, path_lines, stippled_lines, track_lines
from .scenes import random_line_scene

__all__ = ["SweepReport", "exhaustive_primitive_sweep", "randomized_pipeline_sweep"]


@dataclass
class SweepReport:
    checks: int = 0
    mismatches: dict[str, int] = field(default_factory=dict)

    @property
    def total_mismatches(self) -> int:
        return sum(self.mismatches.values())

    @property
    def ok(self) -> bool:
        return self.total_mismatches == 0

    def record(self, op: str, packed: BinaryImage, ref: orc.RefImage) -> None:
        self.checks += 1
        if packed.to_points() != set(ref.pixels):
            self.mismatches[op] = self.mismatches.get(op, 0) + 1

    def summary(self) -> str:
        if self.ok:
            return f"{self.checks} checks, 0 mismatches"
        per_op = ", ".join(f"{op}: {n}" for op, n in sorted(self.mismatches.items()))
        return f"{self.checks} checks, {self.total_mismatches} mismatches ({per_op})"


def _to_ref(img: BinaryImage) -> orc.RefImage:
    return orc.RefImage(img.width, img.height, frozenset(img.to_points()))


def _mask_images(f: BinaryImage) -> list[BinaryImage]:
    """Deterministic mask set for exercising the masked operator forms."""
    w, h = f.width, f.height
    stripes = BinaryImage.from_points(w, h, [(x, y) for y in range(h) for x in range(w) if x % 2 == 0])
    return [BinaryImage.empty(w, h), BinaryImage.full(w, h), stripes, f.complement()]


def exhaustive_primitive_sweep(max_size: int = 3) -> SweepReport:
    """Compare every primitive on all binary images with w, h <= max_size."""
    report = SweepReport()
    sizes = [(w, h) for w in range(1, max_size + 1) for h in range(1, max_size + 1)]
    directional = [Selector(k, d) for k in ("single", "fan", "orth_single", "orth_fan") for d in range(8)]
    isotropic = [Selector("n4"), Selector("n8")]
    for (w, h) in sizes:
        for bits in range(1 << (w * h)):
            f = BinaryImage(w, h, bits)
            rf = _to_ref(f)
            for d in range(8):
                report.record("neighbor", neighbor(f, d), orc.ref_neighbor(rf, d))
            planes = decompose(f)
            ref_planes = orc.ref_decompose(rf)
            for d in range(8):
                report.record("decompose", planes[d], ref_planes[d])
            report.record("merge", merge(planes), orc.ref_merge(ref_planes))
            report.record("interior8", interior8(f), orc.ref_interior8(rf))
            for s in isotropic + directional:
                report.record(f"dilate_{s.kind}", dilate(f, s), orc.ref_dilate(rf, s.kind, s.d))
                for v in FAN_VARIANTS:
                    report.record(
                        f"erode_{s.kind}", erode(f, s, v), orc.ref_erode(rf, s.kind, s.d, v)
                    )
            for d in range(8):
                for v in FAN_VARIANTS:
                    report.record("end_points", end_points(f, d, v), orc.ref_end_points(rf, d, v))
            for g in _mask_images(f):
                rg = _to_ref(g)
                for s in (Selector("n8"), Selector("fan", 0), Selector("fan", 3)):
                    report.record(
                        f"masked_dilate_{s.kind}",
                        masked_dilate(f, g, s),
                        orc.ref_masked_dilate(rf, rg, s.kind, s.d),
                    )
                    for v in FAN_VARIANTS:
                        report.record(
                            f"masked_erode_{s.kind}",
                            masked_erode(f, g, s, v),
                            orc.ref_masked_erode(rf, rg, s.kind, s.d, v),
                        )
    return report


def _random_image(rng: random.Random, w: int, h: int) -> BinaryImage:
    density = rng.choice([0.05, 0.15, 0.3, 0.5])
    bits = 0
    for i in range(w * h):
        if rng.random() < density:
            bits |= 1 << i
    return BinaryImage(w, h, bits)


def randomized_pipeline_sweep(
    n_images: int = 200,
    n_scenes: int = 50,
    size: int = 64,
    seed: int = 20260810,
    pcfg: PipelineConfig = PipelineConfig(),
    rcfg: RecognitionConfig = RecognitionConfig(),
) -> SweepReport:
    """Full extract + recognize equivalence on random images and scenes."""
    report = SweepReport()
    rng = random.Random(seed)
    inputs = [_random_image(rng, size, size) for _ in range(n_images)]
    inputs += [random_line_scene(size, rng.randrange(2, 8), rng.randrange(10_000)) for _ in range(n_scenes)]
    for b in inputs:
        # Build the recognition stages from one extract per side, checking
        # each pipeline output as it is produced.
        ex = extract(b, pcfg)
        ref_solid, ref_longw = orc.ref_extract(_to_ref(b), pcfg)
        report.record("extract_solid", ex.solid, ref_solid)
        report.record("extract_stippled", ex.stippled_segments, ref_longw)
        stip = stippled_lines(ex.stippled_segments - ex.solid, rcfg, pcfg.open_semantics)
        ref_stip = orc.ref_stippled_lines(ref_longw - ref_solid, rcfg, pcfg.open_semantics)
        report.record("recognize_stippled", stip, ref_stip)
        track = track_lines(ex.solid, stip, rcfg, pcfg.open_semantics)
        ref_track = orc.ref_track_lines(ref_solid, ref_stip, rcfg, pcfg.open_semantics)
        report.record("recognize_track", track, ref_track)
        report.record(
            "recognize_path",
            path_lines(stip, track, rcfg),
            orc.ref_path_lines(ref_stip, ref_track, rcfg),
        )
    return report
