"""Command-line front end.

Subcommands:

    decompose   split a binary raster into its 8 directional plane files
    extract     solid/stippled line rasters, optionally with stage dumps
    recognize   all four class rasters plus a color overlay
    synth       rasterize a scene config into an image and ground truths
    check       packed-vs-oracle equivalence sweeps
    bench       wall-time table over scene sizes and line counts

Every run writes a manifest.json into the output directory recording the
command, the full config snapshot, input digests, output paths, and timings;
identical inputs, config, and seed reproduce identical outputs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from .bitplane import BinaryImage, decompose
from .benchmarks import compare_with_oracle, line_count_sensitivity
from .configfile import ConfigError, RunConfig, config_snapshot, load_config
from .extraction import STAGES, extract
from .imageio import ImageFormatError, color_separate, read_binary, read_color, write_binary, write_overlay
from .recognition import path_lines, stippled_lines, track_lines
from .scenes import synth
from .verify import exhaustive_primitive_sweep, randomized_pipeline_sweep


@dataclass
class RunManifest:
    command: str
    config: dict
    inputs: dict[str, str] = field(default_factory=dict)   # path -> sha256
    outputs: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    seed: int | None = None

    def write(self, out_dir: Path) -> None:
        path = out_dir / "manifest.json"
        path.write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n")


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _load_run_config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    if getattr(args, "fan_variant", None):
        cfg.pipeline = replace(cfg.pipeline, fan_variant=args.fan_variant)
    return cfg


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _read_input(args, cfg: RunConfig) -> BinaryImage:
    """Binary input, or one color-separated plane when --color-class is given."""
    path = Path(args.input)
    if getattr(args, "color_class", None):
        if not cfg.color_classes:
            raise ConfigError("--color-class requires [color ...] sections in the config file")
        planes = color_separate(read_color(path), cfg.color_classes)
        if args.color_class not in planes:
            raise ConfigError(f"no color class named {args.color_class!r} in config")
        return planes[args.color_class]
    return read_binary(path)


def _write(img: BinaryImage, out: Path, name: str, manifest: RunManifest) -> None:
    path = out / name
    write_binary(img, path)
    manifest.outputs.append(str(path))


# -- subcommands ---------------------------------------------------------------

def _cmd_decompose(args) -> int:
    cfg = _load_run_config(args)
    out = _out_dir(args)
    manifest = RunManifest("decompose", config_snapshot(cfg))
    manifest.inputs[args.input] = _digest(Path(args.input))
    b = _read_input(args, cfg)
    t0 = time.perf_counter()
    planes = decompose(b)
    manifest.timings["decompose_s"] = time.perf_counter() - t0
    for d in range(8):
        _write(planes[d], out, f"plane_d{d}.pbm", manifest)
    manifest.write(out)
    return 0


def _cmd_extract(args) -> int:
    cfg = _load_run_config(args)
    out = _out_dir(args)
    manifest = RunManifest("extract", config_snapshot(cfg))
    manifest.inputs[args.input] = _digest(Path(args.input))
    b = _read_input(args, cfg)
    t0 = time.perf_counter()
    result = extract(b, cfg.pipeline, collect_stages=args.dump_stages)
    manifest.timings["extract_s"] = time.perf_counter() - t0
    _write(result.solid, out, "solid.pbm", manifest)
    _write(result.stippled_segments, out, "stippled_segments.pbm", manifest)
    if args.dump_stages:
        for stage in STAGES:
            planes = result.per_plane_stages[stage]
            for d in range(8):
                _write(planes[d], out, f"{stage}_d{d}.pbm", manifest)
    manifest.write(out)
    return 0


def _cmd_recognize(args) -> int:
    cfg = _load_run_config(args)
    out = _out_dir(args)
    manifest = RunManifest("recognize", config_snapshot(cfg))
    manifest.inputs[args.input] = _digest(Path(args.input))
    b = _read_input(args, cfg)
    t0 = time.perf_counter()
    result = extract(b, cfg.pipeline, collect_stages=args.dump_stages)
    stip = stippled_lines(result.stippled_segments - result.solid,
                          cfg.recognition, cfg.pipeline.open_semantics)
    track = track_lines(result.solid, stip, cfg.recognition, cfg.pipeline.open_semantics)
    path = path_lines(stip, track, cfg.recognition)
    manifest.timings["recognize_s"] = time.perf_counter() - t0
    for name, img in (("solid", result.solid), ("stippled", stip), ("track", track), ("path", path)):
        _write(img, out, f"{name}.pbm", manifest)
    overlay = out / "overlay.ppm"
    write_overlay({"stippled": stip, "solid": result.solid, "path": path, "track": track}, overlay)
    manifest.outputs.append(str(overlay))
    if args.dump_stages:
        for stage in STAGES:
            planes = result.per_plane_stages[stage]
            for d in range(8):
                _write(planes[d], out, f"{stage}_d{d}.pbm", manifest)
    manifest.write(out)
    return 0


def _cmd_synth(args) -> int:
    cfg = _load_run_config(args)
    if cfg.scene is None:
        raise ConfigError("synth needs a [scene] section in the config file")
    out = _out_dir(args)
    manifest = RunManifest("synth", config_snapshot(cfg), seed=args.seed)
    scene = synth(cfg.scene)
    _write(scene.image, out, "scene.pbm", manifest)
    for name, img in scene.truth.items():
        _write(img, out, f"truth_{name}.pbm", manifest)
    manifest.write(out)
    return 0


def _cmd_check(args) -> int:
    cfg = _load_run_config(args)
    status = 0
    t0 = time.perf_counter()
    report = exhaustive_primitive_sweep(args.max_size)
    print(f"exhaustive primitives (w,h <= {args.max_size}): {report.summary()} "
          f"[{time.perf_counter() - t0:.1f}s]")
    if not report.ok:
        status = 1
    if args.random:
        t0 = time.perf_counter()
        rnd = randomized_pipeline_sweep(
            n_images=args.random, n_scenes=max(1, args.random // 4),
            size=args.size, seed=args.seed or 0,
            pcfg=cfg.pipeline, rcfg=cfg.recognition,
        )
        print(f"randomized pipelines ({args.random} images + {max(1, args.random // 4)} scenes "
              f"at {args.size}x{args.size}): {rnd.summary()} [{time.perf_counter() - t0:.1f}s]")
        if not rnd.ok:
            status = 1
    return status


def _cmd_bench(args) -> int:
    cfg = _load_run_config(args)
    line_counts = tuple(int(x) for x in args.lines.split(","))
    for size in (int(x) for x in args.sizes.split(",")):
        results = line_count_sensitivity(
            size=size, line_counts=line_counts, repeats=args.repeat,
            seed=args.seed or 1, cfg=cfg.pipeline,
        )
        for r in results:
            print(f"{r.label:>24}: median {r.median * 1e3:8.1f} ms  (runs: "
                  + ", ".join(f"{t * 1e3:.1f}" for t in r.runs) + ")")
        base = results[0].median
        for r in results[1:]:
            print(f"{'ratio vs ' + results[0].label:>24}: {r.median / base:.3f}")
    if args.oracle:
        packed, oracle_s = compare_with_oracle(
            size=int(args.sizes.split(",")[0]), repeats=args.repeat,
            seed=args.seed or 1, cfg=cfg.pipeline,
        )
        print(f"{packed.label:>24}: median {packed.median * 1e3:8.1f} ms")
        print(f"{'oracle same scene':>24}: {oracle_s * 1e3:8.1f} ms "
              f"(speedup {oracle_s / packed.median:.1f}x)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirmorph",
        description="Directional-morphology line extraction and classification for binary rasters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("input", help="input raster (PBM/PNG; PPM/PNG-RGB with --color-class)")
            p.add_argument("--color-class", default=None,
                           help="separate color input and use this class's plane")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--config", default=None, help="key = value config file")
        p.add_argument("--fan-variant", choices=("union_of_shifts", "intersection_of_shifts"),
                       default=None, help="override the fan erosion variant")

    p = sub.add_parser("decompose", help="write the 8 directional plane files")
    common(p)
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("extract", help="extract solid/stippled line rasters")
    common(p)
    p.add_argument("--dump-stages", action="store_true", help="write per-stage plane files")
    p.set_defaults(fn=_cmd_extract)

    p = sub.add_parser("recognize", help="classify solid/stippled/track/path lines")
    common(p)
    p.add_argument("--dump-stages", action="store_true", help="write per-stage plane files")
    p.set_defaults(fn=_cmd_recognize)

    p = sub.add_parser("synth", help="rasterize a [scene] config with ground truth")
    common(p, needs_input=False)
    p.add_argument("--seed", type=int, default=None, help="recorded in the manifest")
    p.set_defaults(fn=_cmd_synth)

    p = sub.add_parser("check", help="oracle-equivalence sweep report")
    p.add_argument("--max-size", type=int, default=3, help="exhaustive sweep bound")
    p.add_argument("--random", type=int, default=0, help="also run N random pipeline checks")
    p.add_argument("--size", type=int, default=64, help="random check image size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", default=None)
    p.add_argument("--fan-variant", choices=("union_of_shifts", "intersection_of_shifts"), default=None)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("bench", help="timing table over scene sizes and line counts")
    p.add_argument("--sizes", default="1024", help="comma-separated scene sizes")
    p.add_argument("--lines", default="10,200", help="comma-separated line counts")
    p.add_argument("--repeat", type=int, default=5, help="timed runs per cell (median reported)")
    p.add_argument("--oracle", action="store_true", help="also time the oracle path once")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--config", default=None)
    p.add_argument("--fan-variant", choices=("union_of_shifts", "intersection_of_shifts"), default=None)
    p.set_defaults(fn=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, ImageFormatError, OSError, ValueError) as exc:
        print(f"dirmorph {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
