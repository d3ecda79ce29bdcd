"""Line-oriented run configuration files.

Format: `key = value` entries with `#` comments.  Top-level keys mirror the
pipeline and recognition config fields.  Two kinds of sections may follow:

    [scene]                      one per file; repeated element keys build
    size = 256 256               the element list in order
    solid_line = 20 60 235 60 1
    stipple_line = 30 200 200 120 6 3 1
    track = 20 60 235 60 3 6 3
    blob = 120 40 3 3
    noise = 0.001 42

    [color black]                one per class; listing order is the
    intensity = 0.0 0.25         match priority
    saturation_min = 0.0
    hue = 200 250                omit for achromatic classes

Scene element arguments: solid_line x0 y0 x1 y1 [thickness];
stipple_line x0 y0 x1 y1 dash gap [thickness]; track x0 y0 x1 y1 separation
dash gap; blob cx cy w h; noise density seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional

from .extraction import PipelineConfig
from .imageio import ColorClassSpec
from .recognition import RecognitionConfig
from .scenes import Blob, Noise, SceneSpec, SolidLine, StippleLine, Track


class ConfigError(ValueError):
    """Unparseable or unknown configuration content."""


@dataclass
class RunConfig:
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    recognition: RecognitionConfig = field(default_factory=RecognitionConfig)
    scene: Optional[SceneSpec] = None
    color_classes: list[ColorClassSpec] = field(default_factory=list)


_PIPELINE_FIELDS = {f.name: f.type for f in fields(PipelineConfig)}
_RECOGNITION_FIELDS = {f.name: f.type for f in fields(RecognitionConfig)}


def _parse_lines(text: str):
    """Yield (lineno, section, key, value) with comments stripped."""
    section = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            yield lineno, section, None, None
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        yield lineno, section, key.strip(), value.strip()


_ELEMENT_ARITY = {
    "solid_line": (4, 5),
    "stipple_line": (6, 7),
    "track": (7, 7),
    "blob": (4, 4),
    "noise": (2, 2),
}


def _scene_element(lineno: int, key: str, args: list[str]):
    if key not in _ELEMENT_ARITY:
        raise ConfigError(f"line {lineno}: unknown scene element {key!r}")
    lo, hi = _ELEMENT_ARITY[key]
    if not (lo <= len(args) <= hi):
        raise ConfigError(f"line {lineno}: {key} takes {lo}..{hi} arguments, got {len(args)}")
    try:
        if key == "noise":
            return Noise(float(args[0]), int(args[1]))
        v = [int(a) for a in args]
        if key == "solid_line":
            return SolidLine((v[0], v[1]), (v[2], v[3]), v[4] if len(v) > 4 else 1)
        if key == "stipple_line":
            return StippleLine((v[0], v[1]), (v[2], v[3]), v[4], v[5], v[6] if len(v) > 6 else 1)
        if key == "track":
            return Track((v[0], v[1]), (v[2], v[3]), v[4], v[5], v[6])
        return Blob((v[0], v[1]), v[2], v[3])
    except ValueError as exc:
        raise ConfigError(f"line {lineno}: bad {key} arguments: {exc}") from None


def parse_config(text: str) -> RunConfig:
    cfg = RunConfig()
    scene_size: Optional[tuple[int, int]] = None
    scene_elements: list = []
    saw_scene = False
    color_pending: Optional[dict] = None

    def flush_color():
        nonlocal color_pending
        if color_pending is not None:
            cfg.color_classes.append(ColorClassSpec(**color_pending))
            color_pending = None

    for lineno, section, key, value in _parse_lines(text):
        if key is None:  # section header
            flush_color()
            if section == "scene":
                saw_scene = True
            elif section.startswith("color "):
                color_pending = {"name": section.split(None, 1)[1]}
            else:
                raise ConfigError(f"line {lineno}: unknown section [{section}]")
            continue
        if section == "":
            if key in _PIPELINE_FIELDS:
                conv = int if _PIPELINE_FIELDS[key] in ("int", int) else str
                try:
                    cfg.pipeline = replace(cfg.pipeline, **{key: conv(value)})
                except ValueError as exc:
                    raise ConfigError(f"line {lineno}: {exc}") from None
            elif key in _RECOGNITION_FIELDS:
                try:
                    cfg.recognition = replace(cfg.recognition, **{key: int(value)})
                except ValueError as exc:
                    raise ConfigError(f"line {lineno}: {exc}") from None
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        elif section == "scene":
            args = value.split()
            if key == "size":
                if len(args) != 2:
                    raise ConfigError(f"line {lineno}: size takes 2 arguments")
                scene_size = (int(args[0]), int(args[1]))
            else:
                scene_elements.append(_scene_element(lineno, key, args))
        elif section.startswith("color "):
            args = value.split()
            if key == "hue":
                color_pending["hue_range"] = (float(args[0]), float(args[1]))
            elif key == "saturation_min":
                color_pending["saturation_min"] = float(value)
            elif key == "intensity":
                color_pending["intensity_range"] = (float(args[0]), float(args[1]))
            else:
                raise ConfigError(f"line {lineno}: unknown color key {key!r}")
    flush_color()

    if saw_scene:
        if scene_size is None:
            raise ConfigError("[scene] section needs a size entry")
        cfg.scene = SceneSpec(scene_size, tuple(scene_elements))
    return cfg


def load_config(path: str | Path) -> RunConfig:
    return parse_config(Path(path).read_text())


def config_snapshot(cfg: RunConfig) -> dict:
    """Flat mapping of every output-affecting config value, for manifests."""
    snap = {}
    for f in fields(PipelineConfig):
        snap[f.name] = getattr(cfg.pipeline, f.name)
    for f in fields(RecognitionConfig):
        snap[f.name] = getattr(cfg.recognition, f.name)
    return snap
