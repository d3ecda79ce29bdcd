"""Raster ingestion/emission and the color-separation front end.

Binary rasters move as PBM (P1 ascii or P4 packed, 1 = black = ink) with
bit-exact round-trips; PNG is read-only, bilevel or gray thresholded at a
configurable level.  Color input (PPM P6 or RGB PNG) feeds the HSI
separation: each pixel is converted to hue/saturation/intensity and assigned
to the first matching color class, yielding one binary plane per class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .bitplane import BinaryImage

__all__ = [
    "ImageFormatError",
    "read_binary",
    "write_binary",
    "read_color",
    "rgb_to_hsi",
    "ColorClassSpec",
    "color_separate",
    "write_overlay",
]


class ImageFormatError(ValueError):
    """Malformed or unsupported image data."""


PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


# -- PNM header plumbing -------------------------------------------------------

def _read_pnm_tokens(data: bytes, count: int, offset: int) -> tuple[list[int], int]:
    """Read `count` whitespace-separated integer tokens, skipping # comments."""
    tokens: list[int] = []
    i = offset
    n = len(data)
    while len(tokens) < count:
        while i < n and data[i : i + 1].isspace():
            i += 1
        if i < n and data[i] == ord("#"):
            while i < n and data[i] != ord("\n"):
                i += 1
            continue
        start = i
        while i < n and not data[i : i + 1].isspace():
            i += 1
        if start == i:
            raise ImageFormatError("truncated PNM header")
        try:
            tokens.append(int(data[start:i]))
        except ValueError:
            raise ImageFormatError(f"bad PNM header token {data[start:i]!r}") from None
    return tokens, i


def _parse_pbm(data: bytes) -> BinaryImage:
    magic = data[:2]
    (w, h), i = _read_pnm_tokens(data, 2, 2)
    if w < 1 or h < 1:
        raise ImageFormatError(f"bad PBM dimensions {w}x{h}")
    if magic == b"P1":
        bits: list[int] = []
        j = i
        while j < len(data):
            c = data[j : j + 1]
            if c == b"#":
                while j < len(data) and data[j] != ord("\n"):
                    j += 1
            elif c in (b"0", b"1"):
                bits.append(data[j] - ord("0"))
            elif not c.isspace():
                raise ImageFormatError(f"unexpected P1 data byte {c!r}")
            j += 1
        if len(bits) < w * h:
            raise ImageFormatError(f"P1 data too short: {len(bits)} of {w * h} pixels")
        arr = np.array(bits[: w * h], dtype=np.uint8).reshape(h, w)
        return BinaryImage.from_array(arr)
    if magic == b"P4":
        i += 1  # single whitespace after header
        row_bytes = (w + 7) // 8
        need = row_bytes * h
        raster = data[i : i + need]
        if len(raster) < need:
            raise ImageFormatError(f"P4 data too short: {len(raster)} of {need} bytes")
        rows = np.frombuffer(raster, dtype=np.uint8).reshape(h, row_bytes)
        arr = np.unpackbits(rows, axis=1, bitorder="big")[:, :w]
        return BinaryImage.from_array(arr)
    raise ImageFormatError(f"not a PBM file (magic {magic!r})")


def _parse_png_binary(path: Path, threshold: int) -> BinaryImage:
    from PIL import Image

    with Image.open(path) as im:
        if im.mode not in ("1", "L", "I;16", "I"):
            raise ImageFormatError(
                f"unsupported PNG mode {im.mode!r} for binary input (use read_color for RGB)"
            )
        gray = np.asarray(im.convert("L"))
    # ink is dark: below the threshold level
    return BinaryImage.from_array(gray < threshold)


def read_binary(path: str | Path, threshold: int = 128) -> BinaryImage:
    """Read a binary raster; 1 = ink.

    PBM P1/P4 are read exactly; PNG (bilevel or grayscale) is thresholded,
    pixels strictly below `threshold` becoming ink.
    """
    path = Path(path)
    data = path.read_bytes()
    if data[:2] in (b"P1", b"P4"):
        return _parse_pbm(data)
    if data[: len(PNG_MAGIC)] == PNG_MAGIC:
        return _parse_png_binary(path, threshold)
    raise ImageFormatError(f"{path.name}: unrecognized binary image format")


def write_binary(img: BinaryImage, path: str | Path, format: str = "P4") -> None:
    """Write a PBM file; P4 rows are padded to byte boundaries per the format."""
    path = Path(path)
    arr = img.to_array()
    if format == "P1":
        lines = [b"P1", f"{img.width} {img.height}".encode()]
        lines += ["".join(str(v) for v in row).encode() for row in arr]
        path.write_bytes(b"\n".join(lines) + b"\n")
    elif format == "P4":
        packed = np.packbits(arr, axis=1, bitorder="big")
        header = f"P4\n{img.width} {img.height}\n".encode()
        path.write_bytes(header + packed.tobytes())
    else:
        raise ImageFormatError(f"unsupported PBM output format {format!r}")


# -- color input ---------------------------------------------------------------

def read_color(path: str | Path) -> np.ndarray:
    """Read a color raster (PPM P6 or RGB PNG) as (height, width, 3) uint8."""
    path = Path(path)
    data = path.read_bytes()
    if data[:2] == b"P6":
        (w, h, maxval), i = _read_pnm_tokens(data, 3, 2)
        if maxval != 255:
            raise ImageFormatError(f"unsupported P6 maxval {maxval} (expected 255)")
        i += 1
        need = w * h * 3
        raster = data[i : i + need]
        if len(raster) < need:
            raise ImageFormatError(f"P6 data too short: {len(raster)} of {need} bytes")
        return np.frombuffer(raster, dtype=np.uint8).reshape(h, w, 3).copy()
    if data[: len(PNG_MAGIC)] == PNG_MAGIC:
        from PIL import Image

        with Image.open(path) as im:
            return np.asarray(im.convert("RGB")).copy()
    raise ImageFormatError(f"{path.name}: unrecognized color image format")


def write_ppm(rgb: np.ndarray, path: str | Path) -> None:
    """Write (height, width, 3) uint8 as PPM P6."""
    h, w, _ = rgb.shape
    Path(path).write_bytes(f"P6\n{w} {h}\n255\n".encode() + rgb.astype(np.uint8).tobytes())


def rgb_to_hsi(rgb: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-pixel HSI: hue in degrees [0, 360), saturation and intensity in [0, 1].

    Intensity is the channel mean; saturation 1 - min/mean; hue from the
    arccos form, undefined (NaN) for achromatic pixels.
    """
    r = rgb[..., 0].astype(np.float64)
    g = rgb[..., 1].astype(np.float64)
    b = rgb[..., 2].astype(np.float64)
    total = r + g + b
    i = total / (3.0 * 255.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(total > 0, 1.0 - 3.0 * np.minimum(np.minimum(r, g), b) / total, 0.0)
        num = 0.5 * ((r - g) + (r - b))
        den = np.sqrt((r - g) ** 2 + (r - b) * (g - b))
        cosang = np.clip(np.where(den > 0, num / den, np.nan), -1.0, 1.0)
        h = np.degrees(np.arccos(cosang))
        h = np.where(b > g, 360.0 - h, h) % 360.0
    return h, s, i


@dataclass(frozen=True)
class ColorClassSpec:
    """One color class of the separation; hue is optional.

    hue_range is [low, high) in degrees with wraparound allowed (e.g. a red
    class may use (350, 20)); intensity_range is inclusive.  Pixels with
    undefined hue only match classes without a hue constraint.
    """

    name: str
    hue_range: Optional[tuple[float, float]] = None
    saturation_min: float = 0.0
    intensity_range: tuple[float, float] = (0.0, 1.0)


def color_separate(rgb: np.ndarray, classes: list[ColorClassSpec]) -> dict[str, BinaryImage]:
    """Assign each pixel to the first matching class; one plane per class."""
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise ImageFormatError("expected an (h, w, 3) RGB array")
    if rgb.shape[0] < 1 or rgb.shape[1] < 1:
        raise ImageFormatError("zero-area image")
    if not classes:
        raise ValueError("at least one color class required")
    h, s, i = rgb_to_hsi(rgb)
    unassigned = np.ones(rgb.shape[:2], dtype=bool)
    out: dict[str, BinaryImage] = {}
    for spec in classes:
        lo, hi = spec.intensity_range
        match = (i >= lo) & (i <= hi) & (s >= spec.saturation_min)
        if spec.hue_range is not None:
            hlo, hhi = spec.hue_range[0] % 360.0, spec.hue_range[1] % 360.0
            defined = ~np.isnan(h)
            if hlo <= hhi:
                in_hue = defined & (h >= hlo) & (h < hhi)
            else:
                in_hue = defined & ((h >= hlo) | (h < hhi))
            match &= in_hue
        match &= unassigned
        unassigned &= ~match
        out[spec.name] = BinaryImage.from_array(match)
    return out


# -- human-inspection overlay ---------------------------------------------------

OVERLAY_COLORS = {
    "solid": (0, 0, 0),
    "stippled": (60, 120, 255),
    "path": (0, 160, 60),
    "track": (230, 80, 30),
}


def write_overlay(rasters: dict[str, BinaryImage], path: str | Path) -> None:
    """Composite the class rasters into one color image, later keys on top."""
    first = next(iter(rasters.values()))
    rgb = np.full((first.height, first.width, 3), 255, dtype=np.uint8)
    for name, img in rasters.items():
        color = OVERLAY_COLORS.get(name, (128, 128, 128))
        rgb[img.to_array().astype(bool)] = color
    write_ppm(rgb, path)
