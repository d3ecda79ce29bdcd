"""Non-isotropic erosion/dilation operators over bit-packed images.

The operator set is small and fixed: isotropic 4/8-neighbor forms, a single
directional form, a three-direction "fan" wedge, and orthogonal pairs that
apply a form at d-2 and d+2 simultaneously.  Every operator includes the
input image itself, so dilation is extensive and erosion anti-extensive by
construction.

Erosion is Minkowski subtraction (intersection of shifted copies).  The fan
erosion additionally supports a permissive variant that intersects the image
with the *union* of the three shifts instead; that variant is the default
because it is the only one under which one-pixel-thick lines survive, at the
documented cost of breaking erosion/dilation duality.

All functions are pure.  An optional trace hook can observe intermediate
images for debugging and stage dumps.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Callable, Optional

from .bitplane import BinaryImage, neighbor

__all__ = [
    "UNION_OF_SHIFTS",
    "INTERSECTION_OF_SHIFTS",
    "FAN_VARIANTS",
    "Selector",
    "n4",
    "n8",
    "single",
    "fan",
    "orth_single",
    "orth_fan",
    "dilate",
    "erode",
    "iterate",
    "masked_dilate",
    "masked_erode",
    "open_close",
    "end_points",
    "trace_operators",
    "trace_stage",
]

# Fan erosion variants.  union_of_shifts keeps a pixel if any wedge neighbor
# supports it; intersection_of_shifts demands all three.
UNION_OF_SHIFTS = "union_of_shifts"
INTERSECTION_OF_SHIFTS = "intersection_of_shifts"
FAN_VARIANTS = (UNION_OF_SHIFTS, INTERSECTION_OF_SHIFTS)


@dataclass(frozen=True)
class Selector:
    """Neighborhood selector: which shifts an operator combines.

    kind is one of n4, n8, single, fan, orth_single, orth_fan; d is the
    direction code for the directional kinds (ignored by n4/n8).  The orth
    kinds expand to the pair of selectors at d-2 and d+2.
    """

    kind: str
    d: int = 0

    _KINDS = ("n4", "n8", "single", "fan", "orth_single", "orth_fan")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown selector kind {self.kind!r}")
        object.__setattr__(self, "d", self.d & 7)


def n4() -> Selector:
    return Selector("n4")


def n8() -> Selector:
    return Selector("n8")


def single(d: int) -> Selector:
    return Selector("single", d)


def fan(d: int) -> Selector:
    return Selector("fan", d)


def orth_single(d: int) -> Selector:
    return Selector("orth_single", d)


def orth_fan(d: int) -> Selector:
    return Selector("orth_fan", d)


# -- trace hook ---------------------------------------------------------------

TraceHook = Callable[[str, Optional[int], BinaryImage], None]

_trace_hook: ContextVar[Optional[TraceHook]] = ContextVar("dirmorph_trace", default=None)
_trace_stage: ContextVar[str] = ContextVar("dirmorph_trace_stage", default="")


@contextmanager
def trace_operators(hook: TraceHook):
    """Install a callback receiving (stage, direction, image) per primitive."""
    token = _trace_hook.set(hook)
    try:
        yield
    finally:
        _trace_hook.reset(token)


@contextmanager
def trace_stage(name: str):
    """Label the primitives applied inside this block."""
    token = _trace_stage.set(name)
    try:
        yield
    finally:
        _trace_stage.reset(token)


def _emit(s: Selector, img: BinaryImage) -> BinaryImage:
    hook = _trace_hook.get()
    if hook is not None:
        d = s.d if s.kind not in ("n4", "n8") else None
        hook(_trace_stage.get(), d, img)
    return img


# -- core operators -----------------------------------------------------------

def dilate(f: BinaryImage, s: Selector) -> BinaryImage:
    """Extensive dilation: f unioned with the selector's shifted copies."""
    if s.kind == "n4":
        out = f | neighbor(f, 0) | neighbor(f, 2) | neighbor(f, 4) | neighbor(f, 6)
    elif s.kind == "n8":
        out = f
        for d in range(8):
            out = out | neighbor(f, d)
    elif s.kind == "single":
        out = f | neighbor(f, s.d + 4)
    elif s.kind == "fan":
        out = f | neighbor(f, s.d + 3) | neighbor(f, s.d + 4) | neighbor(f, s.d + 5)
    elif s.kind == "orth_single":
        out = dilate(f, single(s.d - 2)) | dilate(f, single(s.d + 2))
    else:  # orth_fan
        out = dilate(f, fan(s.d - 2)) | dilate(f, fan(s.d + 2))
    return _emit(s, out)


def erode(f: BinaryImage, s: Selector, variant: str = UNION_OF_SHIFTS) -> BinaryImage:
    """Anti-extensive erosion; `variant` only affects the fan kinds."""
    if variant not in FAN_VARIANTS:
        raise ValueError(f"unknown fan erosion variant {variant!r}")
    if s.kind == "n4":
        out = f & neighbor(f, 0) & neighbor(f, 2) & neighbor(f, 4) & neighbor(f, 6)
    elif s.kind == "n8":
        out = f
        for d in range(8):
            out = out & neighbor(f, d)
    elif s.kind == "single":
        out = f & neighbor(f, s.d)
    elif s.kind == "fan":
        a = neighbor(f, s.d - 1)
        b = neighbor(f, s.d)
        c = neighbor(f, s.d + 1)
        out = f & (a | b | c) if variant == UNION_OF_SHIFTS else f & a & b & c
    elif s.kind == "orth_single":
        out = erode(f, single(s.d - 2), variant) & erode(f, single(s.d + 2), variant)
    else:  # orth_fan
        out = erode(f, fan(s.d - 2), variant) & erode(f, fan(s.d + 2), variant)
    return _emit(s, out)


def iterate(op: Callable[[BinaryImage], BinaryImage], f: BinaryImage, k: int) -> BinaryImage:
    """k-fold composition of a one-argument operator; k = 0 is identity."""
    if k < 0:
        raise ValueError(f"iteration count must be >= 0, got {k}")
    out = f
    for _ in range(k):
        out = op(out)
    return out


def masked_dilate(f: BinaryImage, g: BinaryImage, s: Selector) -> BinaryImage:
    """Dilation clipped to the mask g, preventing uncontrolled propagation."""
    return g & dilate(f, s)


def masked_erode(f: BinaryImage, g: BinaryImage, s: Selector, variant: str = UNION_OF_SHIFTS) -> BinaryImage:
    """Erosion of f backed by the mask g: erode(f | g)."""
    return erode(f | g, s, variant)


def open_close(
    f: BinaryImage,
    s: Selector,
    k: int,
    mask: BinaryImage | str | None = None,
    which: str = "open",
    variant: str = UNION_OF_SHIFTS,
    semantics: str = "ek_dk",
) -> BinaryImage:
    """Iterated opening/closing with an optional mask on the dilation phase.

    mask may be None, an image, or "self" (mask with this call's own input
    f, making an opening anti-extensive even under the permissive fan
    erosion).  The mask intersects the image after every dilation step.

    Under the default "ek_dk" semantics the exponent k means k erosions
    followed by k dilations (openings; the reverse for closings), which
    gives the length-gate opening its length-k meaning.  The "repeated"
    semantics composes the plain macro-operator k times instead.
    """
    if k < 1:
        raise ValueError(f"open/close iteration count must be >= 1, got {k}")
    if which not in ("open", "close"):
        raise ValueError(f"which must be 'open' or 'close', got {which!r}")
    mask_img = f if isinstance(mask, str) and mask == "self" else mask
    if mask_img is not None:
        f._check_dims(mask_img)

    def dil(x: BinaryImage) -> BinaryImage:
        x = dilate(x, s)
        if mask_img is not None:
            x = x & mask_img
        return x

    def ero(x: BinaryImage) -> BinaryImage:
        return erode(x, s, variant)

    if semantics == "ek_dk":
        first, second = (ero, dil) if which == "open" else (dil, ero)
        return iterate(second, iterate(first, f, k), k)
    if semantics == "repeated":
        step = (lambda x: dil(ero(x))) if which == "open" else (lambda x: ero(dil(x)))
        return iterate(step, f, k)
    raise ValueError(f"unknown open/close semantics {semantics!r}")


def end_points(f: BinaryImage, d: int, variant: str = UNION_OF_SHIFTS) -> BinaryImage:
    """Pixels deleted by the fan erosion toward d: the segment ends facing d."""
    return f - erode(f, fan(d), variant)
