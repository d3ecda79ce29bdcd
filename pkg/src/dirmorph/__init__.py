"""dirmorph: bit-parallel directional morphology for raster line recognition.

Binary images are decomposed into 8 directional contour planes; iterated
non-isotropic erosion/dilation operators extract solid and stippled line
segments per plane; class-level combinators recognize stippled lines,
double-line tracks, and paths.  A slow per-pixel oracle mirrors every
operation for equivalence testing, and a scene generator provides synthetic
inputs with ground truth.
"""

from .bitplane import (
    OFFSETS,
    BinaryImage,
    DimensionMismatch,
    DirectionalPlanes,
    decompose,
    interior8,
    merge,
    neighbor,
    rotate90,
)
from .extraction import ExtractionResult, PipelineConfig, extract
from .morphology import (
    INTERSECTION_OF_SHIFTS,
    UNION_OF_SHIFTS,
    Selector,
    dilate,
    end_points,
    erode,
    fan,
    iterate,
    masked_dilate,
    masked_erode,
    n4,
    n8,
    open_close,
    orth_fan,
    orth_single,
    single,
)
from .recognition import RecognitionConfig, RecognitionResult, recognize
from .scenes import Blob, Noise, Scene, SceneSpec, SolidLine, StippleLine, Track, synth

__version__ = "0.1.0"
