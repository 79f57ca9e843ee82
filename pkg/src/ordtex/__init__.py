"""Ordinal texture analysis along Hilbert scan paths.

Images become one-dimensional sequences by walking a Hilbert curve over
a power-of-two square grid, preserving spatial locality.  Sliding
windows of the sequence are symbolized into ordinal patterns, and the
pattern distribution is summarized by normalized permutation entropy,
Jensen-Shannon statistical complexity, and the discrete Fisher
information measure, positioning each texture on the
complexity-entropy and Fisher-entropy causality planes.

Hot kernels run from a compiled extension when available; set the
environment variable ORDTEX_NO_EXT=1 before import to force the pure
NumPy fallback (``ordtex.backend()`` reports the active one).
"""

from . import _kernels
from .hilbert import HilbertMap, ScalarGrid, unfold
from .imageio import (
    CropResult,
    ImageFormatError,
    ImageRecord,
    center_crop_pow2,
    load_image,
    rotate_arbitrary,
    save_grid_pgm,
    to_scalar,
    transform,
)
from .ordinal import (
    OrdinalDistribution,
    UndersampledWarning,
    build_distribution,
    extract_pattern,
    lehmer_rank,
)
from .patterns2d import PatchSpec, build_distribution_2d, compare_methods
from .quantifiers import (
    ComplexityBounds,
    InfoTriple,
    cecp_bounds,
    complexity_js,
    entropy_normalized,
    fisher_discrete,
    info_triple,
    js_divergence_max,
    js_divergence_to_uniform,
    shannon,
)
from .synth import (
    DEFAULT_WEIGHTS,
    CascadeSpec,
    FbsSpec,
    brownian_surface,
    cascade,
    ordered_variant,
    randomized_variant,
)

__version__ = "0.1.0"


def backend() -> str:
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return _kernels.BACKEND


__all__ = [
    "HilbertMap", "ScalarGrid", "unfold",
    "OrdinalDistribution", "UndersampledWarning",
    "build_distribution", "extract_pattern", "lehmer_rank",
    "InfoTriple", "ComplexityBounds", "shannon", "entropy_normalized",
    "js_divergence_to_uniform", "js_divergence_max", "complexity_js",
    "fisher_discrete", "info_triple", "cecp_bounds",
    "CascadeSpec", "FbsSpec", "DEFAULT_WEIGHTS",
    "cascade", "ordered_variant", "randomized_variant", "brownian_surface",
    "ImageRecord", "ImageFormatError", "CropResult",
    "load_image", "to_scalar", "center_crop_pow2", "transform",
    "rotate_arbitrary", "save_grid_pgm",
    "PatchSpec", "build_distribution_2d", "compare_methods",
    "backend",
]
