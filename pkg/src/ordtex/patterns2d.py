"""Row-wise 2D ordinal patches, the block-symbolization alternative to
scanning: each dx x dy submatrix (with per-axis delays) is flattened
left-to-right, top-to-bottom into one window and symbolized like a 1D
window.  Used to compare the scan-based method against patch
symbolization on the same alphabet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from . import _kernels
from .hilbert import ScalarGrid, unfold
from .ordinal import OrdinalDistribution, _distribution_from_counts, build_distribution
from .quantifiers import InfoTriple, info_triple


@dataclass(frozen=True)
class PatchSpec:
    """Patch embedding dimensions (rows x cols) and per-axis delays."""

    dx: int
    dy: int
    tau_x: int = 1
    tau_y: int = 1

    def __post_init__(self):
        if self.dx < 1 or self.dy < 1:
            raise ValueError("patch dimensions must be >= 1")
        if not 2 <= self.dx * self.dy <= 8:
            raise ValueError("dx*dy must lie in [2, 8] to keep (dx*dy)! tractable")
        if self.tau_x < 1 or self.tau_y < 1:
            raise ValueError("delays must be >= 1")

    @property
    def order(self) -> int:
        return self.dx * self.dy


def build_distribution_2d(grid, spec: PatchSpec) -> OrdinalDistribution:
    """Ordinal distribution over all dx x dy patches of a matrix.

    Anchors advance in steps of 1 along both axes; the delays stretch the
    patch, not the anchor stride.  Patch count is
    (rows - (dx-1)*tau_x) * (cols - (dy-1)*tau_y).
    """
    v = grid.values if isinstance(grid, ScalarGrid) else np.asarray(grid, np.float64)
    if v.ndim != 2:
        raise ValueError("expected a 2D scalar matrix")
    if not np.isfinite(v).all():
        raise ValueError("matrix values must be finite")
    span_r = (spec.dx - 1) * spec.tau_x + 1
    span_c = (spec.dy - 1) * spec.tau_y + 1
    if span_r > v.shape[0] or span_c > v.shape[1]:
        raise ValueError("patch does not fit inside the matrix")
    windows = sliding_window_view(v, (span_r, span_c))[
        :, :, :: spec.tau_x, :: spec.tau_y
    ]
    flat = np.ascontiguousarray(windows.reshape(-1, spec.order))
    codes = _kernels.window_codes(flat)
    counts = np.bincount(codes, minlength=math.factorial(spec.order))
    return _distribution_from_counts(
        counts, spec.order, 1, delays=(spec.tau_x, spec.tau_y)
    )


def compare_methods(
    grid: ScalarGrid, order: int, spec: PatchSpec
) -> tuple[InfoTriple, InfoTriple]:
    """(scan-path triple, 2D-patch triple) for one grid on a shared alphabet.

    Requires dx*dy = order so both distributions live on the same number
    of patterns; otherwise entropies are not comparable.
    """
    if spec.order != order:
        raise ValueError("patch size dx*dy must equal the 1D embedding order")
    scan = build_distribution(unfold(grid), order, 1)
    patch = build_distribution_2d(grid, spec)
    return info_triple(scan), info_triple(patch)
