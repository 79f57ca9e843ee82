"""Synthetic test surfaces: multiplicative cascades and fractional Brownian fields.

The cascade splits each cell into four children and multiplies the parent
mass by a fixed weight per quadrant, so the steps-k grid is the k-fold
Kronecker power of the 2x2 weight block.  The ordered and randomized
variants keep the value multiset of a grid but destroy (or regularize)
its spatial arrangement.  Brownian surfaces come from circulant
embedding: a stationary field sampled by FFT plus a random linear ramp,
whose increments follow the fractional variance law exactly, normalized
so the ensemble variance of unit-lag increments is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .hilbert import ScalarGrid

# slightly asymmetric quadrant weights; the default for generated cascades
DEFAULT_WEIGHTS = (0.2434, 0.2522, 0.2566, 0.2478)


@dataclass(frozen=True)
class CascadeSpec:
    """Quadrant weights and recursion depth for a planar cascade."""

    probs: tuple[float, float, float, float]
    steps: int

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        if len(probs) != 4:
            raise ValueError("planar cascade needs exactly 4 quadrant weights")
        if any(p <= 0.0 for p in probs):
            raise ValueError("all weights must be positive")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")


@dataclass(frozen=True)
class FbsSpec:
    """Hurst index, dyadic grid level and seed for a Brownian surface."""

    hurst: float
    level: int
    seed: int

    def __post_init__(self):
        if not 0.0 < self.hurst < 1.0:
            raise ValueError("Hurst index must lie strictly inside (0, 1)")
        if self.level < 1:
            raise ValueError("level must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")


def cascade(spec: CascadeSpec) -> ScalarGrid:
    """Multiplicative cascade measure on a 2^steps x 2^steps grid.

    Weights map to quadrants as (top-left, top-right, bottom-left,
    bottom-right), identically at every depth.  Each cell value is
    p1^n1 * p2^n2 * p3^n3 * p4^n4 with n_i its quadrant-visit counts,
    so cells whose nesting chains are permutations of one another get
    bit-identical values: the measure's exact tie structure, which a
    running product along the chain would split by rounding order.
    Total mass is 1.
    """
    n = 2**spec.steps
    bits = np.arange(n)
    visits = np.zeros((4, n, n), dtype=np.int64)
    for level in range(spec.steps):
        b = (bits >> level) & 1
        quadrant = (b[:, None] << 1) | b[None, :]  # 2*row_bit + col_bit
        for i in range(4):
            visits[i] += quadrant == i
    values = np.ones((n, n))
    for p, exponents in zip(spec.probs, visits):
        values = values * np.power(p, exponents)
    return ScalarGrid(values)


def ordered_variant(grid: ScalarGrid) -> ScalarGrid:
    """Same values sorted ascending and refilled row-major."""
    flat = np.sort(grid.values, axis=None)
    return ScalarGrid(flat.reshape(grid.values.shape))


def randomized_variant(grid: ScalarGrid, seed: int) -> ScalarGrid:
    """Same values in a seeded uniformly random arrangement."""
    rng = np.random.default_rng(seed)
    flat = rng.permutation(grid.values.ravel())
    return ScalarGrid(flat.reshape(grid.values.shape))


@lru_cache(maxsize=4)
def _embedding_spectrum(hurst: float, level: int) -> np.ndarray:
    """sqrt of the circulant eigenvalues for one (hurst, level) pair.

    Embeds the compactly supported covariance
    psi(r) = (1 - H) + H r^2 - r^(2H) for r <= 1 (else 0) on a torus of
    twice the target period.  psi is positive definite there for
    H <= 0.75; beyond that a vanishing fraction of eigenvalues dips
    negative and is clipped, a sub-0.1% covariance perturbation even at
    H = 0.9.
    """
    n = 2**level
    m = 2 * n
    idx = np.arange(m)
    d = np.minimum(idx, m - idx) / n  # torus distance in domain units
    r = np.hypot(d[:, None], d[None, :])
    psi = np.where(r <= 1.0, (1.0 - hurst) + hurst * r**2 - r ** (2 * hurst), 0.0)
    lam = np.fft.fft2(psi).real
    root = np.sqrt(np.clip(lam, 0.0, None))
    root.flags.writeable = False
    return root


def brownian_surface(spec: FbsSpec) -> ScalarGrid:
    """Circulant-embedding sample of an index-H fractional Brownian surface.

    A stationary Gaussian field with covariance psi (see
    _embedding_spectrum) plus an independent random linear ramp has
    increments obeying the variance law ||(h,k)||^(2H) exactly, not just
    asymptotically.  The sample is anchored at the corner (value 0) and
    scaled so the ensemble variance of lag-1 axis increments is 1, which
    puts lag-l increments at exactly l^(2H).
    """
    n = 2**spec.level
    m = 2 * n
    rng = np.random.default_rng(spec.seed)
    noise = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    root = _embedding_spectrum(spec.hurst, spec.level)
    z = m * np.fft.ifft2(root * noise).real[:n, :n]
    ramp = rng.standard_normal(2)
    t = np.arange(n, dtype=np.float64) / n
    field = z - z[0, 0] + np.sqrt(2.0 * spec.hurst) * (
        t[:, None] * ramp[0] + t[None, :] * ramp[1]
    )
    # increment variance at lattice lag l is 2 (l/n)^(2H); rescale to 1 at l=1
    field /= np.sqrt(2.0) * (1.0 / n) ** spec.hurst
    return ScalarGrid(field)
