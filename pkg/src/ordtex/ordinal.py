"""Bandt-Pompe symbolization of scalar sequences.

A window of D values (delay tau between samples) is replaced by its rank
vector: position i receives the rank of window[i] among the window's
entries, 0 = smallest.  Equal values rank by temporal order (earlier
index -> lower rank), so extraction is deterministic on quantized pixel
data.  Patterns index the probability vector by their Lehmer code, i.e.
lexicographic rank, with the identity pattern at rank 0.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

__all__ = [
    "OrdinalDistribution",
    "UndersampledWarning",
    "build_distribution",
    "extract_pattern",
    "lehmer_rank",
]

MIN_ORDER = 2
MAX_ORDER = 8


class UndersampledWarning(UserWarning):
    """Fewer than 10 * D! windows: pattern frequencies are noisy."""


def extract_pattern(window) -> tuple:
    """Rank vector of one window, ties broken by temporal order.

    >>> extract_pattern((1, 6, 3))
    (0, 2, 1)
    """
    w = np.asarray(window, dtype=np.float64)
    if w.ndim != 1 or w.size < 1:
        raise ValueError("window must be a non-empty 1D sequence")
    if not np.all(np.isfinite(w)):
        raise ValueError("window values must be finite")
    perm = np.argsort(w, kind="stable")
    ranks = np.empty(w.size, dtype=np.int64)
    ranks[perm] = np.arange(w.size)
    return tuple(int(r) for r in ranks)


def lehmer_rank(pattern) -> int:
    """Lexicographic rank of a permutation via its factoradic digits.

    Rank 0 is the identity (0, 1, ..., D-1); rank D!-1 its reversal.
    """
    p = tuple(int(v) for v in pattern)
    order = len(p)
    if sorted(p) != list(range(order)):
        raise ValueError(f"{pattern!r} is not a permutation of 0..{order - 1}")
    rank = 0
    for i in range(order - 1):
        smaller = sum(1 for v in p[i + 1 :] if v < p[i])
        rank += smaller * math.factorial(order - 1 - i)
    return rank


@dataclass(frozen=True)
class OrdinalDistribution:
    """Pattern probabilities in Lehmer order for one (D, tau) extraction."""

    order: int
    delay: int
    probs: np.ndarray
    counts: np.ndarray
    samples: int
    undersampled: bool
    # per-axis delays when produced by a 2D patch extraction
    delays: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "probs", np.asarray(self.probs, dtype=np.float64))
        object.__setattr__(self, "counts", np.asarray(self.counts, dtype=np.int64))

    @property
    def alphabet(self) -> int:
        return int(self.probs.size)

    @classmethod
    def from_probs(cls, probs, order: int, delay: int = 1):
        """Wrap an explicit probability vector (no sample counts behind it)."""
        p = np.asarray(probs, dtype=np.float64)
        if p.size != math.factorial(order):
            raise ValueError("probability vector length must be order!")
        return cls(
            order=order,
            delay=delay,
            probs=p,
            counts=np.zeros(p.size, dtype=np.int64),
            samples=0,
            undersampled=False,
        )


def _distribution_from_counts(counts, order, delay, delays=()):
    counts = np.asarray(counts, dtype=np.int64)
    samples = int(counts.sum())
    undersampled = samples < 10 * math.factorial(order)
    if undersampled:
        warnings.warn(
            f"{samples} windows for {math.factorial(order)} patterns "
            f"(fewer than 10 per pattern on average): frequencies are noisy",
            UndersampledWarning,
            stacklevel=3,
        )
    return OrdinalDistribution(
        order=order,
        delay=delay,
        probs=counts / samples,
        counts=counts,
        samples=samples,
        undersampled=undersampled,
        delays=tuple(delays),
    )


def build_distribution(seq, order: int, delay: int = 1) -> OrdinalDistribution:
    """Ordinal-pattern distribution of a sequence.

    Every window (seq[s], seq[s+tau], ..., seq[s+(D-1)tau]) contributes one
    pattern; there are N - (D-1)*tau of them.  Warns (does not refuse) when
    the window count is below 10 * D!.
    """
    if not MIN_ORDER <= order <= MAX_ORDER:
        raise ValueError(f"order must be in {MIN_ORDER}..{MAX_ORDER}, got {order}")
    if delay < 1:
        raise ValueError(f"delay must be >= 1, got {delay}")
    s = np.ascontiguousarray(seq, dtype=np.float64)
    if s.ndim != 1:
        raise ValueError("sequence must be one-dimensional")
    if not np.all(np.isfinite(s)):
        raise ValueError("sequence values must be finite")
    if s.size <= (order - 1) * delay:
        raise ValueError(
            f"sequence of length {s.size} too short for order {order}, delay {delay}"
        )
    counts = _kernels.counts_1d(s, order, delay)
    return _distribution_from_counts(counts, order, delay)
