"""Information quantifiers over ordinal-pattern distributions.

Three numbers summarize a distribution P over M = D! patterns: the
normalized Shannon entropy H = S[P]/ln M, the Jensen-Shannon statistical
complexity C = Q0 * J(P, Pe) * H against the uniform Pe, and the discrete
Fisher information F, a local quantifier read along the Lehmer-ordered
probability vector.  Natural logarithms throughout; 0*ln(0) = 0 with no
epsilon smoothing, and zero-probability patterns stay in the vector
because F depends on adjacency.

H is evaluated as (ln M - KL(P || Pe))/ln M, algebraically identical to
S[P]/ln M but exact at the endpoints: an exactly uniform P gives
H == 1.0 and a delta gives H == 0.0, bit for bit.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ComplexityBounds",
    "InfoTriple",
    "cecp_bounds",
    "complexity_js",
    "entropy_normalized",
    "fisher_discrete",
    "info_triple",
    "js_divergence_max",
    "js_divergence_to_uniform",
    "shannon",
]


def _probs_of(dist):
    """Validated probability vector from an array or an OrdinalDistribution."""
    probs = getattr(dist, "probs", dist)
    a = np.asarray(probs, dtype=np.float64)
    if a.ndim != 1 or a.size < 2:
        raise ValueError("need a 1D probability vector with at least 2 entries")
    if not np.all(np.isfinite(a)):
        raise ValueError("probabilities must be finite")
    if np.any(a < 0):
        raise ValueError("probabilities must be non-negative")
    total = float(a.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {total!r}, not 1")
    return a


def _entropy(p):
    pos = p[p > 0.0]
    return float(-np.dot(pos, np.log(pos)))


def shannon(p) -> float:
    """-sum p_j ln p_j, in [0, ln M]."""
    p = _probs_of(p)
    ln_m = float(np.log(float(p.size)))
    return min(max(_entropy(p), 0.0), ln_m)


def entropy_normalized(p) -> float:
    """S[P]/ln M in [0, 1]; exact at exactly-uniform and delta inputs."""
    p = _probs_of(p)
    ln_m = float(np.log(float(p.size)))
    pos = p[p > 0.0]
    kl = float(np.dot(pos, np.log(pos * p.size)))
    return min(max((ln_m - kl) / ln_m, 0.0), 1.0)


def js_divergence_max(m: int) -> float:
    """Maximum of J(P, Pe) over the M-simplex, attained at delta distributions."""
    if m < 2:
        raise ValueError("alphabet size must be >= 2")
    m = float(m)
    return -0.5 * (((m + 1.0) / m) * math.log(m + 1.0) - 2.0 * math.log(2.0 * m) + math.log(m))


def js_divergence_to_uniform(p) -> float:
    """J(P, Pe) = S[(P+Pe)/2] - S[P]/2 - S[Pe]/2 with Pe uniform."""
    p = _probs_of(p)
    pe = np.full(p.size, 1.0 / p.size)
    return _entropy((p + pe) / 2.0) - 0.5 * _entropy(p) - 0.5 * _entropy(pe)


def complexity_js(p) -> float:
    """Statistical complexity Q0 * J(P, Pe) * H[P], in [0, 1]."""
    p = _probs_of(p)
    h = entropy_normalized(p)
    j = js_divergence_to_uniform(p)
    return (j / js_divergence_max(p.size)) * h


def fisher_discrete(dist) -> float:
    """Discrete Fisher information along the Lehmer-ordered vector.

    F = F0 * sum_i (sqrt(p_{i+1}) - sqrt(p_i))^2 with F0 = 1 when the
    distribution is a delta at the first or last index and 1/2 otherwise.
    The ordering of the vector is part of the contract: permuting P
    changes F (unlike H and C).
    """
    p = _probs_of(dist)
    root = np.sqrt(p)
    total = float(np.square(np.diff(root)).sum())
    f0 = 1.0 if (p[0] == 1.0 or p[-1] == 1.0) else 0.5
    return min(f0 * total, 1.0)


@dataclass(frozen=True)
class InfoTriple:
    """(H, C, F) of one distribution; all three lie in [0, 1]."""

    h: float
    c: float
    f: float


def info_triple(dist) -> InfoTriple:
    p = _probs_of(dist)
    return InfoTriple(entropy_normalized(p), complexity_js(p), fisher_discrete(p))


# ---------------------------------------------------------------------------
# CECP boundary curves.
#
# Over the M-simplex the reachable (H, C) region is bounded by two curves
# (Martin, Plastino & Rosso).  Both are swept out by distributions with m
# zero entries, one free entry p, and the remaining r = M - m - 1 entries
# sharing (1 - p)/r:
#   - the lower curve C_min is the m = 0 family with p in [1/M, 1];
#   - the upper curve C_max is the upper envelope over all m in
#     {0, .., M-2} with p spanning [0, 1] (the p < 1/(M-m) sub-branches
#     carry the envelope near H = 1).
# Each (m, p-range) piece is monotone in H, so curve values at arbitrary H
# are computed exactly by bisection on p; the polylines returned for
# plotting sample every branch with `samples` points.
# ---------------------------------------------------------------------------


def _family_hc(m_total, zeros, p):
    """(H, C) for the boundary family, vectorized over p (and zeros)."""
    p = np.asarray(p, dtype=np.float64)
    zeros = np.asarray(zeros, dtype=np.float64)
    r = m_total - zeros - 1.0
    ln_m = float(np.log(float(m_total)))
    u = 1.0 / m_total

    def xlogx(v):
        v = np.asarray(v, dtype=np.float64)
        return np.where(v > 0.0, v * np.log(np.where(v > 0.0, v, 1.0)), 0.0)

    q = np.where(r > 0, (1.0 - p) / np.where(r > 0, r, 1.0), 0.0)
    s = -(xlogx(p) + r * xlogx(q))
    h = s / ln_m
    s_mid = -(xlogx((p + u) / 2.0) + r * xlogx((q + u) / 2.0) + zeros * xlogx(u / 2.0))
    j = s_mid - 0.5 * s - 0.5 * ln_m
    c = (j / js_divergence_max(m_total)) * h
    return h, c


def _bisect_pieces(m_total, zeros, p_lo, p_hi, targets, iters=64):
    """Solve H(p) = target on monotone pieces; arrays broadcast elementwise."""
    lo = np.broadcast_to(p_lo, targets.shape).astype(np.float64).copy()
    hi = np.broadcast_to(p_hi, targets.shape).astype(np.float64).copy()
    h_lo, _ = _family_hc(m_total, zeros, lo)
    increasing = h_lo <= _family_hc(m_total, zeros, hi)[0]
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        h_mid, _ = _family_hc(m_total, zeros, mid)
        go_up = np.where(increasing, h_mid < targets, h_mid > targets)
        lo = np.where(go_up, mid, lo)
        hi = np.where(go_up, hi, mid)
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ComplexityBounds:
    """C_min/C_max polylines plus exact curve evaluators for one alphabet."""

    m: int
    hs: np.ndarray
    c_min: np.ndarray
    c_max: np.ndarray

    def _curve_at(self, h, pieces):
        h_arr = np.atleast_1d(np.asarray(h, dtype=np.float64))
        if np.any(h_arr < -1e-12) or np.any(h_arr > 1.0 + 1e-12):
            raise ValueError("H must lie in [0, 1]")
        h_arr = np.clip(h_arr, 0.0, 1.0)
        best = np.zeros_like(h_arr)
        all_zeros, all_plo, all_phi = pieces
        n_pieces = len(all_zeros)
        chunk = max(1, 2_000_000 // max(len(h_arr), 1))
        for start in range(0, n_pieces, chunk):
            zeros = all_zeros[start : start + chunk, None]
            plo = all_plo[start : start + chunk, None]
            phi = all_phi[start : start + chunk, None]
            h_lo, _ = _family_hc(self.m, zeros, plo)
            h_hi, _ = _family_hc(self.m, zeros, phi)
            h_min = np.minimum(h_lo, h_hi) - 1e-12
            h_max = np.maximum(h_lo, h_hi) + 1e-12
            inside = (h_arr >= h_min) & (h_arr <= h_max)
            if not inside.any():
                continue
            targets = np.clip(np.broadcast_to(h_arr, inside.shape), h_min, h_max)
            p = _bisect_pieces(self.m, zeros, plo, phi, targets)
            _, c = _family_hc(self.m, zeros, p)
            c = np.where(inside, c, 0.0)
            best = np.maximum(best, c.max(axis=0))
        if np.isscalar(h) or np.asarray(h).ndim == 0:
            return float(best[0])
        return best

    def cmax_at(self, h):
        """Exact C_max at arbitrary H (bisection over every boundary piece)."""
        return self._curve_at(h, _boundary_pieces(self.m))

    def cmin_at(self, h):
        """Exact C_min at arbitrary H (single m = 0, p >= 1/M piece)."""
        pieces = (
            np.array([0.0]),
            np.array([1.0 / self.m]),
            np.array([1.0]),
        )
        return self._curve_at(h, pieces)


def _boundary_pieces(m_total):
    """Monotone (zeros, p_lo, p_hi) pieces of every boundary family branch."""
    zeros = np.arange(m_total - 1, dtype=np.float64)
    peak = 1.0 / (m_total - zeros)
    z = np.concatenate([zeros, zeros])
    plo = np.concatenate([np.zeros_like(peak), peak])
    phi = np.concatenate([peak, np.ones_like(peak)])
    return z, plo, phi


def _branch_subset(m_total, cap=1536):
    """All zero-counts when few; geometric thinning for huge alphabets."""
    if m_total - 1 <= cap:
        return np.arange(m_total - 1)
    dense = np.arange(cap // 2)
    sparse = np.unique(
        np.round(np.geomspace(cap // 2, m_total - 2, cap // 2)).astype(np.int64)
    )
    return np.unique(np.concatenate([dense, sparse]))


def cecp_bounds(m: int, samples: int = 512) -> ComplexityBounds:
    """Boundary curves of the (H, C) region for an M-letter alphabet.

    Every branch is sampled with `samples` points; the returned polylines
    live on a uniform H grid of the same length.  For exact curve values
    at arbitrary H use the cmax_at/cmin_at evaluators, which bisect the
    branch curves directly (polyline interpolation can sag below the true
    envelope between samples).
    """
    if m < 2:
        raise ValueError("alphabet size must be >= 2")
    if samples < 8:
        raise ValueError("need at least 8 samples per branch")
    hs = np.linspace(0.0, 1.0, samples)
    c_max = np.zeros_like(hs)
    # Each branch splits at p = 1/(M - zeros) into two pieces monotone in H;
    # sample each piece parametrically and max onto the common H grid.
    t = 0.5 * (1.0 - np.cos(np.linspace(0.0, np.pi, samples)))  # denser ends
    zs = _branch_subset(m)
    for start in range(0, len(zs), 256):
        z = zs[start : start + 256, None].astype(np.float64)
        peak = 1.0 / (m - z)
        for p_lo, p_hi in ((np.zeros_like(peak), peak), (peak, np.ones_like(peak))):
            p = p_lo + (p_hi - p_lo) * t[None, :]
            h_b, c_b = _family_hc(m, z, p)
            for row_h, row_c in zip(h_b, c_b):
                if row_h[0] > row_h[-1]:
                    row_h, row_c = row_h[::-1], row_c[::-1]
                span = (hs >= row_h[0]) & (hs <= row_h[-1])
                if span.any():
                    interp = np.interp(hs[span], row_h, row_c)
                    c_max[span] = np.maximum(c_max[span], interp)
    tmp = ComplexityBounds(m=m, hs=hs, c_min=np.zeros_like(hs), c_max=c_max)
    # the single lower branch is monotone in H, so evaluate it exactly
    c_min = tmp.cmin_at(hs)
    # exact endpoints: both curves pass through (0, 0) and (1, 0)
    c_min[[0, -1]] = 0.0
    c_max[[0, -1]] = 0.0
    return ComplexityBounds(m=m, hs=hs, c_min=c_min, c_max=c_max)
