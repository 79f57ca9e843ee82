"""Vectorized numpy fallback for the compiled kernels.

Semantics must match ``_core`` bit for bit: integer outputs, the same tie
rule (earlier index ranks lower), the same Lehmer coding.
"""

import math

import numpy as np

_FACT = np.array([math.factorial(k) for k in range(21)], dtype=np.int64)


def curve_xy(level):
    """Coordinates (x, y) of every step of the level-N Hilbert traversal.

    Returns two int64 arrays of length 4**level; entry d holds the cell
    visited at step d.
    """
    side = np.int64(1) << level
    total = int(side) * int(side)
    t = np.arange(total, dtype=np.int64)
    x = np.zeros(total, dtype=np.int64)
    y = np.zeros(total, dtype=np.int64)
    s = np.int64(1)
    while s < side:
        rx = np.int64(1) & (t >> 1)
        ry = np.int64(1) & (t ^ rx)
        flip = (ry == 0) & (rx == 1)
        x[flip] = s - 1 - x[flip]
        y[flip] = s - 1 - y[flip]
        swap = ry == 0
        x[swap], y[swap] = y[swap], x[swap]
        x += s * rx
        y += s * ry
        t >>= 2
        s <<= 1
    return x, y


def index_of(level, xs, ys):
    """Curve step index d for each cell (x, y), vectorized inverse of curve_xy."""
    side = np.int64(1) << level
    x = np.array(xs, dtype=np.int64, copy=True)
    y = np.array(ys, dtype=np.int64, copy=True)
    d = np.zeros(x.shape, dtype=np.int64)
    s = side >> 1
    while s > 0:
        rx = ((x & s) > 0).astype(np.int64)
        ry = ((y & s) > 0).astype(np.int64)
        d += (s * s) * ((3 * rx) ^ ry)
        flip = (ry == 0) & (rx == 1)
        xf = np.where(flip, side - 1 - x, x)
        yf = np.where(flip, side - 1 - y, y)
        swap = ry == 0
        x = np.where(swap, yf, xf)
        y = np.where(swap, xf, yf)
        s >>= 1
    return d


def window_codes(windows):
    """Lehmer code of the ordinal pattern of each row of a 2-D float array.

    Ties rank by column order (earlier column -> lower rank), which is what
    the stable argsort delivers.
    """
    w = np.asarray(windows, dtype=np.float64)
    nwin, order = w.shape
    if not 1 <= order <= 20:
        raise ValueError("window length must be in 1..20")
    codes = np.zeros(nwin, dtype=np.int64)
    # digit j of the Lehmer code counts later positions of strictly lower
    # rank; under the earlier-index tie rule that is exactly the count of
    # later positions with strictly smaller value, so no rank pass is needed
    for j in range(order - 1):
        smaller = (w[:, j + 1 :] < w[:, j : j + 1]).sum(axis=1)
        codes += smaller * _FACT[order - 1 - j]
    return codes


def counts_1d(seq, order, delay):
    """Pattern counts (Lehmer order, length order!) over all windows of seq."""
    if not 2 <= order <= 10:
        raise ValueError("order must be in 2..10")
    if delay < 1:
        raise ValueError("delay must be >= 1")
    s = np.ascontiguousarray(seq, dtype=np.float64)
    span = (order - 1) * delay + 1
    windows = np.lib.stride_tricks.sliding_window_view(s, span)[:, ::delay]
    codes = window_codes(windows)
    return np.bincount(codes, minlength=int(_FACT[order]))
