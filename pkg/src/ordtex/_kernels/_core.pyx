# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: Hilbert traversal and ordinal symbolization.

Mirrors _purepy exactly; loops release the GIL so directory batches can
run data-parallel on threads.
"""

import numpy as np


cdef inline long long _factorial(int k) nogil:
    cdef long long f = 1
    cdef int i
    for i in range(2, k + 1):
        f *= i
    return f


def curve_xy(int level):
    """Coordinates (x, y) of every step of the level-N Hilbert traversal."""
    cdef long long side = 1LL << level
    cdef long long total = side * side
    xs = np.empty(total, dtype=np.int64)
    ys = np.empty(total, dtype=np.int64)
    cdef long long[::1] xv = xs
    cdef long long[::1] yv = ys
    cdef long long d, t, s, rx, ry, x, y, tmp
    with nogil:
        for d in range(total):
            t = d
            x = 0
            y = 0
            s = 1
            while s < side:
                rx = 1 & (t >> 1)
                ry = 1 & (t ^ rx)
                if ry == 0:
                    if rx == 1:
                        x = s - 1 - x
                        y = s - 1 - y
                    tmp = x
                    x = y
                    y = tmp
                x += s * rx
                y += s * ry
                t >>= 2
                s <<= 1
            xv[d] = x
            yv[d] = y
    return xs, ys


def index_of(int level, xs, ys):
    """Curve step index d for each cell (x, y), inverse of curve_xy."""
    cdef long long side = 1LL << level
    x_arr = np.ascontiguousarray(xs, dtype=np.int64)
    y_arr = np.ascontiguousarray(ys, dtype=np.int64)
    out = np.empty(x_arr.shape[0], dtype=np.int64)
    cdef const long long[::1] xv = x_arr
    cdef const long long[::1] yv = y_arr
    cdef long long[::1] dv = out
    cdef Py_ssize_t i, n = xv.shape[0]
    cdef long long x, y, s, rx, ry, d, tmp
    with nogil:
        for i in range(n):
            x = xv[i]
            y = yv[i]
            d = 0
            s = side >> 1
            while s > 0:
                rx = 1 if (x & s) > 0 else 0
                ry = 1 if (y & s) > 0 else 0
                d += s * s * ((3 * rx) ^ ry)
                if ry == 0:
                    if rx == 1:
                        x = side - 1 - x
                        y = side - 1 - y
                    tmp = x
                    x = y
                    y = tmp
                s >>= 1
            dv[i] = d
    return out


def window_codes(windows):
    """Lehmer code of the ordinal pattern of each row of a 2-D float array.

    Ties rank by column order (earlier column -> lower rank).
    """
    w_arr = np.asarray(windows, dtype=np.float64)
    cdef const double[:, :] w = w_arr
    cdef Py_ssize_t nwin = w.shape[0]
    cdef int order = <int> w.shape[1]
    if order < 1 or order > 20:
        raise ValueError("window length must be in 1..20")
    codes = np.empty(nwin, dtype=np.int64)
    cdef long long[::1] cv = codes
    cdef long long fact[21]
    cdef int k
    fact[0] = 1
    for k in range(1, 21):
        fact[k] = fact[k - 1] * k
    cdef Py_ssize_t i
    cdef int a, b
    cdef long long c, code
    cdef double va
    # Lehmer digit a = later positions of strictly lower rank; with the
    # earlier-index tie rule that equals later positions of strictly
    # smaller value, so the code falls out of one inversion count.
    with nogil:
        for i in range(nwin):
            code = 0
            for a in range(order - 1):
                va = w[i, a]
                c = 0
                for b in range(a + 1, order):
                    if w[i, b] < va:
                        c += 1
                code += c * fact[order - 1 - a]
            cv[i] = code
    return codes


def counts_1d(seq, int order, int delay):
    """Pattern counts (Lehmer order, length order!) over all windows of seq."""
    if order < 2 or order > 10:
        raise ValueError("order must be in 2..10")
    if delay < 1:
        raise ValueError("delay must be >= 1")
    s_arr = np.ascontiguousarray(seq, dtype=np.float64)
    cdef const double[::1] s = s_arr
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t nwin = n - (<Py_ssize_t> (order - 1)) * delay
    counts = np.zeros(_factorial(order), dtype=np.int64)
    cdef long long[::1] cv = counts
    cdef long long fact[21]
    cdef int k
    fact[0] = 1
    for k in range(1, 21):
        fact[k] = fact[k - 1] * k
    cdef double buf[10]
    cdef Py_ssize_t i
    cdef int a, b
    cdef long long c, code
    cdef double va
    with nogil:
        for i in range(nwin):
            for a in range(order):
                buf[a] = s[i + (<Py_ssize_t> a) * delay]
            code = 0
            for a in range(order - 1):
                va = buf[a]
                c = 0
                for b in range(a + 1, order):
                    if buf[b] < va:
                        c += 1
                code += c * fact[order - 1 - a]
            cv[code] += 1
    return counts
