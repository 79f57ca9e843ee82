"""Planar Hilbert curves and the grid unfolding they induce.

The level-N curve visits every cell of the 2^N x 2^N grid exactly once,
consecutive cells being 4-adjacent.  Coordinates are (x, y) = (column,
row) with the origin at the top-left cell of the matrix; the traversal
starts at (0, 0) and ends at (2^N - 1, 0).
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels

__all__ = ["HilbertMap", "ScalarGrid", "unfold"]

_COORD_CACHE: dict = {}


def _rot(side, x, y, rx, ry):
    if ry == 0:
        if rx == 1:
            x = side - 1 - x
            y = side - 1 - y
        x, y = y, x
    return x, y


class HilbertMap:
    """Index <-> coordinate bijection for the level-N Hilbert curve."""

    def __init__(self, level: int):
        if not isinstance(level, (int, np.integer)) or level < 1:
            raise ValueError("level must be a positive integer")
        self.level = int(level)
        self.side = 1 << self.level
        self.total = self.side * self.side

    def index_to_xy(self, d: int):
        """Cell (x, y) visited at step d of the traversal."""
        if not 0 <= d < self.total:
            raise ValueError(f"index {d} outside [0, {self.total})")
        t = int(d)
        x = y = 0
        s = 1
        while s < self.side:
            rx = 1 & (t >> 1)
            ry = 1 & (t ^ rx)
            x, y = _rot(s, x, y, rx, ry)
            x += s * rx
            y += s * ry
            t >>= 2
            s <<= 1
        return x, y

    def xy_to_index(self, x: int, y: int) -> int:
        """Step index at which the traversal visits cell (x, y)."""
        if not (0 <= x < self.side and 0 <= y < self.side):
            raise ValueError(f"coordinates ({x}, {y}) outside [0, {self.side})^2")
        x, y = int(x), int(y)
        d = 0
        s = self.side >> 1
        while s > 0:
            rx = 1 if (x & s) > 0 else 0
            ry = 1 if (y & s) > 0 else 0
            d += s * s * ((3 * rx) ^ ry)
            x, y = _rot(self.side, x, y, rx, ry)
            s >>= 1
        return d

    def coordinates(self):
        """Full traversal as two int64 arrays (xs, ys), cached per level."""
        coords = _COORD_CACHE.get(self.level)
        if coords is None:
            coords = _kernels.curve_xy(self.level)
            _COORD_CACHE[self.level] = coords
        return coords

    def __repr__(self):
        return f"HilbertMap(level={self.level})"


@dataclass(frozen=True)
class ScalarGrid:
    """Square 2^level x 2^level matrix of finite scalar values."""

    values: np.ndarray
    level: int = field(init=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("grid must be a square matrix")
        side = v.shape[0]
        level = side.bit_length() - 1
        if side < 2 or (1 << level) != side:
            raise ValueError(f"grid side {side} is not a power of two >= 2")
        if not np.all(np.isfinite(v)):
            raise ValueError("grid values must be finite")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "level", level)

    @property
    def side(self) -> int:
        return self.values.shape[0]


def unfold(grid: ScalarGrid) -> np.ndarray:
    """Unfold a grid into a 1D sequence along its Hilbert traversal.

    Element d of the result is the pixel at curve step d; the sequence is a
    permutation of the grid values, length 4**level.
    """
    if not isinstance(grid, ScalarGrid):
        grid = ScalarGrid(np.asarray(grid))
    xs, ys = HilbertMap(grid.level).coordinates()
    return grid.values[ys, xs]
