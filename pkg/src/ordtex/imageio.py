"""Image ingestion and geometry: PNM/PNG loading, luminance reduction,
power-of-two center crops, rigid transforms, and 16-bit PGM export.

Pixel matrices are row-major with the origin at the top-left corner,
(x, y) = (column, row).  Quarter-turn rotations are exact index
permutations; arbitrary-angle rotation is nearest-neighbor and lossy,
returning the largest centered power-of-two square that is fully covered
by source pixels (filler values would contaminate ordinal statistics).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np
from PIL import Image

from .hilbert import ScalarGrid

# ITU-R BT.601 luminance weights for RGB reduction
LUMA_WEIGHTS = (0.299, 0.587, 0.114)

_WS = b" \t\n\r\x0b\x0c"


class ImageFormatError(OSError):
    """Unreadable or unsupported image file."""


@dataclass(frozen=True)
class ImageRecord:
    """Provenance and shape metadata for a loaded image."""

    label: str
    source_path: str
    width: int
    height: int
    channels: int
    bit_depth: int


class CropResult(NamedTuple):
    grid: ScalarGrid
    top: int
    left: int


def _pnm_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next header token, skipping whitespace and # comments."""
    n = len(data)
    while pos < n:
        c = data[pos]
        if c in _WS:
            pos += 1
        elif c == 0x23:  # '#'
            nl = data.find(b"\n", pos)
            pos = n if nl < 0 else nl + 1
        else:
            break
    if pos >= n:
        raise ImageFormatError("truncated PNM header")
    end = pos
    while end < n and data[end] not in _WS and data[end] != 0x23:
        end += 1
    return data[pos:end], end


def _load_pnm(path: Path, data: bytes) -> tuple[np.ndarray, int, int]:
    kind = data[:2].decode("ascii")
    pos = 2
    fields = []
    for name in ("width", "height", "maxval"):
        tok, pos = _pnm_token(data, pos)
        if not tok.isdigit():
            raise ImageFormatError(f"{path}: bad PNM {name} token {tok!r}")
        fields.append(int(tok))
    width, height, maxval = fields
    if width <= 0 or height <= 0:
        raise ImageFormatError(f"{path}: non-positive PNM dimensions")
    if not 0 < maxval < 65536:
        raise ImageFormatError(f"{path}: PNM maxval {maxval} out of range")
    channels = 3 if kind in ("P3", "P6") else 1
    depth = 8 if maxval < 256 else 16
    count = width * height * channels
    if kind in ("P2", "P3"):
        import re

        body = re.sub(rb"#[^\n]*", b" ", data[pos:])
        try:
            flat = np.array(body.split(), dtype=np.int64)
        except ValueError:
            raise ImageFormatError(f"{path}: non-numeric PNM sample") from None
    else:
        pos += 1  # exactly one whitespace byte separates maxval from raster
        itemsize = 1 if depth == 8 else 2
        raster = data[pos : pos + count * itemsize]
        if len(raster) < count * itemsize:
            raise ImageFormatError(f"{path}: truncated PNM raster")
        dtype = np.uint8 if depth == 8 else np.dtype(">u2")
        flat = np.frombuffer(raster, dtype=dtype).astype(np.int64)
    if flat.size != count:
        raise ImageFormatError(
            f"{path}: expected {count} PNM samples, found {flat.size}"
        )
    if flat.min() < 0 or flat.max() > maxval:
        raise ImageFormatError(f"{path}: PNM sample outside [0, {maxval}]")
    shape = (height, width) if channels == 1 else (height, width, 3)
    return flat.reshape(shape), channels, depth


def _load_png(path: Path) -> tuple[np.ndarray, int, int]:
    try:
        with Image.open(path) as im:
            im.load()
            if im.mode in ("P", "RGBA", "CMYK"):
                im = im.convert("RGB")
            elif im.mode == "LA":
                im = im.convert("L")
            mode = im.mode
            pixels = np.asarray(im, dtype=np.int64)
    except OSError as exc:
        raise ImageFormatError(f"{path}: not a readable PNG ({exc})") from exc
    if mode == "L":
        return pixels, 1, 8
    if mode in ("I", "I;16"):
        return pixels, 1, 16
    if mode == "RGB":
        return pixels, 3, 8
    raise ImageFormatError(f"{path}: unsupported PNG mode {mode!r}")


def load_image(path) -> tuple[ImageRecord, np.ndarray]:
    """Read a PGM/PPM or PNG file into (metadata, integer pixel matrix).

    Grayscale pixels come back as (height, width), RGB as
    (height, width, 3), values in [0, 2^bit_depth).  16-bit data passes
    through unrescaled; ordinal statistics ignore monotone scaling.
    """
    p = Path(path)
    data = p.read_bytes()
    if data[:2] in (b"P2", b"P3", b"P5", b"P6"):
        pixels, channels, depth = _load_pnm(p, data)
    elif data[:2] in (b"P1", b"P4"):
        raise ImageFormatError(f"{p}: 1-bit PNM bitmaps are not supported")
    elif data[:8] == b"\x89PNG\r\n\x1a\n":
        pixels, channels, depth = _load_png(p)
    else:
        raise ImageFormatError(f"{p}: unsupported format (want PGM/PPM or PNG)")
    height, width = pixels.shape[:2]
    record = ImageRecord(
        label=p.stem,
        source_path=str(p),
        width=width,
        height=height,
        channels=channels,
        bit_depth=depth,
    )
    return record, pixels


def to_scalar(pixels, channels: int | None = None) -> np.ndarray:
    """Grayscale passes through; RGB reduces to BT.601 luminance."""
    a = np.asarray(pixels, dtype=np.float64)
    if channels is None:
        channels = 3 if a.ndim == 3 else 1
    if channels == 1:
        if a.ndim != 2:
            raise ValueError("grayscale pixels must form a 2D matrix")
        return a
    if channels != 3 or a.ndim != 3 or a.shape[-1] != 3:
        raise ValueError("RGB pixels must form a (height, width, 3) array")
    return a @ np.asarray(LUMA_WEIGHTS)


def center_crop_pow2(matrix) -> CropResult:
    """Largest centered square crop whose side is a power of two."""
    a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError("expected a 2D scalar matrix")
    if min(a.shape) < 2:
        raise ValueError("matrix too small to crop to a power-of-two square")
    side = 1 << (min(a.shape).bit_length() - 1)
    top = (a.shape[0] - side) // 2
    left = (a.shape[1] - side) // 2
    return CropResult(ScalarGrid(a[top : top + side, left : left + side]), top, left)


_TRANSFORMS = {
    "rot90": lambda v: np.rot90(v, -1),  # clockwise quarter turn
    "rot180": lambda v: np.rot90(v, 2),
    "rot270": lambda v: np.rot90(v, 1),
    "mirror": np.fliplr,
}

TRANSFORM_NAMES = tuple(_TRANSFORMS)


def transform(grid: ScalarGrid, op: str) -> ScalarGrid:
    """Exact rigid transform: rot90/rot180/rot270 (clockwise) or mirror."""
    try:
        fn = _TRANSFORMS[op]
    except KeyError:
        raise ValueError(f"unknown transform {op!r}") from None
    return ScalarGrid(fn(grid.values).copy())


def rotate_arbitrary(matrix, degrees: float) -> ScalarGrid:
    """Nearest-neighbor rotation about the center, cropped to valid pixels.

    The output is the largest centered power-of-two square in which every
    pixel maps back inside the source, so no filler values appear.  At
    multiples of 90 degrees this reproduces the exact transforms up to
    the usual center crop.
    """
    a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError("expected a 2D scalar matrix")
    rows, cols = a.shape
    theta = np.radians(degrees)
    cu = (cols - 1) / 2.0
    cv = (rows - 1) / 2.0
    uu = np.arange(cols, dtype=np.float64) - cu
    vv = (np.arange(rows, dtype=np.float64) - cv)[:, None]
    # inverse map: source position of each output pixel
    su = np.cos(theta) * uu + np.sin(theta) * vv
    sv = -np.sin(theta) * uu + np.cos(theta) * vv
    sc = np.rint(su + cu).astype(np.int64)
    sr = np.rint(sv + cv).astype(np.int64)
    valid = (sr >= 0) & (sr < rows) & (sc >= 0) & (sc < cols)
    out = np.zeros_like(a)
    out[valid] = a[sr[valid], sc[valid]]
    side = 1 << (min(rows, cols).bit_length() - 1)
    while side >= 2:
        top = (rows - side) // 2
        left = (cols - side) // 2
        if valid[top : top + side, left : left + side].all():
            return ScalarGrid(out[top : top + side, left : left + side].copy())
        side >>= 1
    raise ValueError("rotation leaves no valid power-of-two crop")


def save_grid_pgm(grid: ScalarGrid, path) -> tuple[float, float]:
    """Persist a grid as binary 16-bit PGM, linearly quantized.

    Returns the (vmin, vmax) used for quantization so values can be
    recovered up to the 16-bit step.
    """
    v = grid.values
    vmin = float(v.min())
    vmax = float(v.max())
    if vmax > vmin:
        q = np.rint((v - vmin) / (vmax - vmin) * 65535.0).astype(">u2")
    else:
        q = np.zeros(v.shape, dtype=">u2")
    header = f"P5\n{v.shape[1]} {v.shape[0]}\n65535\n".encode("ascii")
    Path(path).write_bytes(header + q.tobytes())
    return vmin, vmax
