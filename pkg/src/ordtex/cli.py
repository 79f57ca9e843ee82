"""Batch command-line front end.

Verbs: `generate` writes synthetic surfaces (PGM plus a JSON sidecar
carrying the exact generator spec), `analyze` runs the scan-path ordinal
pipeline over images or directories into CSV, `plot` renders CSV rows
onto an entropy-complexity or entropy-Fisher plane as SVG, and `compare`
scores the scan-path method against 2D ordinal patches.

Everything is deterministic for fixed seeds: CSV floats are fixed at 12
significant digits, rows keep input order regardless of worker
completion order, and manifests carry no timestamps.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

from . import __version__
from .hilbert import unfold
from .imageio import (
    TRANSFORM_NAMES,
    center_crop_pow2,
    load_image,
    save_grid_pgm,
    to_scalar,
    transform,
)
from .ordinal import MAX_ORDER, MIN_ORDER, UndersampledWarning, build_distribution
from .patterns2d import PatchSpec, build_distribution_2d
from .quantifiers import cecp_bounds, info_triple
from .synth import DEFAULT_WEIGHTS, CascadeSpec, FbsSpec
from .synth import brownian_surface, cascade, ordered_variant, randomized_variant

CSV_COLUMNS = (
    "label", "source", "method", "D", "tau", "transform",
    "H", "C", "F", "samples", "undersampled", "seed",
)

IMAGE_SUFFIXES = (".pgm", ".ppm", ".png")

# default embedding dimension per generator kind; plain images get 8
_DEFAULT_DIM = {"cascade": 6, "fbs": 5}

_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


class InputError(Exception):
    """Bad arguments or unusable inputs; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


@dataclass(frozen=True)
class AnalysisRow:
    label: str
    source: str
    method: str
    dim: int
    tau: int
    transform: str
    h: float
    c: float
    f: float
    samples: int
    undersampled: bool
    seed: int | None

    def as_csv(self) -> list[str]:
        return [
            self.label,
            self.source,
            self.method,
            str(self.dim),
            str(self.tau),
            self.transform,
            f"{self.h:.12g}",
            f"{self.c:.12g}",
            f"{self.f:.12g}",
            str(self.samples),
            "true" if self.undersampled else "false",
            "" if self.seed is None else str(self.seed),
        ]


# ---------------------------------------------------------------- helpers


def _probs_arg(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad probability list {text!r}") from None


def _patch_arg(text: str) -> tuple[int, int]:
    try:
        dx, dy = text.lower().split("x")
        return int(dx), int(dy)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"bad patch shape {text!r} (expected ROWSxCOLS, e.g. 2x4)"
        ) from None


def _transforms_arg(text: str) -> tuple[str, ...]:
    names = tuple(t.strip() for t in text.split(",") if t.strip())
    allowed = ("id",) + TRANSFORM_NAMES
    for name in names:
        if name not in allowed:
            raise argparse.ArgumentTypeError(
                f"unknown transform {name!r} (choose from {', '.join(allowed)})"
            )
    if not names:
        raise argparse.ArgumentTypeError("empty transform list")
    return names


def _check_dim(dim: int) -> int:
    if not MIN_ORDER <= dim <= MAX_ORDER:
        raise InputError(
            f"embedding dimension {dim} unsupported: alphabet size "
            f"{math.factorial(dim)} outside the tractable range "
            f"[{MIN_ORDER}, {MAX_ORDER}]"
        )
    return dim


def _read_config(path: str) -> list[str]:
    """key=value lines become long flags, spliced before explicit ones."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read config file {path}: {exc}") from exc
    extra: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        extra.extend([f"--{key}", value])
    return extra


def _splice_config(argv: list[str]) -> list[str]:
    for i, token in enumerate(argv):
        if token == "--config":
            if i + 1 >= len(argv):
                raise InputError("--config requires a file path")
            return argv[:1] + _read_config(argv[i + 1]) + argv[1:]
        if token.startswith("--config="):
            return argv[:1] + _read_config(token.split("=", 1)[1]) + argv[1:]
    return argv


def _expand_inputs(tokens) -> list[Path]:
    paths: list[Path] = []
    for token in tokens:
        p = Path(token)
        if p.is_dir():
            found = sorted(
                q for q in p.iterdir()
                if q.is_file() and q.suffix.lower() in IMAGE_SUFFIXES
            )
            if not found:
                raise InputError(f"{p}: no image files ({'/'.join(IMAGE_SUFFIXES)})")
            paths.extend(found)
        else:
            paths.append(p)
    return paths


def _read_sidecar(path: Path) -> dict:
    side = Path(str(path) + ".json")
    if not side.exists():
        return {}
    try:
        loaded = json.loads(side.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return {}
    return loaded if isinstance(loaded, dict) else {}


def _write_manifest(out_path: Path, verb: str, arguments: dict, inputs, outputs):
    manifest = {
        "tool": "ordtex",
        "version": __version__,
        "verb": verb,
        "arguments": arguments,
        "inputs": [str(p) for p in inputs],
        "outputs": [str(p) for p in outputs],
    }
    path = Path(str(out_path) + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", "utf-8")


def _write_csv(out: Path, rows: list[AnalysisRow]):
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(row.as_csv())


def _run_batch(paths, worker):
    """Apply worker to each path in parallel; results stay in input order."""
    def guarded(path):
        try:
            return None, worker(path)
        except (OSError, ValueError) as exc:
            return f"{path}: {exc}", None

    failures: list[str] = []
    rows: list[AnalysisRow] = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UndersampledWarning)
        with ThreadPoolExecutor(max_workers=min(8, max(1, len(paths)))) as pool:
            for err, result in pool.map(guarded, paths):
                if err is not None:
                    failures.append(err)
                else:
                    rows.extend(result)
    return rows, failures


# ------------------------------------------------------------------ verbs


def _cmd_generate(args) -> int:
    if args.kind == "cascade":
        spec = CascadeSpec(probs=args.probs, steps=args.steps)
        grid = cascade(spec)
        seed = None
        if args.variant == "ordered":
            grid = ordered_variant(grid)
        elif args.variant == "randomized":
            seed = args.seed
            grid = randomized_variant(grid, seed)
        suffix = "" if args.variant == "none" else f"_{args.variant}"
        label = f"cascade_s{args.steps}{suffix}"
        out = Path(args.out or f"{label}.pgm")
        sidecar = {
            "kind": "cascade",
            "label": label,
            "probs": list(spec.probs),
            "steps": spec.steps,
            "variant": args.variant,
            "seed": seed,
        }
        arguments = {
            "probs": list(spec.probs), "steps": spec.steps,
            "variant": args.variant, "seed": seed,
        }
    else:
        spec = FbsSpec(hurst=args.hurst, level=args.level, seed=args.seed)
        grid = brownian_surface(spec)
        label = f"fbs_h{spec.hurst:g}"
        out = Path(args.out or f"{label}_seed{spec.seed}.pgm")
        sidecar = {
            "kind": "fbs",
            "label": label,
            "hurst": spec.hurst,
            "level": spec.level,
            "seed": spec.seed,
        }
        arguments = {"hurst": spec.hurst, "level": spec.level, "seed": spec.seed}
    vmin, vmax = save_grid_pgm(grid, out)
    sidecar["vmin"] = vmin
    sidecar["vmax"] = vmax
    side_path = Path(str(out) + ".json")
    side_path.write_text(json.dumps(sidecar, indent=2, sort_keys=True) + "\n", "utf-8")
    _write_manifest(out, "generate", arguments, [], [out, side_path])
    print(f"wrote {out}")
    return 0


def _analyze_one(path: Path, dim, delay, transforms) -> list[AnalysisRow]:
    record, pixels = load_image(path)
    scalars = to_scalar(pixels, record.channels)
    sidecar = _read_sidecar(path)
    label = sidecar.get("label") or record.label
    d = dim if dim is not None else _DEFAULT_DIM.get(sidecar.get("kind"), 8)
    seed = sidecar.get("seed")
    base = center_crop_pow2(scalars).grid
    rows = []
    for name in transforms:
        grid = base if name == "id" else transform(base, name)
        dist = build_distribution(unfold(grid), d, delay)
        trip = info_triple(dist)
        rows.append(AnalysisRow(
            label=label, source=str(path), method="hilbert", dim=d, tau=delay,
            transform=name, h=trip.h, c=trip.c, f=trip.f,
            samples=dist.samples, undersampled=dist.undersampled,
            seed=seed if isinstance(seed, int) else None,
        ))
    return rows


def _cmd_analyze(args) -> int:
    if args.dim is not None:
        _check_dim(args.dim)
    if args.delay < 1:
        raise InputError("delay must be >= 1")
    paths = _expand_inputs(args.inputs)
    out = Path(args.out)
    rows, failures = _run_batch(
        paths, lambda p: _analyze_one(p, args.dim, args.delay, args.transforms)
    )
    _write_csv(out, rows)
    _write_manifest(out, "analyze", {
        "dim": args.dim, "delay": args.delay, "transforms": list(args.transforms),
    }, paths, [out])
    print(f"wrote {out} ({len(rows)} rows)")
    for failure in failures:
        print(f"error: {failure}", file=sys.stderr)
    return 1 if failures else 0


def _compare_one(path: Path, dim: int, spec: PatchSpec) -> list[AnalysisRow]:
    record, pixels = load_image(path)
    grid = center_crop_pow2(to_scalar(pixels, record.channels)).grid
    label = _read_sidecar(path).get("label") or record.label
    scan = build_distribution(unfold(grid), dim, 1)
    patch = build_distribution_2d(grid, spec)
    rows = []
    for method, dist in (("hilbert", scan), ("patch2d", patch)):
        trip = info_triple(dist)
        rows.append(AnalysisRow(
            label=label, source=str(path), method=method, dim=dim, tau=1,
            transform="id", h=trip.h, c=trip.c, f=trip.f,
            samples=dist.samples, undersampled=dist.undersampled, seed=None,
        ))
    return rows


def _cmd_compare(args) -> int:
    _check_dim(args.dim)
    dx, dy = args.patch
    try:
        spec = PatchSpec(dx=dx, dy=dy)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if spec.order != args.dim:
        raise InputError(
            f"patch {dx}x{dy} has {spec.order} cells but the embedding "
            f"dimension is {args.dim}; they must match"
        )
    paths = _expand_inputs(args.inputs)
    out = Path(args.out)
    rows, failures = _run_batch(paths, lambda p: _compare_one(p, args.dim, spec))
    _write_csv(out, rows)
    _write_manifest(out, "compare", {
        "dim": args.dim, "patch": f"{dx}x{dy}",
    }, paths, [out])
    print(f"wrote {out} ({len(rows)} rows)")
    for failure in failures:
        print(f"error: {failure}", file=sys.stderr)
    return 1 if failures else 0


# ------------------------------------------------------------------- plot


def _read_rows(csv_path: Path) -> list[dict]:
    try:
        with open(csv_path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            fields = reader.fieldnames or []
            missing = [c for c in CSV_COLUMNS if c not in fields]
            if missing:
                raise InputError(
                    f"{csv_path}: missing CSV columns {', '.join(missing)}"
                )
            return list(reader)
    except OSError as exc:
        raise InputError(f"cannot read {csv_path}: {exc}") from exc


def _svg_text(x, y, s, size=13, anchor="start", color="#222"):
    return (
        f'<text x="{x:.1f}" y="{y:.1f}" font-family="sans-serif" '
        f'font-size="{size}" text-anchor="{anchor}" fill="{color}">'
        f"{escape(s)}</text>"
    )


def _cmd_plot(args) -> int:
    rows = _read_rows(Path(args.csv))
    ykey = "C" if args.plane == "cecp" else "F"
    ylabel = "statistical complexity" if ykey == "C" else "Fisher information"

    left, top, width, height = 70.0, 30.0, 470.0, 450.0

    def px(h):
        return left + h * width

    def py(v):
        return top + (1.0 - v) * height

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="720" height="540" '
        'viewBox="0 0 720 540">',
        '<rect width="720" height="540" fill="white"/>',
    ]
    # frame and ticks
    for i in range(6):
        t = i / 5.0
        parts.append(
            f'<line x1="{px(t):.1f}" y1="{top:.1f}" x2="{px(t):.1f}" '
            f'y2="{top + height:.1f}" stroke="#eee"/>'
        )
        parts.append(
            f'<line x1="{left:.1f}" y1="{py(t):.1f}" x2="{left + width:.1f}" '
            f'y2="{py(t):.1f}" stroke="#eee"/>'
        )
        parts.append(_svg_text(px(t), top + height + 18, f"{t:.1f}", anchor="middle"))
        parts.append(_svg_text(left - 8, py(t) + 4, f"{t:.1f}", anchor="end"))
    parts.append(
        f'<rect x="{left:.1f}" y="{top:.1f}" width="{width:.1f}" '
        f'height="{height:.1f}" fill="none" stroke="#444"/>'
    )
    parts.append(
        _svg_text(left + width / 2, top + height + 42, "normalized entropy",
                  size=15, anchor="middle")
    )
    parts.append(
        f'<text x="18" y="{top + height / 2:.1f}" font-family="sans-serif" '
        f'font-size="15" text-anchor="middle" fill="#222" '
        f'transform="rotate(-90 18 {top + height / 2:.1f})">'
        f"{escape(ylabel)}</text>"
    )

    legend: list[tuple[str, str]] = []

    # complexity bounds, one pair of curves per embedding dimension present
    if args.plane == "cecp":
        dims = sorted({int(r["D"]) for r in rows})
        for d in dims:
            bounds = cecp_bounds(math.factorial(d))
            for curve in (bounds.c_max, bounds.c_min):
                pts = " ".join(
                    f"{px(h):.2f},{py(c):.2f}" for h, c in zip(bounds.hs, curve)
                )
                parts.append(
                    f'<polyline fill="none" stroke="#999" stroke-width="1" '
                    f'points="{pts}"/>'
                )
            legend.append((f"bounds D={d}", "#999"))

    def color_of(i):
        return _PALETTE[i % len(_PALETTE)]

    if args.group:
        if args.group not in CSV_COLUMNS:
            raise InputError(f"unknown group column {args.group!r}")
        grouped: dict[str, list[tuple[float, float]]] = {}
        for r in rows:
            grouped.setdefault(r[args.group], []).append(
                (float(r["H"]), float(r[ykey]))
            )
        for i, key in enumerate(sorted(grouped)):
            pts = grouped[key]
            n = len(pts)
            mx = sum(p[0] for p in pts) / n
            my = sum(p[1] for p in pts) / n
            sx = (sum((p[0] - mx) ** 2 for p in pts) / (n - 1)) ** 0.5 if n > 1 else 0.0
            sy = (sum((p[1] - my) ** 2 for p in pts) / (n - 1)) ** 0.5 if n > 1 else 0.0
            color = color_of(i)
            parts.append(
                f'<line x1="{px(mx - sx):.2f}" y1="{py(my):.2f}" '
                f'x2="{px(mx + sx):.2f}" y2="{py(my):.2f}" '
                f'stroke="{color}" stroke-width="1.5"/>'
            )
            parts.append(
                f'<line x1="{px(mx):.2f}" y1="{py(my - sy):.2f}" '
                f'x2="{px(mx):.2f}" y2="{py(my + sy):.2f}" '
                f'stroke="{color}" stroke-width="1.5"/>'
            )
            parts.append(
                f'<circle cx="{px(mx):.2f}" cy="{py(my):.2f}" r="4" '
                f'fill="{color}"/>'
            )
            legend.append((f"{key} (n={n})", color))
    else:
        order: dict[str, str] = {}
        for r in rows:
            order.setdefault(r["label"], color_of(len(order)))
        for r in rows:
            color = order[r["label"]]
            parts.append(
                f'<circle cx="{px(float(r["H"])):.2f}" '
                f'cy="{py(float(r[ykey])):.2f}" r="3.5" fill="{color}" '
                f'fill-opacity="0.85"/>'
            )
        if len(order) <= 15:
            legend.extend(order.items())

    for i, (name, color) in enumerate(legend[:24]):
        y = top + 12 + 20 * i
        parts.append(f'<circle cx="{left + width + 24:.1f}" cy="{y:.1f}" r="5" '
                     f'fill="{color}"/>')
        parts.append(_svg_text(left + width + 36, y + 4, name))

    parts.append("</svg>")
    out = Path(args.out)
    out.write_text("\n".join(parts) + "\n", encoding="utf-8")
    _write_manifest(out, "plot", {
        "plane": args.plane, "group": args.group,
    }, [args.csv], [out])
    print(f"wrote {out}")
    return 0


# ------------------------------------------------------------------ entry


def build_parser() -> _Parser:
    parser = _Parser(prog="ordtex", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"ordtex {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    gen = sub.add_parser("generate", help="write a synthetic surface as PGM")
    gen.add_argument("kind", choices=("cascade", "fbs"))
    gen.add_argument("--probs", type=_probs_arg, default=DEFAULT_WEIGHTS,
                     help="cascade quadrant weights, comma separated")
    gen.add_argument("--steps", type=int, default=9,
                     help="cascade recursion depth (default 9, a 512x512 grid)")
    gen.add_argument("--variant", choices=("none", "ordered", "randomized"),
                     default="none", help="cascade rearrangement variant")
    gen.add_argument("--hurst", type=float, default=0.5,
                     help="fbs Hurst index in (0,1)")
    gen.add_argument("--level", type=int, default=9,
                     help="fbs dyadic level (side 2^level)")
    gen.add_argument("--seed", type=int, default=0,
                     help="generator seed (fbs and randomized cascade)")
    gen.add_argument("--out", help="output PGM path (default derived from params)")
    gen.add_argument("--config", help="key=value config file")
    gen.set_defaults(func=_cmd_generate)

    ana = sub.add_parser("analyze", help="scan-path ordinal analysis to CSV")
    ana.add_argument("inputs", nargs="+", help="image files or directories")
    ana.add_argument("--dim", type=int, default=None,
                     help="embedding dimension 2..8 (default per input kind)")
    ana.add_argument("--delay", type=int, default=1, help="embedding delay")
    ana.add_argument("--transforms", type=_transforms_arg, default=("id",),
                     help="comma list from id,rot90,rot180,rot270,mirror")
    ana.add_argument("--out", required=True, help="output CSV path")
    ana.add_argument("--config", help="key=value config file")
    ana.set_defaults(func=_cmd_analyze)

    plo = sub.add_parser("plot", help="render a CSV onto a causality plane")
    plo.add_argument("csv", help="CSV produced by analyze/compare")
    plo.add_argument("--plane", choices=("cecp", "fecp"), default="cecp")
    plo.add_argument("--group", default=None,
                     help="CSV column to aggregate into mean +/- std error bars")
    plo.add_argument("--out", required=True, help="output SVG path")
    plo.add_argument("--config", help="key=value config file")
    plo.set_defaults(func=_cmd_plot)

    cmp_ = sub.add_parser("compare", help="scan path vs 2D patches, two rows each")
    cmp_.add_argument("inputs", nargs="+", help="image files or directories")
    cmp_.add_argument("--dim", type=int, default=8,
                      help="embedding dimension (must equal patch cells)")
    cmp_.add_argument("--patch", type=_patch_arg, default=(2, 4),
                      help="patch shape ROWSxCOLS (default 2x4)")
    cmp_.add_argument("--out", required=True, help="output CSV path")
    cmp_.add_argument("--config", help="key=value config file")
    cmp_.set_defaults(func=_cmd_compare)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _splice_config(argv)
        args = build_parser().parse_args(argv)
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # computation failure, not an input problem
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
