"""Command line interface.

    curveseg extract <input> [options]      extract segments, write json/svg/csv
    curveseg debug-response <input> ...     dump the raw LoG response as PGM
    curveseg debug-regions <input> ...      dump labeled support regions

Exit codes: 0 success, 2 input errors, 3 empty-result conditions (flat
image, nothing above the area cut, or zero extracted segments).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import CurveSegError, EmptyResultError, FlatImageError
from .filtering import respond
from .image_io import read_image, write_pgm
from .pipeline import EXPORT_FORMATS, PipelineConfig, export, run
from .regions import label_components, threshold_positive

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_EMPTY = 3


def _add_common(p: argparse.ArgumentParser, *, thresholded: bool) -> None:
    p.add_argument("input", help="input image (.pgm or .png)")
    p.add_argument("--sigma", type=float, default=2.0, help="LoG scale in pixels")
    if thresholded:
        p.add_argument(
            "--threshold", type=float, default=0.5,
            help="relative response threshold in (0,1)",
        )
        p.add_argument("--min-area", type=int, default=10, help="minimum region area")
        p.add_argument(
            "--polarity", choices=("pos", "neg"), default="pos",
            help="response polarity forming the regions",
        )


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="curveseg", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("extract", help="extract parametric curve segments")
    _add_common(ex, thresholded=True)
    ex.add_argument("--harmonics", default="auto", help="'auto' or a positive integer")
    ex.add_argument("--samples", type=int, default=256, help="curvature samples per region")
    ex.add_argument("--format", choices=EXPORT_FORMATS, default="json")
    ex.add_argument("--out", type=Path, default=None, help="output path (default stdout)")

    dr = sub.add_parser("debug-response", help="dump the LoG response map")
    _add_common(dr, thresholded=False)
    dr.add_argument("--out", type=Path, required=True,
                    help="output base path; writes BASE.pgm and BASE.txt")

    dg = sub.add_parser("debug-regions", help="dump labeled support regions")
    _add_common(dg, thresholded=True)
    dg.add_argument("--out", type=Path, required=True,
                    help="output base path; writes BASE.png and BASE.json")
    return ap


def _config_from(args) -> PipelineConfig:
    harmonics = getattr(args, "harmonics", "auto")
    if harmonics != "auto":
        harmonics = int(harmonics)
    return PipelineConfig(
        sigma=args.sigma,
        tau_frac=args.threshold,
        min_area=args.min_area,
        harmonics=harmonics,
        polarity={"pos": "positive", "neg": "negative"}[args.polarity],
        samples=getattr(args, "samples", 256),
    )


def _cmd_extract(args) -> int:
    image = read_image(args.input)
    config = _config_from(args)
    result = run(image, config, path=str(args.input))
    background = image if args.format == "svg" else None
    payload = export(result, args.format, background=background)
    if args.out is None:
        sys.stdout.buffer.write(payload)
    else:
        args.out.write_bytes(payload)
    if not result.segments:
        print("no segments extracted", file=sys.stderr)
        return EXIT_EMPTY
    return EXIT_OK


def _cmd_debug_response(args) -> int:
    image = read_image(args.input)
    resp = respond(image, args.sigma)
    lo, hi = float(resp.min()), float(resp.max())
    scaled = np.zeros_like(resp) if hi == lo else (resp - lo) / (hi - lo)
    base = args.out
    write_pgm(base.with_suffix(".pgm"), scaled)
    base.with_suffix(".txt").write_text(f"min {lo!r}\nmax {hi!r}\n")
    return EXIT_OK


_PALETTE = [
    (230, 25, 75), (60, 180, 75), (255, 225, 25), (0, 130, 200),
    (245, 130, 48), (145, 30, 180), (70, 240, 240), (240, 50, 230),
    (210, 245, 60), (250, 190, 190), (0, 128, 128), (170, 110, 40),
]


def _cmd_debug_regions(args) -> int:
    image = read_image(args.input)
    config = _config_from(args)
    resp = respond(image, config.sigma)
    if config.polarity == "negative":
        resp = -resp
    mask = threshold_positive(resp, config.tau_frac)
    regions = label_components(mask, config.min_area)
    if not regions:
        raise EmptyResultError(f"no support region reached min_area={config.min_area}")

    indexed = np.zeros(image.shape, dtype=np.uint8)
    for reg in regions:
        indexed[reg.pixels[:, 0], reg.pixels[:, 1]] = 1 + (reg.label - 1) % len(_PALETTE)
    im = Image.fromarray(indexed, mode="P")
    palette = [0, 0, 0]
    for rgb in _PALETTE:
        palette.extend(rgb)
    im.putpalette(palette + [0] * (768 - len(palette) - 3))
    base = args.out
    im.save(base.with_suffix(".png"))

    meta = [
        {
            "label": reg.label,
            "area": reg.area,
            "centroid": [reg.centroid[0], reg.centroid[1]],
            "bbox": list(reg.bbox),
        }
        for reg in regions
    ]
    base.with_suffix(".json").write_text(json.dumps(meta, indent=2))
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {
        "extract": _cmd_extract,
        "debug-response": _cmd_debug_response,
        "debug-regions": _cmd_debug_regions,
    }[args.command]
    try:
        return handler(args)
    except (FlatImageError, EmptyResultError) as exc:
        print(f"curveseg: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (OSError, ValueError, CurveSegError) as exc:
        print(f"curveseg: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
