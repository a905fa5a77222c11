"""End-to-end extraction pipeline and result export.

run() chains the stages: LoG response -> positive threshold -> connected
support regions -> per region boundary trace, Fourier fit, curvature
extrema and two-half averaging.  Everything is deterministic: identical
image and config produce byte-identical JSON.
"""

from __future__ import annotations

import base64
import json
import warnings
from dataclasses import dataclass, asdict

import numpy as np
from scipy.spatial import cKDTree

from .errors import EmptyResultError
from .filtering import respond
from .regions import SupportRegion, label_components, threshold_positive, trace_boundary
from .descriptors import fit_fourier
from .segmentation import CurveSegment, curvature_profile, extract_multi, extract_segment, find_endpoints
from .validation import check_gray_image, check_in_range

__all__ = ["PipelineConfig", "SegmentSet", "run", "export", "EXPORT_FORMATS"]

EXPORT_FORMATS = ("json", "svg", "csv")
POLARITIES = ("positive", "negative")


@dataclass(frozen=True)
class PipelineConfig:
    """User-facing knobs of the extraction pipeline.

    harmonics is either "auto" (contour-length dependent default) or a
    fixed positive integer; polarity selects which sign of the LoG
    response forms the support regions (positive = the low-brightness
    side of edges).
    """

    sigma: float = 2.0
    tau_frac: float = 0.5
    min_area: int = 10
    harmonics: int | str = "auto"
    polarity: str = "positive"
    samples: int = 256

    def __post_init__(self):
        check_in_range(self.sigma, 0.5, 64.0, name="sigma")
        check_in_range(self.tau_frac, 0.0, 1.0, name="tau_frac", open_lo=True, open_hi=True)
        if int(self.min_area) < 1:
            raise ValueError("min_area must be at least 1")
        object.__setattr__(self, "min_area", int(self.min_area))
        if self.harmonics != "auto":
            h = int(self.harmonics)
            if h < 1:
                raise ValueError("harmonics must be 'auto' or a positive integer")
            object.__setattr__(self, "harmonics", h)
        if self.polarity not in POLARITIES:
            raise ValueError(f"polarity must be one of {POLARITIES}")
        if int(self.samples) < 64:
            raise ValueError("samples must be at least 64")
        object.__setattr__(self, "samples", int(self.samples))

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SegmentSet:
    """Pipeline output: segments plus provenance and diagnostics."""

    width: int
    height: int
    path: str | None
    config: PipelineConfig
    segments: list[CurveSegment]
    diagnostics: list[dict]


def _region_segments(region: SupportRegion, config: PipelineConfig):
    """Segments and diagnostics for one support region."""
    diag = {
        "label": region.label,
        "area": region.area,
        "endpoint_count": 0,
        "warnings": [],
    }
    try:
        contour = trace_boundary(region)
    except ValueError as exc:
        diag["warnings"].append(f"boundary: {exc}")
        return [], diag
    if contour.T < 8:
        diag["warnings"].append(f"boundary too short to fit (T={contour.T})")
        return [], diag
    harmonics = None if config.harmonics == "auto" else config.harmonics
    desc = fit_fourier(contour, harmonics=harmonics)
    try:
        profile = curvature_profile(desc, config.samples)
    except ValueError as exc:
        diag["warnings"].append(f"curvature: {exc}")
        return [], diag
    endpoints = find_endpoints(profile)
    diag["endpoint_count"] = int(len(endpoints))
    centroid_xy = (region.centroid[1] + 0.5, region.centroid[0] + 0.5)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if len(endpoints) <= 2:
            segs = [extract_segment(desc, endpoints[0], endpoints[-1], source_label=region.label)]
        else:
            segs = extract_multi(desc, endpoints, centroid_xy, source_label=region.label)
    for wmsg in caught:
        diag["warnings"].append(str(wmsg.message))

    # A real curve segment is the spine of its support region; averaging
    # arcs from opposite flanks of a merged region can instead cut across
    # unsupported space.  Reject segments straying off the region.
    support_tol = max(2.0, 1.2 * config.sigma)
    tree = cKDTree(
        np.column_stack([region.pixels[:, 1] + 0.5, region.pixels[:, 0] + 0.5])
    )
    kept = []
    for seg in segs:
        stray = float(tree.query(seg.points)[0].max())
        if stray <= support_tol:
            kept.append(seg)
        else:
            diag["warnings"].append(
                f"segment rejected: strays {stray:.1f}px from its support region"
            )
    return kept, diag


def run(image, config: PipelineConfig | None = None, path: str | None = None) -> SegmentSet:
    """Extract parametric curve segments from a grayscale image.

    Raises FlatImageError when the response has no positive values and
    EmptyResultError when no region reaches min_area.
    """
    img = check_gray_image(image)
    config = config or PipelineConfig()
    resp = respond(img, config.sigma)
    if config.polarity == "negative":
        resp = -resp
    mask = threshold_positive(resp, config.tau_frac)
    regions = label_components(mask, config.min_area)
    if not regions:
        raise EmptyResultError(
            f"no support region reached min_area={config.min_area}"
        )
    segments: list[CurveSegment] = []
    diagnostics: list[dict] = []
    for region in regions:
        segs, diag = _region_segments(region, config)
        segments.extend(segs)
        diagnostics.append(diag)
    return SegmentSet(
        width=img.shape[1],
        height=img.shape[0],
        path=path,
        config=config,
        segments=segments,
        diagnostics=diagnostics,
    )


def _segments_payload(sset: SegmentSet) -> dict:
    return {
        "image": {"width": sset.width, "height": sset.height, "path": sset.path},
        "config": sset.config.to_dict(),
        "segments": [
            {
                "id": i,
                "region_label": seg.source_label,
                "endpoints": [[float(x), float(y)] for x, y in seg.endpoints],
                "points": [[float(x), float(y)] for x, y in seg.points],
            }
            for i, seg in enumerate(sset.segments)
        ],
        "diagnostics": sset.diagnostics,
    }


_SVG_COLORS = (
    "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
)


def _export_svg(sset: SegmentSet, background=None) -> bytes:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{sset.width}" '
        f'height="{sset.height}" viewBox="0 0 {sset.width} {sset.height}">',
    ]
    if background is not None:
        from .image_io import encode_png

        b64 = base64.b64encode(encode_png(background)).decode("ascii")
        lines.append(
            f'<image href="data:image/png;base64,{b64}" x="0" y="0" '
            f'width="{sset.width}" height="{sset.height}"/>'
        )
    for i, seg in enumerate(sset.segments):
        color = _SVG_COLORS[i % len(_SVG_COLORS)]
        pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in seg.points)
        lines.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1"/>'
        )
        for x, y in seg.endpoints:
            lines.append(
                f'<circle cx="{x:.3f}" cy="{y:.3f}" r="2" fill="{color}"/>'
            )
    lines.append("</svg>")
    return "\n".join(lines).encode("utf-8")


def _export_csv(sset: SegmentSet) -> bytes:
    rows = ["segment_id,k,x,y"]
    for i, seg in enumerate(sset.segments):
        for k, (x, y) in enumerate(seg.points):
            rows.append(f"{i},{k},{float(x)!r},{float(y)!r}")
    return ("\n".join(rows) + "\n").encode("utf-8")


def export(sset: SegmentSet, fmt: str = "json", background=None) -> bytes:
    """Serialize a SegmentSet as JSON, SVG or CSV bytes.

    SVG draws each segment as a polyline with circular endpoint markers,
    optionally over the source image passed as `background`.
    """
    if fmt == "json":
        return json.dumps(_segments_payload(sset), indent=2).encode("utf-8")
    if fmt == "svg":
        return _export_svg(sset, background=background)
    if fmt == "csv":
        return _export_csv(sset)
    raise ValueError(f"unknown export format {fmt!r}; expected one of {EXPORT_FORMATS}")
