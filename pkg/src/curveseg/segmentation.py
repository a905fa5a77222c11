"""Curvature analysis of fitted boundaries and curve segment extraction.

Signed curvature of the fit u(t) = x(t) + j*y(t),

    K(t) = (x' y'' - y' x'') / (x'^2 + y'^2)^(3/2),

is evaluated from the exact harmonic derivatives.  Its extrema in |K|
mark segment endpoints: for an elongated support region these are the
two band tips, and averaging the two boundary halves between them
yields the band's spine, the final parametric curve segment.  Regions
that merged several curve segments have more than two extrema; each
extremum then contributes one segment built from its two flanking
boundary arcs, whose averaged far ends meet near the region centroid.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import maximum_filter1d

from .descriptors import FourierDescriptor, evaluate, derivative

__all__ = [
    "CurvatureProfile",
    "CurveSegment",
    "curvature_profile",
    "find_endpoints",
    "extract_segment",
    "extract_multi",
]

logger = logging.getLogger(__name__)

DEGENERATE_SPEED = 1e-6
ARC_RATIO_WARN = 10.0


@dataclass(frozen=True)
class CurvatureProfile:
    """Signed curvature sampled at M uniform parameters over one period."""

    params: np.ndarray
    kappa: np.ndarray

    def __post_init__(self):
        if len(self.params) != len(self.kappa):
            raise ValueError("params and kappa must have equal length")
        if len(self.params) < 64:
            raise ValueError("profile needs at least 64 samples")
        if not np.all(np.isfinite(self.kappa)):
            raise ValueError("curvature values must be finite")

    @property
    def samples(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class CurveSegment:
    """Sampled parametric curve segment with its two endpoint markers."""

    points: np.ndarray
    source_label: int = -1

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
            raise ValueError("segment needs at least 2 (x, y) points")
        if not np.all(np.isfinite(pts)):
            raise ValueError("segment contains non-finite coordinates")
        object.__setattr__(self, "points", pts)

    @property
    def endpoints(self) -> np.ndarray:
        return np.array([self.points[0], self.points[-1]])


def curvature_profile(desc: FourierDescriptor, M: int = 256) -> CurvatureProfile:
    """Evaluate K(t) at M uniform parameters from analytic derivatives.

    Samples with near-zero speed (below 1e-6) copy the curvature of the
    circularly nearest well-conditioned sample; a descriptor that is
    degenerate everywhere (a point) is rejected.
    """
    if M < 64:
        raise ValueError("M must be at least 64")
    params = np.arange(M, dtype=np.float64) * (desc.T / M)
    d1 = derivative(desc, params, 1)
    d2 = derivative(desc, params, 2)
    speed = np.abs(d1)
    degenerate = speed < DEGENERATE_SPEED
    if degenerate.all():
        raise ValueError("descriptor degenerates to a point; curvature undefined")
    num = np.imag(np.conj(d1) * d2)
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa = num / speed**3
    if degenerate.any():
        good = np.nonzero(~degenerate)[0]
        for i in np.nonzero(degenerate)[0]:
            dist = np.minimum((good - i) % M, (i - good) % M)
            kappa[i] = kappa[good[np.argmin(dist)]]
        logger.warning(
            "curvature: %d of %d samples below speed %.0e; copied nearest values",
            int(degenerate.sum()), M, DEGENERATE_SPEED,
        )
    return CurvatureProfile(params=params, kappa=kappa)


def _parabolic_offset(y0: float, y1: float, y2: float) -> float:
    den = y0 - 2.0 * y1 + y2
    if abs(den) < 1e-12:
        return 0.0
    return float(np.clip(0.5 * (y0 - y2) / den, -0.5, 0.5))


def find_endpoints(profile: CurvatureProfile) -> np.ndarray:
    """Parameters of the segment endpoints: local maxima of |kappa|.

    Circular non-maximum suppression with window M/16 keeps peaks at
    least twice the median |kappa|; surviving peaks are refined by
    3-point parabolic interpolation.  If fewer than two survive (e.g. a
    constant-curvature circle), the two largest samples are returned.
    """
    a = np.abs(profile.kappa)
    M = profile.samples
    period = float(profile.params[-1] + (profile.params[1] - profile.params[0]))
    step = period / M
    w = max(1, M // 16)
    winmax = maximum_filter1d(a, size=2 * w + 1, mode="wrap")
    med = float(np.median(a))
    is_peak = (a >= winmax) & (a >= 2.0 * med)
    cand = np.nonzero(is_peak)[0]
    cand_set = set(int(i) for i in cand)
    kept = [
        int(i)
        for i in cand
        if not ((int(i) - 1) % M in cand_set and a[(int(i) - 1) % M] == a[int(i)])
    ]
    if len(kept) < 2:
        order = np.lexsort((np.arange(M), -a))
        top = np.sort(order[:2])
        return profile.params[top].copy()
    refined = []
    for i in kept:
        delta = _parabolic_offset(a[(i - 1) % M], a[i], a[(i + 1) % M])
        refined.append(((i + delta) % M) * step)
    return np.sort(np.array(refined))


def _arc_points(desc, p_from: float, span: float, n_dense: int) -> np.ndarray:
    """Dense (x, y) samples from parameter p_from over a signed span."""
    ts = p_from + np.linspace(0.0, span, n_dense)
    u = evaluate(desc, ts)
    return np.column_stack([u.real, u.imag])


def _resample_by_arclength(pts: np.ndarray, L: int):
    """Resample a polyline to L points equally spaced along its length."""
    seg = np.hypot(*np.diff(pts, axis=0).T)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    total = cum[-1]
    if total <= 0.0:
        return np.repeat(pts[:1], L, axis=0), 0.0
    targets = np.linspace(0.0, total, L)
    x = np.interp(targets, cum, pts[:, 0])
    y = np.interp(targets, cum, pts[:, 1])
    return np.column_stack([x, y]), float(total)


def _auto_samples(length_px: float) -> int:
    return max(16, int(round(length_px)))


def extract_segment(
    desc: FourierDescriptor,
    p1: float,
    p2: float,
    L: int | None = None,
    source_label: int = -1,
) -> CurveSegment:
    """Average the two boundary halves between parameters p1 and p2.

    The boundary is split at p1 and p2; both arcs are resampled by arc
    length to L points running p1 -> p2 and averaged pointwise, so the
    result starts at the fit's point for p1 and ends at the one for p2.
    L defaults to the longer arc's pixel length (at least 16).  A length
    ratio above 10 between the arcs is suspicious (the averaged curve
    mixes unrelated boundary parts) and raises a RuntimeWarning, but
    extraction proceeds.
    """
    T = desc.T
    span_fwd = (p2 - p1) % T
    if span_fwd == 0.0:
        raise ValueError("p1 and p2 must differ modulo the period")
    span_bwd = T - span_fwd
    n_dense = 512
    fwd = _arc_points(desc, p1, span_fwd, n_dense)
    bwd = _arc_points(desc, p1, -span_bwd, n_dense)
    if L is None:
        lf = np.hypot(*np.diff(fwd, axis=0).T).sum()
        lb = np.hypot(*np.diff(bwd, axis=0).T).sum()
        L = _auto_samples(max(lf, lb))
    rf, len_f = _resample_by_arclength(fwd, L)
    rb, len_b = _resample_by_arclength(bwd, L)
    lo, hi = sorted((len_f, len_b))
    if lo > 0 and hi / lo > ARC_RATIO_WARN:
        warnings.warn(
            f"boundary arcs between endpoints have mismatched lengths "
            f"({hi:.1f}px vs {lo:.1f}px); averaged segment may be unreliable",
            RuntimeWarning,
            stacklevel=2,
        )
    return CurveSegment(points=0.5 * (rf + rb), source_label=source_label)


def extract_multi(
    desc: FourierDescriptor,
    endpoints,
    centroid: tuple[float, float],
    L: int | None = None,
    source_label: int = -1,
) -> list[CurveSegment]:
    """One segment per curvature extremum of a merged support region.

    Each extremum's two flanking boundary arcs (to its circular
    neighbors among the endpoints) are resampled by arc length and
    averaged, both running away from the extremum; for a star-shaped
    merged region the averaged far ends meet near `centroid`, which is
    the anchor the pairing assumes.  With two endpoints this reduces
    exactly to extract_segment.
    """
    params = np.sort(np.unique(np.asarray(endpoints, dtype=np.float64) % desc.T))
    if len(params) < 2:
        raise ValueError("need at least two distinct endpoint parameters")
    if len(params) == 2:
        return [extract_segment(desc, params[0], params[1], L, source_label)]
    T = desc.T
    n = len(params)
    segments = []
    n_dense = 512
    for i in range(n):
        p = params[i]
        span_fwd = (params[(i + 1) % n] - p) % T
        span_bwd = (p - params[(i - 1) % n]) % T
        fwd = _arc_points(desc, p, span_fwd, n_dense)
        bwd = _arc_points(desc, p, -span_bwd, n_dense)
        Li = L
        if Li is None:
            lf = np.hypot(*np.diff(fwd, axis=0).T).sum()
            lb = np.hypot(*np.diff(bwd, axis=0).T).sum()
            Li = _auto_samples(max(lf, lb))
        rf, _ = _resample_by_arclength(fwd, Li)
        rb, _ = _resample_by_arclength(bwd, Li)
        segments.append(CurveSegment(points=0.5 * (rf + rb), source_label=source_label))
    return segments
