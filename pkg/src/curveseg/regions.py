"""Curve support regions: thresholding, labeling and boundary tracing.

The positive part of the LoG response is cut at a fraction of its
maximum; 8-connected components of the resulting mask are the curve
support regions.  Each region's outer boundary is traced with
Moore-neighbor following so it can be fed to the Fourier fit.

Contours are closed pixel-center polygons in (x, y) coordinates,
oriented so the region interior lies to the left of the direction of
travel (positive shoelace area with y pointing down, i.e. clockwise on
screen).  All curvature signs downstream depend on this convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import FlatImageError
from .validation import check_response_map

__all__ = [
    "BinaryMask",
    "SupportRegion",
    "Contour",
    "threshold_positive",
    "label_components",
    "trace_boundary",
    "signed_area",
]

BinaryMask = np.ndarray  # 2-D bool array, same geometry as its response map

_EIGHT = np.ones((3, 3), dtype=bool)

# Moore neighborhood ring, clockwise on screen starting at west.
_RING = [(0, -1), (-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1)]
_RING_INDEX = {off: i for i, off in enumerate(_RING)}


@dataclass(frozen=True)
class SupportRegion:
    """One labeled curve support region.

    pixels is an (area, 2) array of (row, col) indices sorted
    lexicographically; centroid is their exact arithmetic mean
    (row, col); bbox is (min_row, min_col, max_row, max_col).
    """

    label: int
    pixels: np.ndarray
    centroid: tuple[float, float]
    area: int
    bbox: tuple[int, int, int, int]


@dataclass(frozen=True)
class Contour:
    """Closed boundary polygon: (T, 2) array of (x, y) pixel centers.

    Consecutive points are 8-neighbors and the successor of the last
    point is the first; points may repeat where the region is one pixel
    wide.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 4:
            raise ValueError("contour needs at least 4 (x, y) points")
        object.__setattr__(self, "points", pts)

    @property
    def T(self) -> int:
        return len(self.points)


def signed_area(points) -> float:
    """Shoelace area of a closed (x, y) polygon (positive = interior-left)."""
    pts = np.asarray(points, dtype=np.float64)
    x, y = pts[:, 0], pts[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    return 0.5 * float(np.sum(x * yn - xn * y))


FLAT_RESPONSE = 1e-12


def threshold_positive(resp, tau_frac: float) -> BinaryMask:
    """Mask of response values above tau_frac times the positive maximum.

    Raises FlatImageError when the response has no meaningfully positive
    value (a constant image leaves only float noise below 1e-12).
    """
    r = check_response_map(resp)
    if not 0.0 < tau_frac < 1.0:
        raise ValueError(f"tau_frac must lie in (0, 1), got {tau_frac}")
    peak = r.max()
    if peak <= FLAT_RESPONSE:
        raise FlatImageError("response map has no positive values to threshold")
    return r > tau_frac * peak


def label_components(mask, min_area: int = 10) -> list[SupportRegion]:
    """8-connected components of `mask` with at least `min_area` pixels.

    Regions are relabeled 1..N ordered by descending area, ties broken
    by (min row, min col) of the bounding box.
    """
    m = np.asarray(mask, dtype=bool)
    if m.ndim != 2:
        raise ValueError("mask must be 2-D")
    lab, n = ndimage.label(m, structure=_EIGHT)
    if n == 0:
        return []
    areas = np.bincount(lab.ravel())[1:]
    slices = ndimage.find_objects(lab)
    entries = []
    for i in range(1, n + 1):
        if areas[i - 1] < min_area:
            continue
        sl = slices[i - 1]
        rows, cols = np.nonzero(lab[sl] == i)
        rows = rows + sl[0].start
        cols = cols + sl[1].start
        bbox = (int(rows.min()), int(cols.min()), int(rows.max()), int(cols.max()))
        entries.append((int(areas[i - 1]), bbox, rows, cols))
    entries.sort(key=lambda e: (-e[0], e[1][0], e[1][1]))
    regions = []
    for new_label, (area, bbox, rows, cols) in enumerate(entries, start=1):
        # integer sums keep the centroid independent of summation order
        centroid = (int(rows.sum(dtype=np.int64)) / area, int(cols.sum(dtype=np.int64)) / area)
        pixels = np.column_stack([rows, cols]).astype(np.int64)
        regions.append(
            SupportRegion(label=new_label, pixels=pixels, centroid=centroid, area=area, bbox=bbox)
        )
    return regions


def _moore_trace(mask: np.ndarray) -> list[tuple[int, int]]:
    """Moore-neighbor boundary following on a padded bool mask.

    Starts at the lexicographically smallest pixel with the west
    neighbor as backtrack and iterates the (pixel, backtrack) state
    machine until a state repeats (Jacob's criterion); returns the
    pixel cycle.
    """
    rows, cols = np.nonzero(mask)
    start = (int(rows[0]), int(cols[0]))  # nonzero scans row-major
    state = (start, 0)  # backtrack = west neighbor, ring index 0
    seen: dict[tuple, int] = {}
    seq: list[tuple[int, int]] = []
    while state not in seen:
        seen[state] = len(seq)
        (pr, pc), bi = state
        seq.append((pr, pc))
        nxt = None
        for k in range(1, 9):
            idx = (bi + k) % 8
            dy, dx = _RING[idx]
            q = (pr + dy, pc + dx)
            if mask[q]:
                prev_dy, prev_dx = _RING[(idx + 7) % 8]
                back = (pr + prev_dy, pc + prev_dx)
                nxt = (q, _RING_INDEX[(back[0] - q[0], back[1] - q[1])])
                break
        if nxt is None:
            return [start]  # isolated pixel
        state = nxt
    return seq[seen[state]:]


def trace_boundary(region: SupportRegion) -> Contour:
    """Trace the outer boundary of a support region (holes ignored).

    The trace starts from the region's lexicographically smallest pixel
    and is reported in the fixed interior-left orientation.  Regions too
    small to form a closed boundary (fewer than 4 boundary steps) are
    rejected as unusable.
    """
    minr, minc, maxr, maxc = region.bbox
    h = maxr - minr + 3
    w = maxc - minc + 3
    local = np.zeros((h, w), dtype=bool)
    local[region.pixels[:, 0] - minr + 1, region.pixels[:, 1] - minc + 1] = True
    cycle = _moore_trace(local)
    if len(cycle) < 4:
        raise ValueError(
            f"region {region.label} is too small or thin to trace (T={len(cycle)})"
        )
    pts = np.array(
        [(c + minc - 1 + 0.5, r + minr - 1 + 0.5) for r, c in cycle], dtype=np.float64
    )
    if signed_area(pts) < 0.0:
        pts = pts[::-1]
    # rotate so the lexicographically smallest pixel comes first
    rows = pts[:, 1] - 0.5
    cols = pts[:, 0] - 0.5
    first = np.lexsort((cols, rows))[0]
    pts = np.roll(pts, -first, axis=0)
    return Contour(points=pts)
