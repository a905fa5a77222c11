"""Synthetic test image generation and the matching analytic ground truth.

The central fixture is a step edge along a rotated sinusoid

    y_r - sin(x_r) + rho = 0

rendered as a two-level brightness image.  Its inflection points are
known in closed form, which gives an independent oracle for curve
segmentation: the curve is convex on one side of each inflection and
concave on the other.

A rectangle renderer, a thick-stroke ("sausage") renderer and a bilinear
affine warp cover the remaining fixtures used for robustness checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .validation import MIN_IMAGE_SIDE, check_gray_image, check_in_range

__all__ = [
    "SinusoidSpec",
    "AffineMap",
    "render_sinusoid",
    "analytic_inflection_points",
    "render_rectangle",
    "render_stroke",
    "warp",
]


@dataclass(frozen=True)
class SinusoidSpec:
    """Parameters of the rotated sinusoidal step-edge image.

    theta is the rotation in radians (normalized to [0, 2*pi)), rho the
    vertical offset of the curve in curve units, b1 the base brightness,
    delta_b the contrast step, scale the number of pixels per curve unit
    and origin the image-plane point (x, y) of the curve-coordinate
    origin (defaults to the image center).  The curve's y axis follows
    the image y axis (downward).
    """

    theta: float = 0.0
    rho: float = 0.0
    b1: float = 0.25
    delta_b: float = 0.5
    scale: float = 20.0
    width: int = 256
    height: int = 256
    origin: tuple[float, float] | None = None

    def __post_init__(self):
        if self.delta_b <= 0:
            raise ValueError("delta_b must be positive")
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.width < MIN_IMAGE_SIDE or self.height < MIN_IMAGE_SIDE:
            raise ValueError(f"image extent must be at least {MIN_IMAGE_SIDE} pixels")
        if self.b1 < 0 or self.b1 + self.delta_b > 1:
            raise ValueError("brightness levels must stay within [0, 1]")
        object.__setattr__(self, "theta", float(self.theta) % (2.0 * math.pi))
        if self.origin is None:
            object.__setattr__(self, "origin", (self.width / 2.0, self.height / 2.0))


@dataclass(frozen=True)
class AffineMap:
    """Invertible affine map p -> matrix @ p + translation on (x, y) points."""

    matrix: tuple[tuple[float, float], tuple[float, float]] = ((1.0, 0.0), (0.0, 1.0))
    translation: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.shape != (2, 2):
            raise ValueError("matrix must be 2x2")
        if abs(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]) < 1e-12:
            raise ValueError("affine matrix is singular")

    @classmethod
    def rotation(cls, angle: float, center=(0.0, 0.0)) -> "AffineMap":
        """Rotation by `angle` radians about `center` (x, y)."""
        c, s = math.cos(angle), math.sin(angle)
        cx, cy = center
        # p' = R (p - c) + c
        tx = cx - (c * cx - s * cy)
        ty = cy - (s * cx + c * cy)
        return cls(matrix=((c, -s), (s, c)), translation=(tx, ty))

    @classmethod
    def from_matrix_about(cls, matrix, center=(0.0, 0.0)) -> "AffineMap":
        """Apply `matrix` about `center` instead of the origin."""
        m = np.asarray(matrix, dtype=np.float64)
        ctr = np.asarray(center, dtype=np.float64)
        t = ctr - m @ ctr
        return cls(matrix=tuple(map(tuple, m)), translation=(t[0], t[1]))

    def apply(self, points) -> np.ndarray:
        """Map an (N, 2) array of (x, y) points."""
        m = np.asarray(self.matrix)
        t = np.asarray(self.translation)
        return np.asarray(points, dtype=np.float64) @ m.T + t

    def inverse(self) -> "AffineMap":
        m = np.linalg.inv(np.asarray(self.matrix))
        t = -m @ np.asarray(self.translation)
        return AffineMap(matrix=tuple(map(tuple, m)), translation=(t[0], t[1]))


def _pixel_centers(width: int, height: int):
    cols, rows = np.meshgrid(np.arange(width), np.arange(height))
    return cols + 0.5, rows + 0.5


def render_sinusoid(spec: SinusoidSpec) -> np.ndarray:
    """Render the rotated sinusoidal step edge of `spec`.

    Each pixel is exactly b1 or b1 + delta_b depending on the sign of
    the step argument

        alpha*y - beta*x - sin(beta*y + alpha*x) + rho

    evaluated at the pixel center in curve coordinates (alpha = cos
    theta, beta = sin theta; the argument-zero case takes the high
    level).  Raises ValueError when the curve misses the image window
    entirely (the rendering would be constant and useless as a fixture).
    """
    a, b = math.cos(spec.theta), math.sin(spec.theta)
    px, py = _pixel_centers(spec.width, spec.height)
    ox, oy = spec.origin
    x = (px - ox) / spec.scale
    y = (py - oy) / spec.scale
    arg = a * y - b * x - np.sin(b * y + a * x) + spec.rho
    img = np.where(arg >= 0, spec.b1 + spec.delta_b, spec.b1)
    if img.min() == img.max():
        raise ValueError("curve does not intersect the image window")
    return img


def analytic_inflection_points(
    spec: SinusoidSpec, n_min: int, n_max: int
) -> list[tuple[float, float]]:
    """Image-plane inflection points of the rendered curve.

    In rotated curve coordinates the inflections sit at (x_r, y_r) =
    (n*pi, -rho) for integer n; this maps them back through the inverse
    rotation, then through scale/origin, dropping points outside the
    continuous image window [0, width] x [0, height].
    """
    if n_min > n_max:
        raise ValueError("n_min must not exceed n_max")
    a, b = math.cos(spec.theta), math.sin(spec.theta)
    ox, oy = spec.origin
    pts = []
    for n in range(n_min, n_max + 1):
        xr, yr = n * math.pi, -spec.rho
        # inverse of the (y, x)-ordered rotation: x = a*xr - b*yr, y = b*xr + a*yr
        x = a * xr - b * yr
        y = b * xr + a * yr
        px, py = x * spec.scale + ox, y * spec.scale + oy
        if 0.0 <= px <= spec.width and 0.0 <= py <= spec.height:
            pts.append((px, py))
    return pts


def render_rectangle(
    width: int,
    height: int,
    bounds: tuple[int, int, int, int],
    b1: float = 0.25,
    delta_b: float = 0.5,
) -> np.ndarray:
    """Render an axis-aligned bright rectangle on a flat background.

    `bounds` is (x0, y0, x1, y1) in pixel units, half-open: columns
    x0..x1-1 and rows y0..y1-1 take brightness b1 + delta_b, the rest
    b1.  The rectangle must keep an 8-pixel margin from the image
    border so its support regions never touch the frame.
    """
    x0, y0, x1, y1 = bounds
    if x1 <= x0 or y1 <= y0:
        raise ValueError("rectangle has zero area")
    margin = 8
    if x0 < margin or y0 < margin or x1 > width - margin or y1 > height - margin:
        raise ValueError(f"rectangle must keep a {margin}-pixel margin from the border")
    check_in_range(delta_b, 0.0, 1.0, name="delta_b", open_lo=True)
    if b1 < 0 or b1 + delta_b > 1:
        raise ValueError("brightness levels must stay within [0, 1]")
    img = np.full((height, width), b1, dtype=np.float64)
    img[y0:y1, x0:x1] = b1 + delta_b
    return img


def render_stroke(
    spine,
    half_width: float,
    width: int,
    height: int,
    b1: float = 0.25,
    delta_b: float = 0.5,
) -> np.ndarray:
    """Render a thick stroke: all pixels within `half_width` of the spine.

    `spine` is an (N, 2) array of (x, y) points sampled densely along
    the stroke centerline; the rendered shape is its Minkowski sum with
    a disk (round caps included), which makes the true boundary distance
    of any point p simply |dist(p, spine) - half_width|.
    """
    pts = np.asarray(spine, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
        raise ValueError("spine must be an (N, 2) array with N >= 2")
    if half_width <= 0:
        raise ValueError("half_width must be positive")
    if b1 < 0 or b1 + delta_b > 1 or delta_b <= 0:
        raise ValueError("brightness levels must stay within [0, 1]")
    px, py = _pixel_centers(width, height)
    tree = cKDTree(pts)
    d, _ = tree.query(np.column_stack([px.ravel(), py.ravel()]), k=1)
    inside = (d <= half_width).reshape(height, width)
    return np.where(inside, b1 + delta_b, b1)


def warp(image, amap: AffineMap, fill: float | None = None) -> np.ndarray:
    """Apply an affine map to an image by inverse-mapped bilinear resampling.

    Output has the source geometry; sample points that fall outside the
    source take `fill` (default: the top-left pixel, the background for
    all fixtures here, so no spurious frame edge appears).
    """
    img = check_gray_image(image)
    h, w = img.shape
    if fill is None:
        fill = float(img[0, 0])
    inv = amap.inverse()
    m = np.asarray(inv.matrix)
    t = np.asarray(inv.translation)

    px, py = _pixel_centers(w, h)
    sx = m[0, 0] * px + m[0, 1] * py + t[0]
    sy = m[1, 0] * px + m[1, 1] * py + t[1]
    # bilinear in array-index space; valid domain is [0, w-1] x [0, h-1]
    cf = sx - 0.5
    rf = sy - 0.5
    valid = (cf >= 0) & (cf <= w - 1) & (rf >= 0) & (rf <= h - 1)
    c0 = np.clip(np.floor(cf).astype(np.int64), 0, w - 2)
    r0 = np.clip(np.floor(rf).astype(np.int64), 0, h - 2)
    fc = np.clip(cf - c0, 0.0, 1.0)
    fr = np.clip(rf - r0, 0.0, 1.0)
    val = (
        img[r0, c0] * (1 - fr) * (1 - fc)
        + img[r0 + 1, c0] * fr * (1 - fc)
        + img[r0, c0 + 1] * (1 - fr) * fc
        + img[r0 + 1, c0 + 1] * fr * fc
    )
    return np.where(valid, val, fill)
