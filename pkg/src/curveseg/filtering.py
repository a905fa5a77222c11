"""Laplacian-of-Gaussian kernel construction and image filtering.

The kernel is

    f(x, y) = 1/(pi*sigma^4) * ((x^2+y^2)/(2*sigma^2) - 1) * exp(-(x^2+y^2)/(2*sigma^2))

sampled at integer offsets and mean-corrected so it annihilates constant
images exactly despite truncation.  With this sign convention a step
edge responds positively on its low-brightness side.

`convolve` is a direct spatial correlation.  Per-pixel sums are
accumulated orbit by orbit of the kernel's dihedral symmetry group,
sorting summands within each orbit, so the output is bit-identical
under 90-degree rotations and mirror flips of a square input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .validation import check_gray_image

__all__ = ["LogKernel", "log_kernel", "convolve", "respond"]

MIN_SIGMA = 0.5


@dataclass(frozen=True)
class LogKernel:
    """Sampled LoG filter: scale, half-width and (2r+1)^2 tap weights."""

    sigma: float
    radius: int
    taps: np.ndarray

    def __post_init__(self):
        k = 2 * self.radius + 1
        if self.taps.shape != (k, k):
            raise ValueError("taps must be (2*radius+1) square")


def log_kernel(sigma: float) -> LogKernel:
    """Build the mean-corrected LoG kernel for scale `sigma` (pixels).

    radius = ceil(4*sigma) truncates the Gaussian envelope below 4e-4 of
    its peak; sigma below 0.5 is rejected as under-sampled.
    """
    sigma = float(sigma)
    if not math.isfinite(sigma) or sigma < MIN_SIGMA:
        raise ValueError(f"sigma must be >= {MIN_SIGMA}, got {sigma}")
    radius = int(math.ceil(4.0 * sigma))
    ax = np.arange(-radius, radius + 1, dtype=np.float64)
    xx, yy = np.meshgrid(ax, ax)
    r2 = xx * xx + yy * yy
    raw = (r2 / (2.0 * sigma**2) - 1.0) * np.exp(-r2 / (2.0 * sigma**2)) / (
        math.pi * sigma**4
    )
    taps = raw - raw.mean()
    return LogKernel(sigma=sigma, radius=radius, taps=taps)


def _dihedral_orbits(radius: int):
    """Offsets grouped by orbit of the square's symmetry group.

    Orbits are keyed by (max(|dy|,|dx|), min(|dy|,|dx|)) and returned in
    sorted key order; all taps within an orbit are equal by symmetry.
    """
    orbits: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for dy in range(-radius, radius + 1):
        for dx in range(-radius, radius + 1):
            key = (max(abs(dy), abs(dx)), min(abs(dy), abs(dx)))
            orbits.setdefault(key, []).append((dy, dx))
    return [orbits[k] for k in sorted(orbits)]


def convolve(image, kernel: LogKernel) -> np.ndarray:
    """Same-size correlation with replicate (clamp-to-edge) borders.

    The kernel's full dihedral symmetry makes correlation equal to
    convolution.  Summation order is canonical under that symmetry:
    within each symmetry orbit the shifted pixel values are sorted
    before accumulation, and orbits are accumulated in a fixed order,
    so rotating or mirroring a square input permutes the output exactly.
    """
    img = check_gray_image(image)
    h, w = img.shape
    r = kernel.radius
    k = 2 * r + 1
    if h < k or w < k:
        raise ValueError(f"image {img.shape} smaller than kernel ({k}x{k})")
    pad = np.pad(img, r, mode="edge")
    out = np.zeros((h, w), dtype=np.float64)
    for orbit in _dihedral_orbits(r):
        dy0, dx0 = orbit[0]
        tap = kernel.taps[dy0 + r, dx0 + r]
        shifts = [pad[r + dy : r + dy + h, r + dx : r + dx + w] for dy, dx in orbit]
        if len(shifts) == 1:
            ssum = shifts[0].astype(np.float64, copy=True)
        else:
            stack = np.sort(np.stack(shifts, axis=0), axis=0)
            ssum = stack[0].copy()
            for i in range(1, len(shifts)):
                ssum += stack[i]
        out += tap * ssum
    return out


def respond(image, sigma: float) -> np.ndarray:
    """LoG response of `image` at scale `sigma` (kernel + correlation)."""
    return convolve(image, log_kernel(sigma))
