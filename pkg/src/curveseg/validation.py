"""Input validation helpers.

Images are plain 2-D numpy arrays of brightness values in [0, 1],
row-major with origin at the top-left (x = column, rightward;
y = row, downward).  Pixel (r, c) samples the continuous point
(c + 0.5, r + 0.5).
"""

from __future__ import annotations

import numpy as np

MIN_IMAGE_SIDE = 16


def check_gray_image(image, *, name: str = "image") -> np.ndarray:
    """Validate and return a grayscale image as a float64 array.

    Accepts anything array-like of shape (height, width) with finite
    values in [0, 1].
    """
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise ValueError(
            f"{name} values must lie in [0, 1], got "
            f"[{arr.min():.6g}, {arr.max():.6g}]"
        )
    return arr


def check_response_map(resp, *, name: str = "response") -> np.ndarray:
    """Validate a signed response map (2-D, finite)."""
    arr = np.asarray(resp, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_in_range(value, lo, hi, *, name: str, open_lo=False, open_hi=False):
    """Check a scalar lies in the given interval and return it as float."""
    v = float(value)
    if not np.isfinite(v):
        raise ValueError(f"{name} must be finite, got {value!r}")
    if (v < lo or (open_lo and v == lo)) or (v > hi or (open_hi and v == hi)):
        lb, rb = ("(" if open_lo else "["), (")" if open_hi else "]")
        raise ValueError(f"{name}={v} outside {lb}{lo}, {hi}{rb}")
    return v
