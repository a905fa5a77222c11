"""Fourier series fits of closed contours and their exact derivatives.

A contour (x(t), y(t)), t = 0..T-1 is treated as the complex periodic
signal u(t) = x(t) + j*y(t) with coefficients

    U_n = 1/T * sum_t u(t) * exp(-j*2*pi*n*t/T)

Evaluation keeps a symmetric harmonic band: indices n and T-n are both
active up to the harmonic count H, and harmonics above T/2 are mapped to
their signed counterpart n - T so that differentiation is alias-free
(the unique convention for which a sampled circle has constant speed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .regions import Contour

__all__ = [
    "FourierDescriptor",
    "default_harmonics",
    "fit_fourier",
    "evaluate",
    "reconstruct",
    "derivative",
    "descriptor_to_json",
    "descriptor_from_json",
]


@dataclass(frozen=True)
class FourierDescriptor:
    """Complex Fourier coefficients of a closed contour.

    coeffs has length T (the source contour length); H is the number of
    active harmonics used during evaluation, 1 <= H <= T//2.
    """

    T: int
    coeffs: np.ndarray
    H: int

    def __post_init__(self):
        if len(self.coeffs) != self.T:
            raise ValueError("coefficient count must equal T")
        if not 1 <= self.H <= self.T // 2:
            raise ValueError(f"H={self.H} outside [1, {self.T // 2}]")

    def with_harmonics(self, H: int) -> "FourierDescriptor":
        return replace(self, H=int(H))


def default_harmonics(T: int) -> int:
    """Default active-harmonic count: max(4, round(T/16)), capped at T//2.

    A full band fit of a pixel staircase puts all the curvature energy
    into pixel jaggies; this cap keeps the fit smooth at roughly the
    scale the filtering stage already imposed.
    """
    return min(max(4, int(round(T / 16.0))), T // 2)


def fit_fourier(contour: Contour, harmonics: int | None = None) -> FourierDescriptor:
    """Fit Fourier coefficients to a closed contour (T >= 8 points)."""
    pts = contour.points
    T = len(pts)
    if T < 8:
        raise ValueError(f"contour too short to fit (T={T} < 8)")
    u = pts[:, 0] + 1j * pts[:, 1]
    coeffs = np.fft.fft(u) / T
    H = default_harmonics(T) if harmonics is None else min(max(1, int(harmonics)), T // 2)
    return FourierDescriptor(T=T, coeffs=coeffs, H=H)


def _signed_band(desc: FourierDescriptor):
    """Active coefficient indices and their signed harmonic numbers."""
    T, H = desc.T, desc.H
    idx = [0]
    idx += list(range(1, H + 1))
    idx += [n for n in range(T - H, T) if n > H]
    idx = np.array(idx, dtype=np.int64)
    signed = np.where(idx <= T // 2, idx, idx - T).astype(np.float64)
    return idx, signed


def evaluate(desc: FourierDescriptor, t) -> np.ndarray:
    """Evaluate the band-limited fit at parameter value(s) t (period T).

    Returns a complex scalar for scalar input, else a complex array.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    idx, signed = _signed_band(desc)
    phase = np.exp(2j * np.pi * np.outer(t_arr, signed) / desc.T)
    vals = phase @ desc.coeffs[idx]
    return vals[0] if np.isscalar(t) or np.ndim(t) == 0 else vals


def reconstruct(desc: FourierDescriptor, samples: int) -> np.ndarray:
    """Sample the fit at `samples` uniform parameters over one period.

    Returns an (samples, 2) array of (x, y) points.  With H = T//2 and
    samples = T this inverts the fit exactly.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    t = np.arange(samples, dtype=np.float64) * (desc.T / samples)
    u = evaluate(desc, t)
    return np.column_stack([u.real, u.imag])


def derivative(desc: FourierDescriptor, t, order: int = 1):
    """Term-by-term derivative of the fit at parameter value(s) t.

    Each active harmonic contributes a factor (j*2*pi*n'/T)^order with
    n' the signed harmonic index.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    idx, signed = _signed_band(desc)
    omega = 2j * np.pi * signed / desc.T
    phase = np.exp(2j * np.pi * np.outer(t_arr, signed) / desc.T)
    vals = phase @ (desc.coeffs[idx] * omega**order)
    return vals[0] if np.isscalar(t) or np.ndim(t) == 0 else vals


def descriptor_to_json(desc: FourierDescriptor) -> str:
    """Serialize as {"T", "H", "coeffs": [[re, im], ...]}."""
    payload = {
        "T": desc.T,
        "H": desc.H,
        "coeffs": [[float(c.real), float(c.imag)] for c in desc.coeffs],
    }
    return json.dumps(payload)


def descriptor_from_json(text: str) -> FourierDescriptor:
    data = json.loads(text)
    coeffs = np.array([complex(re, im) for re, im in data["coeffs"]])
    return FourierDescriptor(T=int(data["T"]), coeffs=coeffs, H=int(data["H"]))
