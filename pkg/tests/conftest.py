"""Shared fixtures: the synthetic shapes used across the suite."""

import numpy as np
import pytest

import curveseg as cs

RECT_BOUNDS = (32, 32, 96, 80)


@pytest.fixture(scope="session")
def rect_image():
    return cs.render_rectangle(128, 128, RECT_BOUNDS)


@pytest.fixture(scope="session")
def rect_corners():
    x0, y0, x1, y1 = RECT_BOUNDS
    return np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]], dtype=float)


def rect_boundary_points(corners, n=4000):
    """Dense samples of a closed polygon boundary."""
    c = np.asarray(corners, dtype=float)
    pts = []
    for i in range(len(c)):
        p, q = c[i], c[(i + 1) % len(c)]
        t = np.linspace(0.0, 1.0, n // len(c), endpoint=False)[:, None]
        pts.append(p + t * (q - p))
    return np.vstack(pts)


def stadium_contour(r, a, T=256):
    """Closed stadium outline (two semicircles joined by straights).

    Arc-length uniform, oriented clockwise on screen (interior-left in
    image coordinates).  Caps are centered at (-a, 0) and (a, 0).
    """
    L_straight, L_arc = 2 * a, np.pi * r
    total = 2 * L_straight + 2 * L_arc
    s = np.arange(T) * (total / T)
    pts = np.zeros((T, 2))
    for i, si in enumerate(s):
        if si < L_straight:
            pts[i] = (-a + si, -r)
        elif si < L_straight + L_arc:
            th = (si - L_straight) / r
            pts[i] = (a + r * np.sin(th), -r * np.cos(th))
        elif si < 2 * L_straight + L_arc:
            pts[i] = (a - (si - L_straight - L_arc), r)
        else:
            th = (si - 2 * L_straight - L_arc) / r
            pts[i] = (-a - r * np.sin(th), r * np.cos(th))
    return pts


def circle_contour(cx, cy, r, T=64):
    th = 2 * np.pi * np.arange(T) / T
    return np.column_stack([cx + r * np.cos(th), cy + r * np.sin(th)])


def s_shape_image(width=128, height=128, amplitude=26.0, pitch=14.0, half_width=6.0):
    """Thick S-stroke fixture plus its spine (for boundary oracles)."""
    u = np.linspace(0, 2 * np.pi, 2000)
    spine = np.column_stack(
        [width / 2 + amplitude * np.sin(u), height / 2 + pitch * (u - np.pi)]
    )
    return cs.render_stroke(spine, half_width, width, height), spine, half_width


def random_band_limited_descriptor(rng, T=96, H=6, scale=30.0):
    """Random smooth closed curve as a FourierDescriptor."""
    coeffs = np.zeros(T, dtype=complex)
    coeffs[0] = scale * (rng.random() + 1j * rng.random())
    for n in range(1, H + 1):
        mag = scale / (1.5 * n * n)
        coeffs[n] = mag * (rng.standard_normal() + 1j * rng.standard_normal())
        coeffs[T - n] = mag * (rng.standard_normal() + 1j * rng.standard_normal())
    return cs.FourierDescriptor(T=T, coeffs=coeffs, H=H)


def random_smooth_loop(rng, T=96, scale=20.0):
    """Near-convex random loop: speed and |curvature| stay well away
    from zero, which keeps finite-difference curvature oracles
    conditioned (their roundoff is ~eps*|u|/h^2)."""
    coeffs = np.zeros(T, dtype=complex)
    coeffs[0] = 10.0 * (rng.random() + 1j * rng.random())
    coeffs[1] = scale * np.exp(2j * np.pi * rng.random())
    H = 6
    for n in range(2, H + 1):
        mag = scale / (40.0 * n * n)
        coeffs[n] = mag * (rng.standard_normal() + 1j * rng.standard_normal())
        coeffs[T - n] = mag * (rng.standard_normal() + 1j * rng.standard_normal())
    return cs.FourierDescriptor(T=T, coeffs=coeffs, H=H)
