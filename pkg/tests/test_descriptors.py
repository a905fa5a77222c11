"""Fourier fits: exact inversion, oracles and covariance properties."""

import numpy as np
import pytest

import curveseg as cs
from curveseg.regions import Contour

from conftest import circle_contour


def direct_dft(points):
    """O(T^2) coefficient oracle, straight from the defining sum."""
    u = points[:, 0] + 1j * points[:, 1]
    T = len(u)
    out = np.zeros(T, dtype=complex)
    for n in range(T):
        out[n] = np.sum(u * np.exp(-2j * np.pi * n * np.arange(T) / T)) / T
    return out


def square_contour(side, T):
    """Axis-aligned square outline, arc-length uniform."""
    corners = np.array(
        [[0, 0], [side, 0], [side, side], [0, side], [0, 0]], dtype=float
    )
    seg = np.hypot(*np.diff(corners, axis=0).T)
    cum = np.concatenate([[0], np.cumsum(seg)])
    s = np.arange(T) * (cum[-1] / T)
    return np.column_stack(
        [np.interp(s, cum, corners[:, 0]), np.interp(s, cum, corners[:, 1])]
    )


class TestFit:
    def test_constant_contour_dc_only(self):
        pts = np.tile([3.0, 4.0], (16, 1))
        desc = cs.fit_fourier(Contour(points=pts))
        assert desc.coeffs[0] == pytest.approx(3.0 + 4.0j, abs=1e-12)
        assert np.abs(desc.coeffs[1:]).max() < 1e-12

    def test_circle_single_harmonic(self):
        desc = cs.fit_fourier(Contour(points=circle_contour(5.0, -2.0, 3.0, T=32)))
        assert desc.coeffs[0] == pytest.approx(5.0 - 2.0j, abs=1e-12)
        assert desc.coeffs[1] == pytest.approx(3.0 + 0.0j, abs=1e-12)
        rest = np.delete(np.abs(desc.coeffs), [0, 1])
        assert rest.max() < 1e-12

    def test_matches_direct_dft_oracle(self):
        rng = np.random.default_rng(5)
        pts = rng.uniform(0, 64, size=(64, 2))
        desc = cs.fit_fourier(Contour(points=pts))
        np.testing.assert_allclose(desc.coeffs, direct_dft(pts), atol=1e-10)

    def test_short_contour_rejected(self):
        with pytest.raises(ValueError):
            cs.fit_fourier(Contour(points=np.arange(12.0).reshape(6, 2)))

    def test_default_harmonics_rule(self):
        assert cs.default_harmonics(8) == 4
        assert cs.default_harmonics(64) == 4
        assert cs.default_harmonics(160) == 10
        assert cs.default_harmonics(9) == 4


class TestReconstruct:
    def test_full_band_inverts_exactly(self):
        rng = np.random.default_rng(9)
        for T in (8, 33, 128):
            pts = rng.uniform(0, 32, size=(T, 2))
            desc = cs.fit_fourier(Contour(points=pts), harmonics=T // 2)
            rec = cs.reconstruct(desc, T)
            assert np.abs(rec - pts).max() < 1e-9

    def test_single_harmonic_circle_any_sampling(self):
        desc = cs.fit_fourier(
            Contour(points=circle_contour(0.0, 0.0, 4.0, T=32)), harmonics=1
        )
        for samples in (32, 100, 257):
            rec = cs.reconstruct(desc, samples)
            radii = np.hypot(rec[:, 0], rec[:, 1])
            np.testing.assert_allclose(radii, 4.0, atol=1e-12)

    def test_band_limited_square_rounds_corners(self):
        pts = square_contour(8.0, T=32)
        desc = cs.fit_fourier(Contour(points=pts), harmonics=8)
        rec = cs.reconstruct(desc, 32)
        dev = np.hypot(*(rec - pts).T)
        # oracle-computed smoothing deviation: the corners round off by
        # a fraction of a pixel but stay well within one pixel
        assert 0.01 < dev.max() < 1.0

    def test_energy_monotone_in_band(self):
        rng = np.random.default_rng(13)
        pts = rng.uniform(0, 32, size=(64, 2))
        desc = cs.fit_fourier(Contour(points=pts))
        energies = []
        for H in range(1, 33):
            d = desc.with_harmonics(H)
            from curveseg.descriptors import _signed_band

            idx, _ = _signed_band(d)
            energies.append(float(np.sum(np.abs(d.coeffs[idx]) ** 2)))
        assert all(a <= b + 1e-15 for a, b in zip(energies, energies[1:]))


class TestDerivative:
    def test_circle_constant_speed(self):
        T, r = 64, 3.0
        desc = cs.fit_fourier(Contour(points=circle_contour(1.0, 2.0, r, T=T)))
        t = np.linspace(0, T, 37)
        d1 = cs.derivative(desc, t, 1)
        np.testing.assert_allclose(np.abs(d1), 2 * np.pi * r / T, atol=1e-12)

    def test_constant_contour_zero_derivative(self):
        pts = np.tile([3.0, 4.0], (16, 1))
        desc = cs.fit_fourier(Contour(points=pts))
        assert abs(cs.derivative(desc, 0.7, 1)) < 1e-12
        assert abs(cs.derivative(desc, 0.7, 2)) < 1e-12

    def test_matches_finite_differences(self):
        from conftest import random_band_limited_descriptor

        rng = np.random.default_rng(21)
        desc = random_band_limited_descriptor(rng, T=96, H=6)
        h = 1e-4
        for t in np.linspace(0, desc.T, 17):
            exact = cs.derivative(desc, t, 1)
            fd = (cs.evaluate(desc, t + h) - cs.evaluate(desc, t - h)) / (2 * h)
            assert abs(exact - fd) <= 1e-6 * max(1.0, abs(exact))

    def test_bad_order(self):
        desc = cs.fit_fourier(Contour(points=circle_contour(0, 0, 1, T=16)))
        with pytest.raises(ValueError):
            cs.derivative(desc, 0.0, 3)


class TestProperties:
    def test_parseval(self):
        rng = np.random.default_rng(17)
        pts = rng.uniform(0, 48, size=(96, 2))
        u = pts[:, 0] + 1j * pts[:, 1]
        desc = cs.fit_fourier(Contour(points=pts))
        lhs = np.mean(np.abs(u) ** 2)
        rhs = np.sum(np.abs(desc.coeffs) ** 2)
        assert abs(lhs - rhs) < 1e-9 * max(1.0, rhs)

    def test_translation_covariance(self):
        rng = np.random.default_rng(19)
        pts = rng.uniform(0, 32, size=(32, 2))
        d0 = cs.fit_fourier(Contour(points=pts))
        d1 = cs.fit_fourier(Contour(points=pts + [2.5, -1.5]))
        assert d1.coeffs[0] - d0.coeffs[0] == pytest.approx(2.5 - 1.5j, abs=1e-12)
        np.testing.assert_allclose(d1.coeffs[1:], d0.coeffs[1:], atol=1e-12)

    def test_rotation_covariance(self):
        rng = np.random.default_rng(23)
        pts = rng.uniform(-16, 16, size=(32, 2))
        phi = 0.83
        z = (pts[:, 0] + 1j * pts[:, 1]) * np.exp(1j * phi)
        rot = np.column_stack([z.real, z.imag])
        d0 = cs.fit_fourier(Contour(points=pts))
        d1 = cs.fit_fourier(Contour(points=rot))
        np.testing.assert_allclose(d1.coeffs, d0.coeffs * np.exp(1j * phi), atol=1e-12)

    def test_json_roundtrip(self):
        rng = np.random.default_rng(29)
        pts = rng.uniform(0, 32, size=(24, 2))
        desc = cs.fit_fourier(Contour(points=pts))
        back = cs.descriptor_from_json(cs.descriptor_to_json(desc))
        assert back.T == desc.T and back.H == desc.H
        np.testing.assert_allclose(back.coeffs, desc.coeffs, atol=0)
