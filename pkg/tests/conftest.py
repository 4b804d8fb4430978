"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the code paths they check:

* ``linear_response_envelope`` builds the phase-scan envelope from the
  linearized plane-wave excitation dynamics (2x2 mode evolution integrated
  spectrally), never touching the split-step engine;
* ``fit_oscillation_frequency`` extracts a single-mode oscillation frequency
  by FFT seeding plus golden-section refinement of the projection residual;
* ``gaussian_width_after_diffraction`` is the closed-form free-space result.
"""

import numpy as np
import pytest

from photonfluid import Grid


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)


def linear_response_envelope(
    grid: Grid,
    intensity: float,
    delta_n: float,
    k0: float,
    amplitude: float,
    waist: float,
    k_perp: float,
    length: float,
) -> np.ndarray:
    """Phase-averaged |dI| envelope from linearized excitation dynamics.

    For each spectral component q of the initial relative perturbation
    a G(x) exp(i k_perp x), the density response evolves as
    cos(Omega q z) - i (T/Omega) sin(Omega q z) with T = q^2/2k0.  Averaging
    |dI| over a uniform probe phase gives (2/pi) I0 sqrt(F^2 + H^2) with
    F + iH the filtered inverse transform.
    """
    u = abs(delta_n)
    x = grid.x
    q = grid.wavenumbers
    perturbation = amplitude * np.exp(-(x**2) / waist**2) * np.exp(1j * k_perp * x)
    spectrum = np.fft.fft(perturbation)
    kinetic = q**2 / (2.0 * k0)
    omega = np.sqrt(u * q**2 + kinetic**2)
    safe = np.where(omega == 0.0, 1.0, omega)
    response = np.cos(omega * length) - 1j * (kinetic / safe) * np.sin(omega * length)
    analytic_signal = np.fft.ifft(spectrum * response)
    return (2.0 / np.pi) * intensity * 2.0 * np.abs(analytic_signal)


def fit_oscillation_frequency(z: np.ndarray, y: np.ndarray) -> float:
    """Best-fit angular frequency of y ~ A cos(w z) + B sin(w z).

    FFT of the zero-padded signal seeds the search; golden-section descent on
    the linear-projection residual refines it.  Works down to a fraction of a
    period thanks to the exact two-quadrature model.
    """
    z = np.asarray(z, dtype=float)
    y = np.asarray(y, dtype=float)
    dz = z[1] - z[0]
    padded = len(y) * 16
    spectrum = np.abs(np.fft.rfft(y - y.mean(), n=padded))
    freqs = 2.0 * np.pi * np.fft.rfftfreq(padded, d=dz)
    seed = freqs[np.argmax(spectrum)]
    if seed == 0.0:
        seed = freqs[1]

    def residual(w):
        basis = np.stack([np.cos(w * z), np.sin(w * z)], axis=1)
        coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
        r = y - basis @ coef
        return float(r @ r)

    lo, hi = 0.5 * seed, 1.5 * seed
    ratio = (np.sqrt(5.0) - 1.0) / 2.0
    c = hi - ratio * (hi - lo)
    d = lo + ratio * (hi - lo)
    for _ in range(90):
        if residual(c) < residual(d):
            hi, d = d, c
            c = hi - ratio * (hi - lo)
        else:
            lo, c = c, d
            d = lo + ratio * (hi - lo)
    return 0.5 * (lo + hi)


def gaussian_width_after_diffraction(w0: float, lambda0: float, z: float) -> float:
    """Free-space Gaussian beam width w0 sqrt(1 + (z/zR)^2), zR = pi w0^2/lambda."""
    z_r = np.pi * w0**2 / lambda0
    return w0 * np.sqrt(1.0 + (z / z_r) ** 2)


def intensity_width(x: np.ndarray, intensity: np.ndarray) -> float:
    """1/e^2 beam width from the second moment: w = 2 sqrt(<x^2>)."""
    total = np.sum(intensity)
    mean = np.sum(x * intensity) / total
    var = np.sum((x - mean) ** 2 * intensity) / total
    return 2.0 * np.sqrt(var)
