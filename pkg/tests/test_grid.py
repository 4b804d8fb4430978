"""Grid construction, power diagnostics and the Madelung decomposition."""

import numpy as np
import pytest

from photonfluid import (
    ComplexField,
    InvalidArgumentError,
    madelung_decompose,
    madelung_recompose,
    make_grid,
    total_power,
)

K0_780NM = 2.0 * np.pi / 780e-9


def test_make_grid_fft_ordering():
    grid = make_grid(8, 8.0)
    assert grid.dx == 1.0
    expected = 2.0 * np.pi / 8.0 * np.array([0, 1, 2, 3, -4, -3, -2, -1])
    np.testing.assert_allclose(grid.wavenumbers, expected, rtol=0, atol=1e-15)


def test_make_grid_two_points_nyquist_negative():
    grid = make_grid(2, 1.0)
    assert grid.dx == 0.5
    np.testing.assert_allclose(grid.wavenumbers, [0.0, -2.0 * np.pi], atol=1e-15)


def test_make_grid_micron_sampling():
    grid = make_grid(16384, 16.384e-3)
    assert grid.dx == pytest.approx(1e-6, rel=1e-12)
    assert np.max(np.abs(grid.wavenumbers)) == pytest.approx(np.pi / 1e-6, rel=1e-12)


@pytest.mark.parametrize("n_points", [2, 7, 8, 64, 129])
def test_wavenumber_invariants(n_points):
    grid = make_grid(n_points, 3.7)
    k = grid.wavenumbers
    assert k[0] == 0.0
    # max |k| within one grid unit (2 pi / width) of pi/dx
    assert np.max(np.abs(k)) >= np.pi / grid.dx - 2.0 * np.pi / grid.width - 1e-12
    assert np.max(np.abs(k)) <= np.pi / grid.dx + 1e-12
    # closed under negation except the single Nyquist component when n even
    counts = {}
    for value in np.round(k / (2.0 * np.pi / grid.width)).astype(int):
        counts[value] = counts.get(value, 0) + 1
    unpaired = [v for v in counts if counts.get(-v, 0) != counts[v]]
    if n_points % 2 == 0:
        assert unpaired == [-(n_points // 2)]
    else:
        assert unpaired == []


@pytest.mark.parametrize("n_points,width", [(1, 1.0), (0, 1.0), (8, 0.0), (8, -2.0)])
def test_make_grid_rejects_bad_arguments(n_points, width):
    with pytest.raises(InvalidArgumentError):
        make_grid(n_points, width)


def test_total_power_uniform():
    grid = make_grid(256, 2.0)
    field = ComplexField(np.ones(256, dtype=complex), grid)
    assert total_power(field) == pytest.approx(2.0, rel=1e-13)


def test_total_power_zero_field():
    grid = make_grid(64, 1.0)
    assert total_power(ComplexField(np.zeros(64, dtype=complex), grid)) == 0.0


def test_total_power_gaussian_matches_quadrature_and_analytic():
    w0 = 180e-6
    grid = make_grid(16384, 16.384e-3)
    samples = np.exp(-(grid.x**2) / w0**2)  # intensity exp(-2 x^2 / w0^2)
    field = ComplexField(samples.astype(complex), grid)
    analytic = w0 * np.sqrt(np.pi / 2.0)
    quadrature = np.trapezoid(np.abs(samples) ** 2, grid.x)
    assert analytic == pytest.approx(2.2559654e-4, rel=1e-6)
    assert total_power(field) == pytest.approx(quadrature, rel=1e-12)
    assert total_power(field) == pytest.approx(analytic, rel=1e-9)


def test_fft_round_trip(rng):
    grid = make_grid(1024, 5e-3)
    samples = rng.standard_normal(1024) + 1j * rng.standard_normal(1024)
    back = np.fft.ifft(np.fft.fft(samples))
    np.testing.assert_allclose(back, samples, rtol=1e-12, atol=1e-12)


def test_spectral_phase_ramp_translates_field(rng):
    # fixes the sign convention shared by propagation and analysis
    grid = make_grid(512, 2e-3)
    envelope = np.exp(-((grid.x) ** 2) / (3e-4) ** 2).astype(complex)
    envelope *= np.exp(1j * 2.0 * np.pi * grid.x / 1e-3)
    shift_samples = 37
    a = shift_samples * grid.dx
    ramp = np.exp(-1j * grid.wavenumbers * a)
    shifted = np.fft.ifft(np.fft.fft(envelope) * ramp)
    np.testing.assert_allclose(shifted, np.roll(envelope, shift_samples), atol=1e-10)


def test_madelung_plane_wave_velocity():
    grid = make_grid(2048, 4e-3)
    k_perp = 1.6e4
    field = ComplexField(2.0 * np.exp(1j * k_perp * grid.x), grid)
    fields = madelung_decompose(field, K0_780NM)
    expected = k_perp / K0_780NM
    assert expected == pytest.approx(1.9863e-3, rel=1e-4)
    np.testing.assert_allclose(fields.velocity, expected, rtol=1e-6)
    np.testing.assert_allclose(fields.density, 4.0, rtol=1e-12)


def test_madelung_real_positive_field():
    grid = make_grid(256, 1e-3)
    field = ComplexField(np.exp(-(grid.x**2) / (2e-4) ** 2) + 0j, grid)
    fields = madelung_decompose(field, K0_780NM)
    np.testing.assert_allclose(fields.phase[fields.valid], 0.0, atol=1e-12)
    np.testing.assert_allclose(fields.velocity[fields.valid], 0.0, atol=1e-9)


def test_madelung_constant_phase():
    grid = make_grid(128, 1e-3)
    amplitude = 1.7
    field = ComplexField(np.full(128, amplitude * np.exp(1j * np.pi / 3)), grid)
    fields = madelung_decompose(field, K0_780NM)
    np.testing.assert_allclose(fields.density, amplitude**2, rtol=1e-12)
    np.testing.assert_allclose(fields.phase, np.pi / 3, rtol=1e-12)
    np.testing.assert_allclose(fields.velocity, 0.0, atol=1e-12)


def test_madelung_flags_near_zero_density():
    grid = make_grid(512, 2e-3)
    samples = np.exp(-(grid.x**2) / (1e-4) ** 2).astype(complex)
    field = ComplexField(samples, grid)
    fields = madelung_decompose(field, K0_780NM)
    assert not fields.valid.all()
    assert np.all(np.isnan(fields.velocity[~fields.valid]))
    assert np.all(np.isfinite(fields.velocity[fields.valid]))


def test_madelung_recompose_round_trip(rng):
    grid = make_grid(1024, 8e-3)
    envelope = np.exp(-(grid.x**2) / (8e-4) ** 2)
    phase = 0.4 * np.sin(2 * np.pi * grid.x / 2e-3) + 5e3 * grid.x
    field = ComplexField(envelope * np.exp(1j * phase), grid)
    fields = madelung_decompose(field, K0_780NM)
    rebuilt = madelung_recompose(fields, grid)
    mask = fields.density > 1e-6 * fields.density.max()
    np.testing.assert_allclose(
        rebuilt.samples[mask], field.samples[mask], rtol=1e-10, atol=0
    )


def test_field_length_mismatch_rejected():
    grid = make_grid(64, 1.0)
    with pytest.raises(InvalidArgumentError):
        ComplexField(np.zeros(65, dtype=complex), grid)
