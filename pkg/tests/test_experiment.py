"""Virtual measurement pipeline against independent linearized-theory oracles.

The SSFM-based envelopes are cross-checked against ``linear_response_envelope``
(conftest), which integrates the linearized excitation dynamics spectrally and
never touches the split-step engine.
"""

import numpy as np
import pytest

from photonfluid import (
    BogoliubovParams,
    ExperimentConfig,
    InvalidArgumentError,
    InvalidConfigurationError,
    MeasurementFailureError,
    MediumSpec,
    ProbeSpec,
    PropagationPlan,
    PumpSpec,
    bogoliubov_group_velocity,
    bogoliubov_omega,
    lowpass_filter,
    make_grid,
    measure_separation,
    phase_scan_envelope,
    reconstruct_dispersion,
    run_dispersion_scan,
    run_sound_speed_scan,
    synthesize_input,
)
from photonfluid.experiment import default_filter_cutoff
from conftest import linear_response_envelope

LAMBDA0 = 780e-9
K0 = 2.0 * np.pi / LAMBDA0
N2 = -3.1e-11


def make_config(
    delta_n=3.9e-6,
    n_points=1024,
    width=8.192e-3,
    n_steps=250,
    waist=180e-6,
    amplitude=0.1,
    n_phase=40,
    k_list=None,
):
    intensity = delta_n / abs(N2)
    return ExperimentConfig(
        medium=MediumSpec(lambda0=LAMBDA0, n2=N2, alpha=0.0, length=7.5e-2),
        n_points=n_points,
        width=width,
        pump=PumpSpec(intensity),
        probe=ProbeSpec(relative_amplitude=amplitude, waist=waist),
        plan=PropagationPlan(z_span=7.5e-2, n_steps=n_steps),
        k_list=k_list,
    )


# --- synthesize_input -------------------------------------------------------


def test_synthesize_no_probe_is_uniform_pump():
    grid = make_grid(256, 4e-3)
    field = synthesize_input(grid, PumpSpec(1e5), ProbeSpec(0.0, 180e-6))
    np.testing.assert_allclose(field.intensity(), 1e5, rtol=1e-12)


def test_synthesize_real_bump_peak_intensity():
    grid = make_grid(1024, 8.192e-3)
    field = synthesize_input(grid, PumpSpec(1e5), ProbeSpec(0.1, 180e-6, 0.0, 0.0))
    assert np.max(np.abs(field.samples.imag)) == 0.0
    assert field.intensity().max() == pytest.approx(1.21e5, rel=1e-6)


def test_synthesize_carrier_modulation_wavelength():
    grid = make_grid(4096, 16.384e-3)
    k_perp = 1.8e4
    field = synthesize_input(grid, PumpSpec(1e5), ProbeSpec(0.1, 500e-6, k_perp, 0.0))
    modulation = field.intensity() - 1e5
    spectrum = np.abs(np.fft.fft(modulation * np.exp(-(grid.x**2) / (2e-3) ** 2)))
    k_axis = np.abs(grid.wavenumbers)
    peak_k = k_axis[np.argmax(spectrum[1:]) + 1]
    assert 2 * np.pi / peak_k == pytest.approx(349e-6, rel=0.02)


def test_synthesize_resolution_guards():
    grid = make_grid(64, 8.192e-3)  # dx = 128 um
    with pytest.raises(InvalidConfigurationError):
        synthesize_input(grid, PumpSpec(1e5), ProbeSpec(0.1, 180e-6))
    fine = make_grid(1024, 8.192e-3)
    with pytest.raises(InvalidConfigurationError):
        synthesize_input(fine, PumpSpec(1e5), ProbeSpec(0.1, 180e-6, k_perp=2.5e5))


# --- phase_scan_envelope ----------------------------------------------------


def test_envelope_without_probe_vanishes():
    config = make_config(n_points=512, n_steps=60, amplitude=0.0, n_phase=8)
    envelope = phase_scan_envelope(config, 0.0)
    assert np.max(envelope) < 1e-12 * config.pump.intensity


def test_envelope_matches_linear_response_oracle_k0():
    config = make_config(delta_n=3.9e-6)
    envelope = phase_scan_envelope(config, 0.0)
    oracle = linear_response_envelope(
        config.grid(),
        config.pump.intensity,
        -3.9e-6,
        K0,
        0.1,
        config.probe.waist,
        0.0,
        config.medium.length,
    )
    scale = oracle.max()
    assert np.max(np.abs(envelope - oracle)) < 0.015 * scale


def test_envelope_matches_linear_response_oracle_carrier():
    config = make_config(delta_n=3.9e-6)
    grid = config.grid()
    k_perp = 2.0e4
    envelope = phase_scan_envelope(config, k_perp)
    oracle = linear_response_envelope(
        grid, config.pump.intensity, -3.9e-6, K0, 0.1, config.probe.waist,
        k_perp, config.medium.length,
    )
    cutoff = default_filter_cutoff(k_perp, config.probe.waist)
    oracle = lowpass_filter(oracle, cutoff, grid)
    assert np.max(np.abs(envelope - oracle)) < 0.02 * oracle.max()


def test_envelope_two_symmetric_lobes_strong_coupling():
    # delta_n = 1.3e-5: lobes at +- L sqrt(|dn|) ~ +-270 um
    config = make_config(delta_n=1.3e-5)
    envelope = phase_scan_envelope(config, 0.0)
    x = config.grid().x
    left = envelope[x < 0]
    right = envelope[x > 0]
    x_left = x[x < 0][np.argmax(left)]
    x_right = x[x > 0][np.argmax(right)]
    assert x_right == pytest.approx(270e-6, rel=0.12)
    assert abs(x_left) == pytest.approx(x_right, rel=0.05)
    # mirror-symmetric envelope at zero carrier (x -> -x on the periodic grid)
    n = config.n_points
    mirrored = envelope[np.r_[0, np.arange(n - 1, 0, -1)]]
    np.testing.assert_allclose(envelope, mirrored, atol=1e-9 * envelope.max())


def test_envelope_high_carrier_structure():
    # strong coupling, carrier at 5e-3 k0: one dominant displaced lobe, a
    # weak conjugate on the far side, carrier fringes in the single-shot
    # background-subtracted intensity
    config = make_config(delta_n=1.3e-5, n_points=2048, n_steps=300)
    k_perp = 5e-3 * config.medium.k0
    envelope = phase_scan_envelope(config, k_perp)
    x = config.grid().x

    main_idx = int(np.argmax(envelope))
    x_main = x[main_idx]
    params = BogoliubovParams(-1.3e-5, K0)
    expected = float(bogoliubov_group_velocity(k_perp, params)) * config.medium.length
    assert x_main == pytest.approx(expected, rel=0.05)
    conjugate_peak = envelope[x < 0].max()
    assert conjugate_peak < 0.5 * envelope[main_idx]  # visibly weaker partner

    # single-shot (fixed phase) exit intensity carries the carrier fringes
    from photonfluid import propagate_batch, synthesize_input

    grid = config.grid()
    shot = np.stack(
        [
            synthesize_input(grid, config.pump, ProbeSpec(0.1, 180e-6, k_perp, 0.0)).samples,
            np.full(grid.n_points, np.sqrt(config.pump.intensity), dtype=complex),
        ]
    )
    out = propagate_batch(shot, grid, config.medium, config.plan)
    delta_i = np.abs(out[0]) ** 2 - np.abs(out[1]) ** 2
    region = np.abs(x - x_main) < 2.0 * config.probe.waist / np.sqrt(2.0)
    crossings = int(np.sum(np.diff(np.sign(delta_i[region])) != 0))
    assert crossings >= 4  # oscillatory modulation under the packet envelope


def test_envelope_mirror_symmetry_under_carrier_sign():
    config = make_config(n_points=1024, n_steps=150)
    k_perp = 2.5e4
    plus = phase_scan_envelope(config, k_perp)
    minus = phase_scan_envelope(config, -k_perp)
    n = config.n_points
    mirrored = plus[np.r_[0, np.arange(n - 1, 0, -1)]]  # x -> -x on the periodic grid
    np.testing.assert_allclose(minus, mirrored, atol=1e-9 * plus.max())


# --- measure_separation -----------------------------------------------------


def test_measure_strong_coupling_separation():
    config = make_config(delta_n=1.3e-5)
    envelope = phase_scan_envelope(config, 0.0)
    separation, v_g, mode, flagged = measure_separation(envelope, 0.0, config)
    assert mode == "two-gaussian"
    assert separation == pytest.approx(541e-6, rel=0.05)
    assert v_g == pytest.approx(3.6e-3, rel=0.05)


def test_measure_deep_particle_regime_displacement():
    config = make_config(delta_n=1.3e-5)
    k_perp = 1.0e5
    envelope = phase_scan_envelope(config, k_perp)
    separation, v_g, mode, flagged = measure_separation(envelope, k_perp, config)
    assert mode == "displacement"
    assert v_g == pytest.approx(k_perp / K0, rel=0.05)
    assert v_g == pytest.approx(1.2414e-2, rel=0.05)


def test_measure_flat_envelope_fails():
    config = make_config(n_points=512, n_steps=50)
    with pytest.raises(MeasurementFailureError):
        measure_separation(np.zeros(config.n_points), 0.0, config)


def test_measured_speed_independent_of_carrier_sign():
    config = make_config(n_points=1024, n_steps=150)
    k_perp = 2.5e4
    plus = measure_separation(phase_scan_envelope(config, k_perp), k_perp, config)
    minus = measure_separation(phase_scan_envelope(config, -k_perp), -k_perp, config)
    assert plus[1] == pytest.approx(minus[1], rel=1e-6)
    assert plus[2] == minus[2]


def test_probe_amplitude_linearity():
    base = make_config(amplitude=0.1, n_points=1024, n_steps=200)
    half = make_config(amplitude=0.05, n_points=1024, n_steps=200)
    v_base = measure_separation(phase_scan_envelope(base, 0.0), 0.0, base)[1]
    v_half = measure_separation(phase_scan_envelope(half, 0.0), 0.0, half)[1]
    assert v_half == pytest.approx(v_base, rel=0.01)


# --- reconstruct_dispersion -------------------------------------------------


def test_reconstruction_quadrature_consistency():
    params = BogoliubovParams(delta_n=-3.9e-6, k0=K0)
    k = np.linspace(0.0, 5e4, 50)
    v_g = bogoliubov_group_velocity(k, params)
    omega_recon = reconstruct_dispersion(k, v_g)
    omega_true = bogoliubov_omega(k, params)
    rel = np.abs(omega_recon[1:] - omega_true[1:]) / omega_true[1:]
    assert np.max(rel) < 5e-3


def test_reconstruction_requires_zero_start():
    with pytest.raises(InvalidArgumentError):
        reconstruct_dispersion([1.0, 2.0], [1.0, 1.0])
    with pytest.raises(InvalidArgumentError):
        reconstruct_dispersion([], [])


def test_reconstruction_zero_at_origin():
    omega = reconstruct_dispersion([0.0, 1.0, 2.0], [1.0, 1.0, 1.0])
    assert omega[0] == 0.0
    np.testing.assert_allclose(omega, [0.0, 1.0, 2.0])


# --- run_dispersion_scan ----------------------------------------------------


def test_dispersion_scan_analytic_bypass():
    config = make_config(k_list=tuple(np.linspace(0.0, 5e4, 50)))
    curve = run_dispersion_scan(config, analytic_bypass=True)
    assert all(s.mode == "analytic" for s in curve.samples)
    rel = np.abs(curve.omega_recon[1:] - curve.omega_analytic[1:]) / curve.omega_analytic[1:]
    assert np.max(rel) < 5e-3


@pytest.mark.filterwarnings("ignore::photonfluid.errors.StepSizeWarning")
def test_dispersion_scan_warns_when_window_tight():
    from photonfluid import WindowMarginWarning

    # k_max drives the packets ~1.9 mm while the window half width is 1 mm
    config = make_config(
        delta_n=1.3e-5, n_points=1024, width=2.048e-3, n_steps=30, n_phase=4,
        k_list=(0.0, 2e5),
    )
    with pytest.warns(WindowMarginWarning):
        try:
            run_dispersion_scan(config)
        except MeasurementFailureError:
            pass  # wrapped packets may defeat the fits; only the warning matters


def test_dispersion_scan_requires_k_list_with_zero():
    config = make_config(k_list=())
    with pytest.raises(InvalidConfigurationError):
        run_dispersion_scan(config)
    config = make_config(k_list=(1e4, 2e4))
    with pytest.raises(InvalidConfigurationError):
        run_dispersion_scan(config, analytic_bypass=True)


def test_dispersion_scan_measured_small():
    k_list = (0.0, 2e4, 5e4, 8e4)
    config = make_config(delta_n=1.3e-5, k_list=k_list, n_steps=200)
    curve = run_dispersion_scan(config)
    assert len(curve.samples) == 4
    assert curve.failures == []
    params = BogoliubovParams(delta_n=-1.3e-5, k0=K0)
    # sound-like floor at k = 0 (quench refraction: speed stays near c_s)
    assert curve.samples[0].v_g >= 0.9 * np.sqrt(1.3e-5)
    # monotone within 5% noise allowance
    v = curve.v_g
    assert np.all(v[1:] >= v[:-1] * 0.95)
    # particle regime hugs the analytic curve
    for sample in curve.samples[2:]:
        expected = float(bogoliubov_group_velocity(sample.k_perp, params))
        assert sample.v_g == pytest.approx(expected, rel=0.05)
    assert curve.samples[0].omega_recon == 0.0
    assert curve.samples[-1].omega_recon > 0.0


@pytest.mark.filterwarnings("ignore::photonfluid.errors.StepSizeWarning")
def test_dispersion_scan_records_gaps(monkeypatch):
    # individual measurement failures become gaps; the curve survives while
    # at least 70% of the points do
    import photonfluid.experiment as experiment

    k_list = (0.0, 1e4, 2e4, 3e4)
    config = make_config(delta_n=1.3e-5, k_list=k_list, n_points=512, n_steps=60)
    real = experiment.measure_separation

    def flaky(envelope, k_perp, cfg):
        if k_perp == 2e4:
            raise MeasurementFailureError("synthetic outage")
        return real(envelope, k_perp, cfg)

    monkeypatch.setattr(experiment, "measure_separation", flaky)
    curve = run_dispersion_scan(config)
    assert [s.k_perp for s in curve.samples] == [0.0, 1e4, 3e4]
    assert curve.failures == [(2e4, "synthetic outage")]

    def broken(envelope, k_perp, cfg):
        raise MeasurementFailureError("synthetic outage")

    monkeypatch.setattr(experiment, "measure_separation", broken)
    with pytest.raises(MeasurementFailureError):
        run_dispersion_scan(config)


# --- run_sound_speed_scan ---------------------------------------------------


@pytest.mark.filterwarnings("ignore::photonfluid.errors.StepSizeWarning")
def test_sound_speed_scan_square_root_scaling():
    config = make_config(n_points=1024, n_steps=300)
    intensities = np.array([2.26e5, 7.15e5, 2.26e6])
    scan = run_sound_speed_scan(config, intensities)
    assert scan.exponent == pytest.approx(0.5, abs=0.03)
    for intensity, c_s in zip(scan.intensities, scan.sound_speeds):
        assert c_s == pytest.approx(np.sqrt(abs(N2) * intensity), rel=0.05)


def test_sound_speed_scan_rejects_short_lists():
    config = make_config(n_points=512, n_steps=50)
    with pytest.raises(InvalidConfigurationError):
        run_sound_speed_scan(config, [])
    with pytest.raises(InvalidConfigurationError):
        run_sound_speed_scan(config, [1e5, 2e5])
    with pytest.raises(InvalidConfigurationError):
        run_sound_speed_scan(config, [2e5, 1e5, 3e5])
