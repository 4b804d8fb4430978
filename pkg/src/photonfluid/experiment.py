"""Pump-probe virtual experiment: phase scan, envelope extraction, group
velocity measurement, dispersion reconstruction and sound-speed scaling.

The measurement replays an interferometric protocol.  A weak Gaussian probe
with transverse carrier ``k_perp`` rides on a uniform pump.  At the medium
entrance the perturbation splits into two counter-propagating wavepackets;
their separation at the exit plane, D = 2 L v_g, measures the excitation
group velocity.  The wavepacket envelope is isolated by scanning the
pump-probe phase over 2 pi and averaging the background-subtracted exit
intensities in absolute value.

Two measurement modes, switched on the visibility of the weaker (conjugate)
packet:

* ``two-gaussian`` -- both packets visible, D from a two-Gaussian fit;
* ``displacement`` -- conjugate too weak, v_g from the displacement of the
  main packet relative to the probe injection point (x = 0).

Separations measured from overlapping packets are biased by interference
between them; such samples carry ``flagged=True`` but are kept.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    FitFailureError,
    InvalidArgumentError,
    InvalidConfigurationError,
    MeasurementFailureError,
    WindowMarginWarning,
)
from .fitting import (
    GaussianModel,
    TwoGaussianFit,
    find_peaks,
    fit_gaussian,
    fit_power_law,
    fit_two_gaussian,
    lowpass_filter,
)
from .grid import ComplexField, Grid
from .medium import BogoliubovParams, bogoliubov_group_velocity, bogoliubov_omega
from .propagation import propagate_batch

# Conjugate-to-main peak height ratio below which the two-Gaussian mode is
# abandoned for the displacement measurement.
CONJUGATE_PROMINENCE_THRESHOLD = 0.15

# Peak-detection floor for envelope maxima, as a fraction of the envelope peak.
PEAK_PROMINENCE = 0.05

# A dispersion scan fails unless at least this fraction of points succeeds.
MIN_SCAN_SUCCESS_FRACTION = 0.7

MODE_TWO_GAUSSIAN = "two-gaussian"
MODE_DISPLACEMENT = "displacement"
MODE_ANALYTIC = "analytic"


@dataclass(frozen=True)
class PumpSpec:
    """Uniform background intensity I0 (W/m^2)."""

    intensity: float

    def __post_init__(self):
        if not self.intensity > 0:
            raise InvalidArgumentError(f"pump intensity must be > 0, got {self.intensity}")


@dataclass(frozen=True)
class ProbeSpec:
    """Weak Gaussian probe riding on the pump.

    ``relative_amplitude`` is a field ratio (0.1 equals 1% in intensity);
    ``waist`` (m) the envelope 1/e half width; ``k_perp`` (1/m) the carrier;
    ``phase`` (rad) the pump-probe phase offset.
    """

    relative_amplitude: float = 0.1
    waist: float = 180e-6
    k_perp: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.relative_amplitude <= 0.2:
            raise InvalidArgumentError(
                "relative_amplitude must lie in [0, 0.2] (linearized regime; "
                f"0 means no probe), got {self.relative_amplitude}"
            )
        if not self.waist > 0:
            raise InvalidArgumentError(f"waist must be positive, got {self.waist}")


@dataclass
class DispersionSample:
    """One measured point of the dispersion curve."""

    k_perp: float
    v_g: float
    mode: str
    separation: float
    omega_recon: float = 0.0
    omega_analytic: float = 0.0
    flagged: bool = False


@dataclass
class DispersionCurve:
    """Measured group velocities and the reconstructed dispersion relation."""

    samples: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def k(self) -> np.ndarray:
        return np.array([s.k_perp for s in self.samples])

    @property
    def v_g(self) -> np.ndarray:
        return np.array([s.v_g for s in self.samples])

    @property
    def omega_recon(self) -> np.ndarray:
        return np.array([s.omega_recon for s in self.samples])

    @property
    def omega_analytic(self) -> np.ndarray:
        return np.array([s.omega_analytic for s in self.samples])


@dataclass
class SoundSpeedScan:
    """Sound speed vs pump intensity with the fitted power law."""

    intensities: np.ndarray
    sound_speeds: np.ndarray
    exponent: float
    prefactor: float
    failures: list = field(default_factory=list)


def synthesize_input(grid: Grid, pump: PumpSpec, probe: ProbeSpec) -> ComplexField:
    """Exit-plane-focused pump + probe field at z = 0.

    E(x) = sqrt(I0) [1 + a exp(-x^2/w^2) exp(i (k_perp x + phi))]; the probe
    phase front is flat apart from the carrier.  The probe must be resolved
    by at least 8 samples per waist and the carrier must stay below half the
    grid Nyquist.
    """
    if probe.waist < 8.0 * grid.dx:
        raise InvalidConfigurationError(
            f"probe waist {probe.waist:.3g} m under-resolved: needs >= 8 grid "
            f"points per waist (dx = {grid.dx:.3g} m)"
        )
    if abs(probe.k_perp) >= 0.5 * grid.nyquist:
        raise InvalidConfigurationError(
            f"probe carrier {probe.k_perp:.3g} 1/m exceeds half the grid "
            f"Nyquist ({0.5 * grid.nyquist:.3g} 1/m)"
        )
    envelope = np.exp(-(grid.x**2) / probe.waist**2)
    carrier = np.exp(1j * (probe.k_perp * grid.x + probe.phase))
    samples = np.sqrt(pump.intensity) * (
        1.0 + probe.relative_amplitude * envelope * carrier
    )
    return ComplexField(samples, grid, z=0.0)


def default_filter_cutoff(k_perp: float, probe_waist: float, factor: float = 0.5) -> float:
    """Envelope lowpass cutoff: ``factor * k_perp`` floored at the envelope band.

    The floor 4*sqrt(2)/waist keeps the packet envelope itself (spectral
    sigma sqrt(2)/waist) intact; without it a small-carrier cutoff would
    erase the very lobes being measured.
    """
    return max(factor * k_perp, 4.0 * np.sqrt(2.0) / probe_waist)


def phase_scan_envelope(config, k_perp: float) -> np.ndarray:
    """Phase-averaged modulation envelope at the exit plane.

    Propagates pump+probe for ``n_phase`` equally spaced probe phases in
    [0, 2 pi), subtracts the propagated pump-only intensity, averages the
    absolute values, and (for a nonzero carrier) lowpass-filters the result.
    Returns a non-negative envelope sampled on the configured grid.
    """
    grid = config.grid()
    pump = config.pump
    phases = 2.0 * np.pi * np.arange(config.n_phase) / config.n_phase

    batch = np.empty((config.n_phase + 1, grid.n_points), dtype=np.complex128)
    for row, phi in enumerate(phases):
        probe = ProbeSpec(
            relative_amplitude=config.probe.relative_amplitude,
            waist=config.probe.waist,
            k_perp=k_perp,
            phase=phi,
        )
        batch[row] = synthesize_input(grid, pump, probe).samples
    batch[-1] = np.sqrt(pump.intensity)  # pump-only background

    out = propagate_batch(batch, grid, config.medium, config.plan)
    intensities = np.abs(out) ** 2
    envelope = np.mean(np.abs(intensities[:-1] - intensities[-1]), axis=0)

    if k_perp != 0:
        cutoff = default_filter_cutoff(
            abs(k_perp), config.probe.waist, config.filter_cutoff_factor
        )
        envelope = lowpass_filter(envelope, cutoff, grid)
    return envelope


def _warn_if_window_tight(config, params, k_max: float) -> None:
    """Periodic boundaries need the packets well clear of the window edges.

    Projected worst-case excursion: v_g(k_max) L plus five probe waists.
    """
    reach = (
        float(bogoliubov_group_velocity(k_max, params)) * config.medium.length
        + 5.0 * config.probe.waist
    )
    if reach > 0.5 * config.width:
        warnings.warn(
            f"projected packet excursion {reach:.3g} m approaches the half "
            f"window {0.5 * config.width:.3g} m; widen the grid or lower k_max",
            WindowMarginWarning,
            stacklevel=3,
        )


def _conjugate_peak(peaks, main):
    """Strongest peak on the opposite side of the origin from ``main``."""
    main_x = main[0]
    for x, y in peaks:
        if (x, y) == main:
            continue
        if x * main_x < 0 or main_x == 0:
            return (x, y)
    return None


def measure_separation(envelope: np.ndarray, k_perp: float, config):
    """Extract the packet separation from an envelope.

    Returns (D, v_g, mode, flagged).  ``two-gaussian`` mode (conjugate packet
    visible, or always at k_perp = 0 where the packets have equal amplitude):
    v_g = D / 2L from the fitted center distance, ``flagged`` marking
    overlap-biased fits.  ``displacement`` mode: v_g = |x_main| / L.
    Degenerate fits raise
    :class:`~photonfluid.errors.MeasurementFailureError`.
    """
    grid = config.grid()
    x = grid.x
    length = config.medium.length
    peak_scale = float(np.max(envelope))
    if peak_scale <= 0 or not np.any(envelope > 1e-12 * config.pump.intensity):
        raise MeasurementFailureError("envelope is flat: nothing to measure")

    peaks = find_peaks(x, envelope, min_prominence=PEAK_PROMINENCE)
    if not peaks:
        raise MeasurementFailureError("no envelope peaks found")
    main = max(peaks, key=lambda p: p[1])

    use_two_gaussian = False
    if k_perp == 0:
        use_two_gaussian = True  # equal-amplitude packets by symmetry
    else:
        conj = _conjugate_peak(peaks, main)
        if conj is not None and conj[1] >= CONJUGATE_PROMINENCE_THRESHOLD * main[1]:
            use_two_gaussian = True

    sigma0 = config.probe.waist / np.sqrt(2.0)
    offset0 = float(np.median(envelope))
    if use_two_gaussian:
        if k_perp == 0:
            # symmetric initializer: +-x_hat stabilizes the merged-lobe fit
            x_hat = max(abs(main[0]), sigma0)
            init = TwoGaussianFit(
                GaussianModel(main[1] - offset0, -x_hat, sigma0, offset0),
                GaussianModel(main[1] - offset0, +x_hat, sigma0, offset0),
            )
        else:
            conj = _conjugate_peak(peaks, main)
            init = TwoGaussianFit(
                GaussianModel(main[1] - offset0, main[0], sigma0, offset0),
                GaussianModel(conj[1] - offset0, conj[0], sigma0, offset0),
            )
        try:
            fit = fit_two_gaussian(x, envelope, init)
        except FitFailureError as exc:
            raise MeasurementFailureError(f"two-Gaussian fit failed: {exc}") from exc
        if fit.degenerate:
            raise MeasurementFailureError(
                "degenerate separation: fitted centers are closer than one sample"
            )
        separation = fit.separation
        v_g = separation / (2.0 * length)
        return separation, v_g, MODE_TWO_GAUSSIAN, fit.overlap_flagged

    # displacement mode: fit the main packet only, windowed around the peak
    window = np.abs(x - main[0]) <= 6.0 * sigma0
    try:
        fit = fit_gaussian(
            x[window],
            envelope[window],
            GaussianModel(main[1] - offset0, main[0], sigma0, offset0),
        )
    except FitFailureError as exc:
        raise MeasurementFailureError(f"displacement fit failed: {exc}") from exc
    v_g = abs(fit.center) / length  # probe enters at x = 0
    return 2.0 * length * v_g, v_g, MODE_DISPLACEMENT, False


def reconstruct_dispersion(k_values, v_g_values) -> np.ndarray:
    """Trapezoidal cumulative integral of v_g(k) from k = 0.

    ``k_values`` must be sorted, non-negative and start at 0, where the
    reconstructed frequency is pinned to zero.
    """
    k = np.asarray(k_values, dtype=float)
    vg = np.asarray(v_g_values, dtype=float)
    if k.size == 0 or k[0] != 0.0:
        raise InvalidArgumentError("k grid must start at 0 for the reconstruction")
    if np.any(np.diff(k) <= 0):
        raise InvalidArgumentError("k grid must be strictly increasing")
    omega = np.concatenate([[0.0], np.cumsum(0.5 * (vg[1:] + vg[:-1]) * np.diff(k))])
    return omega


def run_dispersion_scan(config, analytic_bypass: bool = False) -> DispersionCurve:
    """Measure v_g over the configured k list and integrate it into Omega(k).

    With ``analytic_bypass`` the group velocities come from the dispersion
    derivative instead of simulated envelopes (quadrature self-check; mode
    is reported as ``analytic``).  Individual measurement failures are
    recorded and skipped; the scan aborts if fewer than 70% of the points
    survive.
    """
    k_list = config.k_list
    if k_list is None or len(k_list) == 0:
        raise InvalidConfigurationError("dispersion scan needs a non-empty k list")
    k_list = np.sort(np.asarray(k_list, dtype=float))
    if k_list[0] != 0.0:
        raise InvalidConfigurationError("k list must include k = 0")
    if np.any(np.diff(k_list) <= 0):
        raise InvalidConfigurationError("k list must not contain duplicates")

    params = BogoliubovParams.from_medium(config.medium, config.pump.intensity)
    if not analytic_bypass:
        _warn_if_window_tight(config, params, float(k_list[-1]))
    curve = DispersionCurve()
    for k in k_list:
        if analytic_bypass:
            v_g = float(bogoliubov_group_velocity(k, params))
            curve.samples.append(
                DispersionSample(k, v_g, MODE_ANALYTIC, 2.0 * config.medium.length * v_g)
            )
            continue
        try:
            envelope = phase_scan_envelope(config, k)
            separation, v_g, mode, flagged = measure_separation(envelope, k, config)
        except MeasurementFailureError as exc:
            curve.failures.append((float(k), str(exc)))
            continue
        curve.samples.append(DispersionSample(k, v_g, mode, separation, flagged=flagged))

    if len(curve.samples) < MIN_SCAN_SUCCESS_FRACTION * len(k_list):
        raise MeasurementFailureError(
            f"only {len(curve.samples)}/{len(k_list)} scan points measurable"
        )
    if curve.samples and curve.samples[0].k_perp != 0.0:
        raise MeasurementFailureError("the k = 0 point failed; cannot reconstruct")

    omega = reconstruct_dispersion(
        [s.k_perp for s in curve.samples], [s.v_g for s in curve.samples]
    )
    for sample, om in zip(curve.samples, omega):
        sample.omega_recon = float(om)
        sample.omega_analytic = float(bogoliubov_omega(sample.k_perp, params))
    return curve


def run_sound_speed_scan(config, intensities) -> SoundSpeedScan:
    """Measure the k = 0 packet speed for each pump intensity and fit c_s(I).

    The probe wavevector is forced to zero; c_s is the measured v_g.  The
    power-law fit needs at least three surviving points.
    """
    intensities = np.asarray(intensities, dtype=float)
    if intensities.size < 3:
        raise InvalidConfigurationError("sound-speed scan needs >= 3 intensities")
    if np.any(np.diff(intensities) <= 0):
        raise InvalidConfigurationError("intensities must be strictly increasing")

    measured_i, measured_c, failures = [], [], []
    for intensity in intensities:
        scan_config = config.with_pump_intensity(float(intensity))
        try:
            envelope = phase_scan_envelope(scan_config, 0.0)
            _, v_g, _, _ = measure_separation(envelope, 0.0, scan_config)
        except MeasurementFailureError as exc:
            failures.append((float(intensity), str(exc)))
            continue
        measured_i.append(float(intensity))
        measured_c.append(v_g)

    if len(measured_i) < 3:
        raise MeasurementFailureError(
            f"only {len(measured_i)} sound-speed points measurable; need >= 3"
        )
    exponent, prefactor = fit_power_law(measured_i, measured_c)
    return SoundSpeedScan(
        np.array(measured_i), np.array(measured_c), exponent, prefactor, failures
    )
