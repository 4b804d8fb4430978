"""Least-squares kernels and signal conditioning for envelope measurements.

The optimizer is a damped Gauss-Newton (Levenberg-style schedule: damping
x10 on a rejected step, /10 on an accepted one).  Fits are declared
converged when the scaled parameter update drops below 1e-8, and fail after
200 iterations.
"""

from dataclasses import dataclass

import numpy as np

from .errors import FitFailureError, InvalidArgumentError
from .grid import Grid

MAX_ITERATIONS = 200
RELATIVE_TOLERANCE = 1e-8


@dataclass
class GaussianModel:
    """Gaussian bump A exp(-(x - x0)^2 / 2 sigma^2) + b."""

    amplitude: float
    center: float
    width: float
    offset: float = 0.0

    def __call__(self, x):
        return (
            self.amplitude * np.exp(-((x - self.center) ** 2) / (2.0 * self.width**2))
            + self.offset
        )


@dataclass
class TwoGaussianFit:
    """Two Gaussian components with a shared offset, centers ordered.

    ``separation`` is |x2 - x1|.  ``overlap_flagged`` marks fits whose center
    distance is below twice the mean width: interference between overlapping
    packets biases such separations low.  ``degenerate`` marks separations
    below one sample spacing (no usable measurement).
    """

    first: GaussianModel
    second: GaussianModel
    residual_rms: float = 0.0
    overlap_flagged: bool = False
    degenerate: bool = False

    @property
    def separation(self) -> float:
        return abs(self.second.center - self.first.center)

    def __call__(self, x):
        return self.first(x) + self.second(x) - self.first.offset


def find_peaks(xs, ys, min_prominence: float = 0.05):
    """Local maxima above ``min_prominence * max(ys)``, strongest first.

    Returns at most two (x, y) pairs -- the initializer of the two-Gaussian
    fit.  Plateau maxima are reported at their central sample.  Flat data
    yields an empty list.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.ndim != 1 or xs.shape != ys.shape:
        raise InvalidArgumentError("xs and ys must be 1D arrays of equal length")
    if np.any(np.diff(xs) <= 0):
        raise InvalidArgumentError("xs must be strictly increasing")
    top = ys.max()
    if ys.size < 3 or top <= ys.min():
        return []
    threshold = min_prominence * top

    peaks = []
    i = 1
    n = ys.size
    while i < n - 1:
        if ys[i] >= ys[i - 1] and ys[i] >= threshold:
            j = i
            while j < n - 1 and ys[j + 1] == ys[i]:
                j += 1
            if j < n - 1 and ys[j + 1] < ys[i] and ys[i] > ys[i - 1]:
                mid = (i + j) // 2
                peaks.append((float(ys[mid]), float(xs[mid])))
            i = j + 1
        else:
            i += 1
    peaks.sort(key=lambda p: (-p[0], p[1]))
    return [(x, y) for y, x in peaks[:2]]


def _gauss_newton(xs, ys, p0, model, jacobian, scales):
    """Damped Gauss-Newton minimizer of sum (model(xs, p) - ys)^2."""
    p = np.asarray(p0, dtype=float)
    r = model(xs, p) - ys
    cost = float(r @ r)
    damping = 1e-3
    for _ in range(MAX_ITERATIONS):
        jac = jacobian(xs, p)
        grad = jac.T @ r
        hess = jac.T @ jac
        diag = np.diag(np.maximum(np.diag(hess), 1e-300))
        step = None
        for _ in range(60):
            try:
                candidate = np.linalg.solve(hess + damping * diag, -grad)
            except np.linalg.LinAlgError:
                damping *= 10.0
                continue
            trial = p + candidate
            r_trial = model(xs, trial) - ys
            cost_trial = float(r_trial @ r_trial)
            if np.isfinite(cost_trial) and cost_trial <= cost:
                p, r, cost = trial, r_trial, cost_trial
                damping = max(damping * 0.1, 1e-14)
                step = candidate
                break
            damping *= 10.0
        if step is None:
            raise FitFailureError(
                "damping exhausted without an acceptable step",
                last_params=p,
                residual_rms=float(np.sqrt(cost / ys.size)),
            )
        if np.max(np.abs(step) / (np.abs(p) + scales)) < RELATIVE_TOLERANCE:
            return p, float(np.sqrt(cost / ys.size))
    raise FitFailureError(
        f"no convergence in {MAX_ITERATIONS} iterations",
        last_params=p,
        residual_rms=float(np.sqrt(cost / ys.size)),
    )


def _width_guess(xs, ys, center, peak, offset):
    """FWHM/2.355 from the samples around the peak; falls back to 2 dx."""
    half = offset + 0.5 * (peak - offset)
    above = ys > half
    idx = int(np.argmin(np.abs(xs - center)))
    left = idx
    while left > 0 and above[left - 1]:
        left -= 1
    right = idx
    while right < len(xs) - 1 and above[right + 1]:
        right += 1
    fwhm = xs[right] - xs[left]
    dx = np.median(np.diff(xs))
    return max(fwhm / 2.355, 2.0 * dx)


def _gaussian_initializer(xs, ys):
    offset = float(np.median(ys))
    idx = int(np.argmax(ys))
    center = float(xs[idx])
    amplitude = float(ys[idx] - offset)
    width = _width_guess(xs, ys, center, ys[idx], offset)
    return GaussianModel(amplitude, center, width, offset)


def fit_gaussian(xs, ys, init: GaussianModel | None = None) -> GaussianModel:
    """Least-squares Gaussian fit; initializer from the data when omitted.

    Flat (zero-variance) input raises
    :class:`~photonfluid.errors.FitFailureError`.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size < 8:
        raise InvalidArgumentError("need at least 8 samples for a Gaussian fit")
    if ys.max() == ys.min():
        raise FitFailureError("flat input: Gaussian parameters are degenerate")
    if init is None:
        init = _gaussian_initializer(xs, ys)

    def model(x, p):
        return p[0] * np.exp(-((x - p[1]) ** 2) / (2.0 * p[2] ** 2)) + p[3]

    def jacobian(x, p):
        g = np.exp(-((x - p[1]) ** 2) / (2.0 * p[2] ** 2))
        jac = np.empty((x.size, 4))
        jac[:, 0] = g
        jac[:, 1] = p[0] * g * (x - p[1]) / p[2] ** 2
        jac[:, 2] = p[0] * g * (x - p[1]) ** 2 / p[2] ** 3
        jac[:, 3] = 1.0
        return jac

    span = xs[-1] - xs[0]
    scale = max(abs(ys.max()), abs(ys.min()))
    scales = np.array([scale, span, span, scale]) * 1e-3
    p0 = [init.amplitude, init.center, init.width, init.offset]
    p, _rms = _gauss_newton(xs, ys, p0, model, jacobian, scales)
    return GaussianModel(abs(p[0]), p[1], abs(p[2]), p[3])


def fit_two_gaussian(xs, ys, init: TwoGaussianFit | None = None) -> TwoGaussianFit:
    """Two-Gaussian fit with shared offset; centers returned ordered.

    Initializer defaults to the top two peaks of the data; when only one peak
    exists the second component starts mirrored about it.  Sub-sample
    separations are flagged ``degenerate``; center distances below twice the
    mean width are flagged ``overlap_flagged`` (biased-low separation).
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size < 8:
        raise InvalidArgumentError("need at least 8 samples for a two-Gaussian fit")
    if ys.max() == ys.min():
        raise FitFailureError("flat input: two-Gaussian parameters are degenerate")
    dx = float(np.median(np.diff(xs)))
    if init is None:
        offset = float(np.median(ys))
        peaks = find_peaks(xs, ys)
        if not peaks:
            raise FitFailureError("no peaks found to initialize the fit")
        x1, y1 = peaks[0]
        if len(peaks) == 2:
            x2, y2 = peaks[1]
        else:
            x2, y2 = -x1, y1
            if abs(x2 - x1) < 2 * dx:
                x2 = x1 + 4 * dx
        w1 = _width_guess(xs, ys, x1, y1, offset)
        init = TwoGaussianFit(
            GaussianModel(y1 - offset, x1, w1, offset),
            GaussianModel(y2 - offset, x2, w1, offset),
        )

    def model(x, p):
        return (
            p[0] * np.exp(-((x - p[1]) ** 2) / (2.0 * p[2] ** 2))
            + p[3] * np.exp(-((x - p[4]) ** 2) / (2.0 * p[5] ** 2))
            + p[6]
        )

    def jacobian(x, p):
        g1 = np.exp(-((x - p[1]) ** 2) / (2.0 * p[2] ** 2))
        g2 = np.exp(-((x - p[4]) ** 2) / (2.0 * p[5] ** 2))
        jac = np.empty((x.size, 7))
        jac[:, 0] = g1
        jac[:, 1] = p[0] * g1 * (x - p[1]) / p[2] ** 2
        jac[:, 2] = p[0] * g1 * (x - p[1]) ** 2 / p[2] ** 3
        jac[:, 3] = g2
        jac[:, 4] = p[3] * g2 * (x - p[4]) / p[5] ** 2
        jac[:, 5] = p[3] * g2 * (x - p[4]) ** 2 / p[5] ** 3
        jac[:, 6] = 1.0
        return jac

    span = xs[-1] - xs[0]
    scale = max(abs(ys.max()), abs(ys.min()))
    scales = np.array([scale, span, span, scale, span, span, scale]) * 1e-3
    p0 = [
        init.first.amplitude,
        init.first.center,
        init.first.width,
        init.second.amplitude,
        init.second.center,
        init.second.width,
        init.first.offset,
    ]
    converged = True
    try:
        p, rms = _gauss_newton(xs, ys, p0, model, jacobian, scales)
    except FitFailureError as failure:
        # a one-bump dataset makes the two-component surface degenerate; the
        # last iterate is still reported, flagged as unusable
        if failure.last_params is None:
            raise
        p, rms, converged = failure.last_params, failure.residual_rms, False

    one = GaussianModel(abs(p[0]), p[1], abs(p[2]), p[6])
    two = GaussianModel(abs(p[3]), p[4], abs(p[5]), p[6])
    if two.center < one.center:
        one, two = two, one
    separation = two.center - one.center
    mean_width = 0.5 * (one.width + two.width)
    return TwoGaussianFit(
        one,
        two,
        residual_rms=rms,
        overlap_flagged=separation < 2.0 * mean_width,
        degenerate=(not converged) or separation < dx,
    )


def lowpass_filter(ys, cutoff: float, grid: Grid):
    """Zero spectral content above ``cutoff`` with a raised-cosine edge.

    The transition band spans 10% of the cutoff, ending at the cutoff itself.
    Output is real and clipped at zero.  A cutoff at or above the grid
    Nyquist is the identity.
    """
    if not cutoff > 0:
        raise InvalidArgumentError(f"cutoff must be positive, got {cutoff}")
    ys = np.asarray(ys, dtype=float)
    if ys.shape != (grid.n_points,):
        raise InvalidArgumentError("ys length does not match the grid")
    if cutoff >= grid.nyquist:
        return ys.copy()
    k = np.abs(grid.wavenumbers)
    edge = 0.1 * cutoff
    response = np.ones_like(k)
    response[k >= cutoff] = 0.0
    ramp = (k > cutoff - edge) & (k < cutoff)
    response[ramp] = 0.5 * (1.0 + np.cos(np.pi * (k[ramp] - (cutoff - edge)) / edge))
    filtered = np.fft.ifft(np.fft.fft(ys) * response).real
    return np.clip(filtered, 0.0, None)


def fit_power_law(xs, ys):
    """Fit y = prefactor * x^exponent by linear regression in log-log space.

    Returns (exponent, prefactor).  Requires at least three strictly positive
    points.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size < 3:
        raise InvalidArgumentError("need at least 3 points for a power-law fit")
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise InvalidArgumentError("power-law fit requires positive data")
    slope, intercept = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(slope), float(np.exp(intercept))
