"""Second-order (Strang) split-step Fourier integrator.

Integrates, along z, the paraxial envelope equation

    i dE/dz = -(1/2 k0) d^2E/dx^2 - (k0 n2 |E|^2 + i alpha/2) E

on a periodic transverse grid.  One step of size dz is the composition
half-linear / nonlinear / half-linear:

* linear half step: spectral multiplier exp(-i k^2 (dz/2) / (2 k0)),
  exactly unitary;
* nonlinear step: pointwise E -> E exp(i k0 n2 |E|^2 dz) exp(-alpha dz/2),
  exact for an intensity frozen over the step.

Consecutive trailing/leading half steps between snapshots are fused into a
single full-step multiplier; the composition is mathematically identical.
Periodic boundaries are native to the FFT; keep wavepackets several waists
away from the window edges.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError, NumericalBlowupError, StepSizeWarning
from .grid import ComplexField, Grid
from .medium import MediumSpec

# Warn when dz exceeds this fraction of the nonlinear length at peak intensity.
_NONLINEAR_LENGTH_MARGIN = 20.0


@dataclass(frozen=True)
class PropagationPlan:
    """Discretization of a propagation run.

    ``snapshot_stride = 0`` keeps only the final field; a positive stride
    records the field every ``stride`` steps (plus the initial and final
    ones).
    """

    z_span: float
    n_steps: int
    snapshot_stride: int = 0

    def __post_init__(self):
        if not self.z_span > 0:
            raise InvalidArgumentError(f"z_span must be positive, got {self.z_span}")
        if self.n_steps < 1:
            raise InvalidArgumentError(f"n_steps must be >= 1, got {self.n_steps}")
        if self.snapshot_stride < 0:
            raise InvalidArgumentError(
                f"snapshot_stride must be >= 0, got {self.snapshot_stride}"
            )

    @property
    def dz(self) -> float:
        return self.z_span / self.n_steps


@dataclass
class Trajectory:
    """Propagation result: ordered (z, field) snapshots and the final field."""

    snapshots: list = field(default_factory=list)
    final: ComplexField = None


@dataclass(frozen=True)
class SpongeSpec:
    """Optional absorbing boundary layer (off unless passed to propagate).

    A smooth super-Gaussian loss profile rises over the outer
    ``width_fraction`` of each window edge; ``strength`` (1/m) is the loss
    rate at the very edge.  The native boundary remains periodic.
    """

    strength: float = 1e3
    width_fraction: float = 0.1
    order: int = 4

    def __post_init__(self):
        if not self.strength > 0:
            raise InvalidArgumentError(f"strength must be positive, got {self.strength}")
        if not 0.0 < self.width_fraction < 0.5:
            raise InvalidArgumentError(
                f"width_fraction must lie in (0, 0.5), got {self.width_fraction}"
            )

    def loss_profile(self, grid: Grid) -> np.ndarray:
        """Position-dependent loss rate (1/m), zero in the interior."""
        half = grid.width / 2.0
        start = half * (1.0 - 2.0 * self.width_fraction)
        depth = np.clip((np.abs(grid.x) - start) / (half - start), 0.0, None)
        return self.strength * depth**self.order


def linear_half_step(fld: ComplexField, medium: MediumSpec, dz: float) -> ComplexField:
    """Advance the kinetic term by dz/2 (one half of a Strang step).

    Power-conserving; a plane wave exp(i k x) picks up the phase
    -k^2 (dz/2) / (2 k0).
    """
    mult = np.exp(-1j * fld.grid.wavenumbers**2 * (dz / 2.0) / (2.0 * medium.k0))
    samples = np.fft.ifft(np.fft.fft(fld.samples) * mult)
    return ComplexField(samples, fld.grid, fld.z + dz / 2.0)


def nonlinear_step(fld: ComplexField, medium: MediumSpec, dz: float) -> ComplexField:
    """Advance the Kerr phase and absorption by dz (pointwise).

    Multiplies the intensity by exactly exp(-alpha dz) and rotates the phase
    by k0 n2 |E|^2 dz (intensity taken at the start of the step).
    """
    intensity = np.abs(fld.samples) ** 2
    phase = np.exp(1j * medium.k0 * medium.n2 * intensity * dz)
    samples = fld.samples * phase
    if medium.alpha != 0.0:
        samples = samples * np.exp(-medium.alpha * dz / 2.0)
    return ComplexField(samples, fld.grid, fld.z)


def _check_plan(samples: np.ndarray, medium: MediumSpec, plan: PropagationPlan) -> None:
    with np.errstate(over="ignore"):
        peak = float(np.max(np.abs(samples) ** 2)) if samples.size else 0.0
    if not np.isfinite(peak):
        return  # the per-step finiteness check reports this with a step index
    dn_max = abs(medium.n2) * peak
    if dn_max > 0:
        z_nl = 1.0 / (medium.k0 * dn_max)
        if plan.dz > z_nl / _NONLINEAR_LENGTH_MARGIN:
            warnings.warn(
                f"dz = {plan.dz:.3g} m exceeds z_NL/{_NONLINEAR_LENGTH_MARGIN:.0f} "
                f"= {z_nl / _NONLINEAR_LENGTH_MARGIN:.3g} m at peak intensity; "
                "results may be under-resolved",
                StepSizeWarning,
                stacklevel=3,
            )


def _step_batch(samples, grid, medium, plan, on_snapshot=None, sponge=None):
    """Core fused Strang loop over a (..., n_points) array.  Returns final samples.

    ``on_snapshot(step_index, z, samples)`` is invoked at snapshot steps with
    the field in x space (trailing half step applied).
    """
    dz = plan.dz
    k2 = grid.wavenumbers**2
    half = np.exp(-1j * k2 * (dz / 2.0) / (2.0 * medium.k0))
    full = half * half
    gain = np.exp(-medium.alpha * dz / 2.0) if medium.alpha != 0.0 else None
    if sponge is not None:
        mask = np.exp(-sponge.loss_profile(grid) * dz / 2.0)
        gain = mask if gain is None else gain * mask
    kerr = 1j * medium.k0 * medium.n2 * dz
    stride = plan.snapshot_stride

    s = np.fft.ifft(np.fft.fft(samples, axis=-1) * half, axis=-1)
    for j in range(1, plan.n_steps + 1):
        with np.errstate(over="ignore", invalid="ignore"):
            s = s * np.exp(kerr * np.abs(s) ** 2)
        if gain is not None:
            s = s * gain
        snap = stride > 0 and j % stride == 0 and j < plan.n_steps
        if j == plan.n_steps or snap:
            s = np.fft.ifft(np.fft.fft(s, axis=-1) * half, axis=-1)
            if not np.all(np.isfinite(s.view(np.float64))):
                raise NumericalBlowupError(step=j, z=j * dz)
            if snap:
                on_snapshot(j, j * dz, s)
                s = np.fft.ifft(np.fft.fft(s, axis=-1) * half, axis=-1)
        else:
            s = np.fft.ifft(np.fft.fft(s, axis=-1) * full, axis=-1)
            if not np.all(np.isfinite(s.view(np.float64))):
                raise NumericalBlowupError(step=j, z=j * dz)
    return s


def propagate(
    fld: ComplexField,
    medium: MediumSpec,
    plan: PropagationPlan,
    sponge: SpongeSpec | None = None,
) -> Trajectory:
    """Run the split-step integrator over ``plan.z_span`` from the field's z.

    Deterministic for identical inputs.  Raises
    :class:`~photonfluid.errors.NumericalBlowupError` naming the step index
    if the field stops being finite.  ``sponge`` adds absorbing boundary
    layers (off by default; boundaries are otherwise periodic).
    """
    _check_plan(fld.samples, medium, plan)
    z0 = fld.z
    traj = Trajectory()
    if plan.snapshot_stride > 0:
        traj.snapshots.append((z0, fld.copy()))

    def record(step, z_rel, samples):
        traj.snapshots.append((z0 + z_rel, ComplexField(samples[0].copy(), fld.grid, z0 + z_rel)))

    final = _step_batch(
        fld.samples[None, :], fld.grid, medium, plan, on_snapshot=record, sponge=sponge
    )
    traj.final = ComplexField(final[0], fld.grid, z0 + plan.z_span)
    if plan.snapshot_stride > 0:
        traj.snapshots.append((traj.final.z, traj.final.copy()))
    return traj


def propagate_batch(
    samples: np.ndarray,
    grid: Grid,
    medium: MediumSpec,
    plan: PropagationPlan,
    sponge: SpongeSpec | None = None,
) -> np.ndarray:
    """Propagate many independent fields at once (rows of ``samples``).

    Rows share the grid, medium and plan but evolve independently; the result
    equals row-by-row :func:`propagate`.  Snapshots are not collected.
    """
    samples = np.asarray(samples, dtype=np.complex128)
    if samples.shape[-1] != grid.n_points:
        raise InvalidArgumentError(
            f"last axis ({samples.shape[-1]}) does not match grid ({grid.n_points})"
        )
    _check_plan(samples, medium, plan)
    return _step_batch(samples, grid, medium, plan, sponge=sponge)
