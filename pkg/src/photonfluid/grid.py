"""Transverse sampling grid, complex field container and basic diagnostics.

Conventions used throughout the package:

* the transverse axis is sampled uniformly, ``x_i = (i - n//2) * dx``, so the
  window centre sits exactly on a sample;
* wavenumbers are FFT-ordered, ``k_j = 2*pi*j / width`` with the Nyquist
  component (even ``n_points``) assigned to the negative branch;
* field amplitudes are stored in sqrt(W/m^2), so ``|E|^2`` is directly an
  intensity and ``n2 * |E|^2`` a refractive-index change.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InvalidArgumentError

# Density below this fraction of the peak is treated as vacuum: the phase is
# numerically meaningless there and the flow velocity is left undefined.
DENSITY_FLOOR_FRACTION = 1e-6


@dataclass(frozen=True)
class Grid:
    """Uniform 1D transverse grid of ``n_points`` samples over ``width`` metres."""

    n_points: int
    width: float

    def __post_init__(self):
        if self.n_points < 2:
            raise InvalidArgumentError(f"n_points must be >= 2, got {self.n_points}")
        if not self.width > 0:
            raise InvalidArgumentError(f"width must be positive, got {self.width}")

    @property
    def dx(self) -> float:
        """Sample spacing (m)."""
        return self.width / self.n_points

    @cached_property
    def x(self) -> np.ndarray:
        """Sample positions (m), zero at index ``n_points // 2``."""
        return (np.arange(self.n_points) - self.n_points // 2) * self.dx

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """FFT-ordered angular wavenumbers (1/m); Nyquist on the negative branch."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.dx)

    @property
    def nyquist(self) -> float:
        """Largest representable |k| (1/m)."""
        return np.pi / self.dx


def make_grid(n_points: int, width: float) -> Grid:
    """Create a :class:`Grid`; arguments validated."""
    return Grid(int(n_points), float(width))


@dataclass
class ComplexField:
    """Complex optical amplitude sampled on a :class:`Grid`.

    ``samples`` has unit sqrt(W/m^2); ``z`` is the propagation coordinate (m).
    Operations in this package are pure: they return new fields.
    """

    samples: np.ndarray
    grid: Grid
    z: float = 0.0

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.complex128)
        if self.samples.shape != (self.grid.n_points,):
            raise InvalidArgumentError(
                f"samples shape {self.samples.shape} does not match grid "
                f"({self.grid.n_points} points)"
            )

    def intensity(self) -> np.ndarray:
        """|E|^2 (W/m^2)."""
        return np.abs(self.samples) ** 2

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.samples)))

    def copy(self) -> "ComplexField":
        return ComplexField(self.samples.copy(), self.grid, self.z)


@dataclass
class MadelungFields:
    """Hydrodynamic decomposition of a field: density, phase and flow angle.

    ``velocity`` is the dimensionless transverse angle (1/k0) dPhi/dx; it is
    NaN wherever ``valid`` is False (density below the floor).
    """

    density: np.ndarray
    phase: np.ndarray
    velocity: np.ndarray
    valid: np.ndarray
    density_floor: float = field(default=0.0)


def total_power(field: ComplexField) -> float:
    """Integrated intensity, sum |E_i|^2 dx (W/m).

    Conserved exactly by lossless propagation; the standard drift diagnostic.
    """
    return float(np.sum(field.intensity()) * field.grid.dx)


def _unwrap_from_centre(phase: np.ndarray, centre: int) -> np.ndarray:
    """Cumulative 2-pi unwrap outward from ``centre``, both directions."""
    out = np.empty_like(phase)
    out[centre:] = np.unwrap(phase[centre:])
    out[: centre + 1] = np.unwrap(phase[centre::-1])[::-1]
    return out


def madelung_decompose(
    field: ComplexField,
    k0: float,
    density_floor_fraction: float = DENSITY_FLOOR_FRACTION,
) -> MadelungFields:
    """Split E = sqrt(rho) exp(i Phi) into density, unwrapped phase and velocity.

    The phase is unwrapped along x starting from the window centre; the
    velocity (1/k0) dPhi/dx uses central differences.  Samples with density
    below ``density_floor_fraction * max(rho)`` are flagged invalid and get
    NaN velocity.
    """
    if not k0 > 0:
        raise InvalidArgumentError(f"k0 must be positive, got {k0}")
    rho = field.intensity()
    floor = density_floor_fraction * rho.max() if rho.max() > 0 else 0.0
    valid = rho > floor if floor > 0 else np.zeros_like(rho, dtype=bool)

    phase = _unwrap_from_centre(np.angle(field.samples), field.grid.n_points // 2)
    velocity = np.gradient(phase, field.grid.dx) / k0
    velocity = np.where(valid, velocity, np.nan)
    return MadelungFields(rho, phase, velocity, valid, density_floor=floor)


def madelung_recompose(fields: MadelungFields, grid: Grid, z: float = 0.0) -> ComplexField:
    """Inverse of :func:`madelung_decompose`: sqrt(rho) exp(i Phi)."""
    samples = np.sqrt(fields.density) * np.exp(1j * fields.phase)
    return ComplexField(samples, grid, z)
