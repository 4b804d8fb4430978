"""Medium parameters and closed-form plane-wave excitation quantities.

All excitation formulas are expressed in propagation-normalized units:
frequencies Omega carry 1/m (oscillation per unit propagation distance) and
velocities are dimensionless transverse angles.  With the nonlinear index
change ``dn = n2 * I`` (negative for a defocusing medium) and ``u = |dn|``:

* sound speed (angle):       c_s = sqrt(u)
* healing length:            xi  = (lambda0 / 2) / sqrt(u)
* dispersion:                Omega(k) = sqrt(u k^2 + (k^2 / 2 k0)^2)
* group velocity:            v_g(k) = (u k + k^3 / 2 k0^2) / Omega(k),
                             continuously extended to v_g(0) = sqrt(u)
* critical transverse speed: min over k of Omega/k = sqrt(u)

Formulas take |dn|; a focusing medium (dn > 0) raises a modulational
instability warning since the plane-wave background is then unstable.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidArgumentError,
    ModulationalInstabilityWarning,
    SingularInputError,
)


@dataclass(frozen=True)
class MediumSpec:
    """Kerr medium: vacuum wavelength, signed n2, linear absorption, length.

    Units: lambda0 (m), n2 (m^2/W, negative = defocusing), alpha (1/m),
    length (m).
    """

    lambda0: float
    n2: float
    alpha: float
    length: float

    def __post_init__(self):
        if not self.lambda0 > 0:
            raise InvalidArgumentError(f"lambda0 must be positive, got {self.lambda0}")
        if not self.length > 0:
            raise InvalidArgumentError(f"length must be positive, got {self.length}")
        if self.alpha < 0:
            raise InvalidArgumentError(f"alpha must be >= 0, got {self.alpha}")

    @property
    def k0(self) -> float:
        """Vacuum wavevector 2 pi / lambda0 (1/m)."""
        return 2.0 * np.pi / self.lambda0


@dataclass(frozen=True)
class BogoliubovParams:
    """Inputs of the excitation formulas: nonlinear index change and k0."""

    delta_n: float
    k0: float

    def __post_init__(self):
        if not np.isfinite(self.delta_n):
            raise InvalidArgumentError(f"delta_n must be finite, got {self.delta_n}")
        if not self.k0 > 0:
            raise InvalidArgumentError(f"k0 must be positive, got {self.k0}")
        if self.delta_n > 0:
            warnings.warn(
                "delta_n > 0 (focusing): the plane-wave background is "
                "modulationally unstable and the dispersion formulas assume "
                "a defocusing medium",
                ModulationalInstabilityWarning,
                stacklevel=2,
            )

    @classmethod
    def from_medium(cls, medium: MediumSpec, intensity: float) -> "BogoliubovParams":
        return cls(delta_n(medium, intensity), medium.k0)


def delta_n(medium: MediumSpec, intensity: float) -> float:
    """Nonlinear index change n2 * I (signed, dimensionless)."""
    if intensity < 0:
        raise InvalidArgumentError(f"intensity must be >= 0, got {intensity}")
    return medium.n2 * intensity


def healing_length(lambda0: float, dn: float) -> float:
    """Crossover length between sound-like and particle-like behaviour (m)."""
    if dn == 0:
        raise SingularInputError("healing length is undefined for delta_n = 0")
    return (lambda0 / 2.0) / np.sqrt(abs(dn))


def sound_speed_angle(dn: float) -> float:
    """Sound speed as a transverse angle, sqrt(|dn|) (rad)."""
    return float(np.sqrt(abs(dn)))


def bogoliubov_omega(k, params: BogoliubovParams):
    """Excitation frequency Omega(k) in 1/m; odd extension for k < 0.

    Linear in k below ~2 pi / xi (sound), quadratic k^2 / 2 k0 above
    (free particle).  Accepts scalars or arrays.
    """
    k = np.asarray(k, dtype=float)
    ak = np.abs(k)
    omega = np.sqrt(abs(params.delta_n) * ak**2 + (ak**2 / (2.0 * params.k0)) ** 2)
    result = np.sign(k) * omega
    return float(result) if result.ndim == 0 else result


def bogoliubov_group_velocity(k, params: BogoliubovParams):
    """Group velocity dOmega/dk as a transverse angle (rad); even in k.

    The removable singularity at k = 0 is filled with the sound speed.
    """
    k = np.asarray(k, dtype=float)
    ak = np.abs(k)
    u = abs(params.delta_n)
    omega = np.sqrt(u * ak**2 + (ak**2 / (2.0 * params.k0)) ** 2)
    safe = np.where(omega == 0.0, 1.0, omega)
    vg = np.where(
        omega == 0.0,
        np.sqrt(u),
        (u * ak + ak**3 / (2.0 * params.k0**2)) / safe,
    )
    return float(vg) if vg.ndim == 0 else vg


def landau_critical_speed(params: BogoliubovParams) -> float:
    """Critical transverse angle min_k Omega(k)/k.

    Omega/k = sqrt(|dn| + k^2/4k0^2) is increasing in |k|, so the infimum is
    the k -> 0 limit: exactly the sound speed.  Returns 0 for |dn| = 0.
    """
    return sound_speed_angle(params.delta_n)
