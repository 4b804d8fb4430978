"""Exception and warning types shared across the package.

The CLI maps these onto exit codes: configuration problems exit 2,
numerical failures exit 3, fit/measurement failures exit 4.
"""


class PhotonFluidError(Exception):
    """Base class for all package-specific errors."""


class InvalidArgumentError(PhotonFluidError, ValueError):
    """An argument violates a documented precondition."""


class SingularInputError(PhotonFluidError, ValueError):
    """Input is at a singular point of a formula (e.g. zero nonlinear index)."""


class ConfigError(PhotonFluidError):
    """Configuration text could not be parsed or validated."""

    def __init__(self, message, key=None, line=None):
        detail = message
        if key is not None:
            detail = f"key '{key}': {detail}"
        if line is not None:
            detail = f"line {line}: {detail}"
        super().__init__(detail)
        self.key = key
        self.line = line


class InvalidConfigurationError(PhotonFluidError):
    """A physically inconsistent set of run parameters (e.g. unresolvable probe)."""


class NumericalBlowupError(PhotonFluidError):
    """Non-finite samples appeared during propagation."""

    def __init__(self, step, z):
        super().__init__(
            f"non-finite field after step {step} (z = {z:.6g} m); "
            "check sign of n2, grid resolution and step size"
        )
        self.step = step
        self.z = z


class FitFailureError(PhotonFluidError):
    """Least-squares fit did not converge; carries the last iterate."""

    def __init__(self, message, last_params=None, residual_rms=None):
        super().__init__(message)
        self.last_params = last_params
        self.residual_rms = residual_rms


class MeasurementFailureError(PhotonFluidError):
    """A wavepacket separation could not be measured from an envelope."""


class FormatError(PhotonFluidError):
    """Malformed binary snapshot data."""


class ModulationalInstabilityWarning(UserWarning):
    """Focusing nonlinearity: plane-wave dispersion formulas assume a defocusing medium."""


class StepSizeWarning(UserWarning):
    """Propagation step is coarse compared to the nonlinear length."""


class WindowMarginWarning(UserWarning):
    """Wavepackets are projected to approach the periodic window edges."""
