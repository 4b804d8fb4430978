"""photonfluid: paraxial fluid-of-light simulation and measurement toolkit.

A laser beam in a defocusing Kerr medium behaves as a 1D quantum fluid whose
excitations obey a sound-to-particle dispersion crossover.  This package
propagates pump+probe fields with a second-order split-step Fourier scheme,
replays an interferometric group-velocity measurement, reconstructs the
excitation dispersion relation, and checks the square-root scaling of the
sound speed with fluid density.
"""

from .config import ExperimentConfig, PRESETS, load_config, preset_config
from .errors import (
    ConfigError,
    FitFailureError,
    FormatError,
    InvalidArgumentError,
    InvalidConfigurationError,
    MeasurementFailureError,
    ModulationalInstabilityWarning,
    NumericalBlowupError,
    PhotonFluidError,
    SingularInputError,
    StepSizeWarning,
    WindowMarginWarning,
)
from .experiment import (
    DispersionCurve,
    DispersionSample,
    ProbeSpec,
    PumpSpec,
    SoundSpeedScan,
    measure_separation,
    phase_scan_envelope,
    reconstruct_dispersion,
    run_dispersion_scan,
    run_sound_speed_scan,
    synthesize_input,
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
from .grid import (
    ComplexField,
    Grid,
    MadelungFields,
    madelung_decompose,
    madelung_recompose,
    make_grid,
    total_power,
)
from .medium import (
    BogoliubovParams,
    MediumSpec,
    bogoliubov_group_velocity,
    bogoliubov_omega,
    delta_n,
    healing_length,
    landau_critical_speed,
    sound_speed_angle,
)
from .propagation import (
    PropagationPlan,
    SpongeSpec,
    Trajectory,
    linear_half_step,
    nonlinear_step,
    propagate,
    propagate_batch,
)
from .serialize import (
    read_snapshot,
    write_curve_csv,
    write_envelope_map_csv,
    write_snapshot,
    write_sound_speed_csv,
)

__version__ = "0.1.0"
