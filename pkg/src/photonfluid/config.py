"""Experiment configuration: key-value parsing, validation, presets.

Config files are flat text, one ``key = value`` pair per line; ``#`` starts
a comment.  All quantities are plain SI floats (no unit suffixes).  Keys:

required
    lambda0        vacuum wavelength (m)
    n2             Kerr index (m^2/W), negative = defocusing
    alpha          linear absorption (1/m)
    L              medium length (m)
    n_points       grid samples (integer)
    width          grid window (m)
    probe_waist    probe envelope 1/e half width (m)
    pump_intensity OR delta_n_target
                   background intensity (W/m^2), or the |n2 I| to realize

optional (defaults in parentheses)
    probe_amplitude (0.1)   relative field amplitude of the probe
    probe_k        (0.0)    probe carrier (1/m)
    probe_phase    (0.0)    pump-probe phase (rad)
    n_steps        (1000)   propagation steps
    snapshot_stride (0)     steps between recorded snapshots, 0 = final only
    n_phase        (40)     phase-scan samples over [0, 2 pi)
    filter_cutoff_factor (0.5)  envelope lowpass cutoff = factor * k_perp,
                            floored at the probe envelope bandwidth
    scan_k_list             comma-separated k values (1/m) for dispersion scans
    scan_k_max, scan_n_k    alternatively, a uniform k grid from 0
    intensities             comma-separated pump intensities for sound-speed scans
    output_dir     (.)      where commands write their files
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError
from .experiment import ProbeSpec, PumpSpec
from .grid import Grid
from .medium import MediumSpec
from .propagation import PropagationPlan

_REQUIRED_KEYS = ("lambda0", "n2", "alpha", "L", "n_points", "width", "probe_waist")

_DEFAULTS = {
    "probe_amplitude": 0.1,
    "probe_k": 0.0,
    "probe_phase": 0.0,
    "n_steps": 1000,
    "snapshot_stride": 0,
    "n_phase": 40,
    "filter_cutoff_factor": 0.5,
    "output_dir": ".",
}

_LIST_KEYS = ("scan_k_list", "intensities")
_INT_KEYS = ("n_points", "n_steps", "snapshot_stride", "n_phase", "scan_n_k")
_STRING_KEYS = ("output_dir",)
_FLOAT_KEYS = (
    "lambda0",
    "n2",
    "alpha",
    "L",
    "width",
    "pump_intensity",
    "delta_n_target",
    "probe_amplitude",
    "probe_waist",
    "probe_k",
    "probe_phase",
    "filter_cutoff_factor",
    "scan_k_max",
)
_KNOWN_KEYS = set(_FLOAT_KEYS) | set(_INT_KEYS) | set(_LIST_KEYS) | set(_STRING_KEYS)


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated bundle of everything a virtual experiment needs."""

    medium: MediumSpec
    n_points: int
    width: float
    pump: PumpSpec
    probe: ProbeSpec
    plan: PropagationPlan
    k_list: tuple | None = None
    intensities: tuple | None = None
    n_phase: int = 40
    filter_cutoff_factor: float = 0.5
    output_dir: str = "."

    def grid(self) -> Grid:
        return Grid(self.n_points, self.width)

    def with_pump_intensity(self, intensity: float) -> "ExperimentConfig":
        return replace(self, pump=PumpSpec(intensity))


def _parse_value(key, raw, line_no):
    if key in _STRING_KEYS:
        return raw
    if key in _LIST_KEYS:
        try:
            values = tuple(float(part) for part in raw.split(",") if part.strip())
        except ValueError:
            raise ConfigError(
                f"expected comma-separated numbers, got '{raw}'", key=key, line=line_no
            ) from None
        if not values:
            raise ConfigError("empty list", key=key, line=line_no)
        return values
    if key in _INT_KEYS:
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(
                f"expected an integer, got '{raw}'", key=key, line=line_no
            ) from None
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(
            f"expected a plain SI number (no unit suffix), got '{raw}'",
            key=key,
            line=line_no,
        ) from None
    if not np.isfinite(value):
        raise ConfigError(f"value must be finite, got '{raw}'", key=key, line=line_no)
    return value


def load_config(text: str) -> ExperimentConfig:
    """Parse and validate configuration text.

    Every malformed input raises :class:`~photonfluid.errors.ConfigError`
    naming the offending key and line; missing required keys are reported
    all at once.
    """
    entries, lines = {}, {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"expected 'key = value', got '{stripped}'", line=line_no)
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"unknown key '{key}'", line=line_no)
        if key in entries:
            raise ConfigError("duplicate key", key=key, line=line_no)
        entries[key] = _parse_value(key, raw, line_no)
        lines[key] = line_no

    missing = [k for k in _REQUIRED_KEYS if k not in entries]
    if "pump_intensity" not in entries and "delta_n_target" not in entries:
        missing.append("pump_intensity (or delta_n_target)")
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")
    if "pump_intensity" in entries and "delta_n_target" in entries:
        raise ConfigError(
            "give either pump_intensity or delta_n_target, not both",
            key="delta_n_target",
            line=lines["delta_n_target"],
        )

    def positive(key, value):
        if not value > 0:
            raise ConfigError(
                f"must be positive, got {value}", key=key, line=lines.get(key)
            )
        return value

    values = dict(_DEFAULTS)
    values.update(entries)

    try:
        medium = MediumSpec(
            lambda0=positive("lambda0", values["lambda0"]),
            n2=values["n2"],
            alpha=values["alpha"],
            length=positive("L", values["L"]),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    if "delta_n_target" in entries:
        target = positive("delta_n_target", abs(values["delta_n_target"]))
        if values["n2"] == 0:
            raise ConfigError(
                "delta_n_target needs a nonzero n2", key="n2", line=lines.get("n2")
            )
        intensity = target / abs(values["n2"])
    else:
        intensity = positive("pump_intensity", values["pump_intensity"])

    try:
        pump = PumpSpec(intensity)
        probe = ProbeSpec(
            relative_amplitude=values["probe_amplitude"],
            waist=positive("probe_waist", values["probe_waist"]),
            k_perp=values["probe_k"],
            phase=values["probe_phase"],
        )
        plan = PropagationPlan(
            z_span=medium.length,
            n_steps=positive("n_steps", values["n_steps"]),
            snapshot_stride=values["snapshot_stride"],
        )
        grid = Grid(values["n_points"], positive("width", values["width"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    k_list = None
    if "scan_k_list" in entries:
        k_list = entries["scan_k_list"]
    elif "scan_k_max" in entries or "scan_n_k" in entries:
        if not ("scan_k_max" in entries and "scan_n_k" in entries):
            raise ConfigError("scan_k_max and scan_n_k must be given together")
        n_k = entries["scan_n_k"]
        if n_k < 2:
            raise ConfigError(
                "need at least 2 scan points", key="scan_n_k", line=lines["scan_n_k"]
            )
        k_list = tuple(
            np.linspace(0.0, positive("scan_k_max", entries["scan_k_max"]), n_k)
        )

    return ExperimentConfig(
        medium=medium,
        n_points=grid.n_points,
        width=grid.width,
        pump=pump,
        probe=probe,
        plan=plan,
        k_list=k_list,
        intensities=entries.get("intensities"),
        n_phase=positive("n_phase", values["n_phase"]),
        filter_cutoff_factor=positive(
            "filter_cutoff_factor", values["filter_cutoff_factor"]
        ),
        output_dir=values["output_dir"],
    )


# --- presets reproducing the bundled measurement campaigns -----------------
#
# Shared medium: 780 nm light in a 7.5 cm defocusing cell, n2 = -3.1e-11
# m^2/W, no absorption.  The k grids put extra density where the measured
# curve bends (packet-interference region) and extend to five healing
# wavenumbers.

_COMMON = """
lambda0 = 780e-9
n2 = -3.1e-11
alpha = 0.0
L = 7.5e-2
n_points = 2048
width = 8.192e-3
probe_amplitude = 0.1
probe_waist = 180e-6
n_phase = 40
"""

PRESET_FIG2 = _COMMON + """
# strong-interaction envelope map: constant separation up to ~2pi/xi = 5.8e4
delta_n_target = 1.3e-5
n_steps = 500
scan_k_list = 0,5e3,1e4,1.5e4,2e4,2.5e4,3e4,3.6e4,4.2e4,4.9e4,5.8e4,6.6e4,7.4e4,8.2e4,9.1e4,1.0e5
"""

PRESET_FIG3 = _COMMON + """
# dispersion measurement at delta_n = 3.9e-6 (2pi/xi = 3.18e4)
delta_n_target = 3.9e-6
n_steps = 500
scan_k_list = 0,2e3,4e3,6e3,8e3,1e4,1.2e4,1.4e4,1.5e4,1.6e4,1.8e4,2e4,2.2e4,2.4e4,2.7e4,3e4,3.4e4,3.8e4,4.4e4,5e4,5.7e4,6.6e4,7.6e4,8.8e4,1.01e5,1.17e5,1.37e5,1.59e5
"""

PRESET_FIG4 = _COMMON + """
# sound-speed scaling over one intensity decade, probe carrier fixed at 0;
# step count sized to the nonlinear length at the top intensity
pump_intensity = 2.26e5
n_steps = 1200
intensities = 2.26e5,3.58e5,5.67e5,9.0e5,1.43e6,2.26e6
"""

PRESETS = {"fig2": PRESET_FIG2, "fig3": PRESET_FIG3, "fig4": PRESET_FIG4}


def preset_config(name: str) -> ExperimentConfig:
    """Named preset; raises ConfigError for unknown names."""
    try:
        text = PRESETS[name]
    except KeyError:
        raise ConfigError(
            f"unknown preset '{name}' (choose from {', '.join(sorted(PRESETS))})"
        ) from None
    return load_config(text)
