"""Portable field snapshots and curve serialization.

Snapshot format (``PFL1``): a text header terminated by an ``end`` line,
followed by the raw samples as little-endian float64 (re, im) pairs in grid
order.  Byte layout::

    PFL1\\n
    version = 1\\n
    n_points = <int>\\n
    width_m = <repr float>\\n
    z_m = <repr float>\\n
    lambda0_m = <repr float>\\n
    intensity_units = W/m^2\\n
    end\\n
    <16 * n_points payload bytes>

Round trips are bit exact on any platform.  CSV writers use 17-significant-
digit formatting so identical runs produce byte-identical files.
"""

import numpy as np

from .errors import FormatError
from .grid import ComplexField, Grid

MAGIC = b"PFL1"
VERSION = 1
_INTENSITY_UNITS = "W/m^2"


def _fmt(value: float) -> str:
    """Stable float formatting: 17 significant digits, locale-free."""
    return format(float(value), ".17g")


def write_snapshot(field: ComplexField, lambda0: float = 0.0) -> bytes:
    """Serialize a field; ``lambda0`` records the medium wavelength (0 = unset)."""
    header = (
        MAGIC + b"\n"
        + f"version = {VERSION}\n".encode("ascii")
        + f"n_points = {field.grid.n_points}\n".encode("ascii")
        + f"width_m = {_fmt(field.grid.width)}\n".encode("ascii")
        + f"z_m = {_fmt(field.z)}\n".encode("ascii")
        + f"lambda0_m = {_fmt(lambda0)}\n".encode("ascii")
        + f"intensity_units = {_INTENSITY_UNITS}\n".encode("ascii")
        + b"end\n"
    )
    pairs = np.empty((field.grid.n_points, 2), dtype="<f8")
    pairs[:, 0] = field.samples.real
    pairs[:, 1] = field.samples.imag
    return header + pairs.tobytes()


def read_snapshot(data: bytes) -> ComplexField:
    """Inverse of :func:`write_snapshot`; validates magic, version and length."""
    if not data.startswith(MAGIC + b"\n"):
        raise FormatError("bad magic: not a PFL1 snapshot")
    try:
        end = data.index(b"end\n", len(MAGIC) + 1)
    except ValueError:
        raise FormatError("header not terminated by 'end'") from None
    header_text = data[len(MAGIC) + 1 : end].decode("ascii", errors="replace")
    fields = {}
    for line in header_text.splitlines():
        if "=" not in line:
            raise FormatError(f"malformed header line '{line}'")
        key, value = (part.strip() for part in line.split("=", 1))
        fields[key] = value

    try:
        version = int(fields["version"])
        n_points = int(fields["n_points"])
        width = float(fields["width_m"])
        z = float(fields["z_m"])
    except (KeyError, ValueError) as exc:
        raise FormatError(f"incomplete or malformed header: {exc}") from None
    if version != VERSION:
        raise FormatError(f"unsupported snapshot version {version}")

    payload = data[end + len(b"end\n") :]
    expected = 16 * n_points
    if len(payload) != expected:
        raise FormatError(
            f"payload is {len(payload)} bytes, expected {expected} for "
            f"{n_points} points"
        )
    pairs = np.frombuffer(payload, dtype="<f8").reshape(n_points, 2)
    samples = pairs[:, 0] + 1j * pairs[:, 1]
    return ComplexField(samples, Grid(n_points, width), z=z)


def write_curve_csv(curve) -> str:
    """Dispersion curve as CSV: one row per sample, fixed column order."""
    lines = ["k_per_m,v_g_rad,mode,D_m,omega_recon_per_m,omega_analytic_per_m"]
    for s in curve.samples:
        lines.append(
            ",".join(
                (
                    _fmt(s.k_perp),
                    _fmt(s.v_g),
                    s.mode,
                    _fmt(s.separation),
                    _fmt(s.omega_recon),
                    _fmt(s.omega_analytic),
                )
            )
        )
    return "\n".join(lines) + "\n"


def write_sound_speed_csv(scan) -> str:
    """Sound-speed scan as CSV (intensity, measured speed)."""
    lines = ["intensity_w_per_m2,c_s_rad"]
    for intensity, c_s in zip(scan.intensities, scan.sound_speeds):
        lines.append(f"{_fmt(intensity)},{_fmt(c_s)}")
    return "\n".join(lines) + "\n"


def write_envelope_map_csv(k_values, x, envelopes) -> str:
    """Envelope-vs-carrier map in long format (k, x, envelope)."""
    lines = ["k_per_m,x_m,envelope"]
    for k, envelope in zip(k_values, envelopes):
        for xi, yi in zip(x, envelope):
            lines.append(f"{_fmt(k)},{_fmt(xi)},{_fmt(yi)}")
    return "\n".join(lines) + "\n"
