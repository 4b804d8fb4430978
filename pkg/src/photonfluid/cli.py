"""Command-line surface.

Subcommands::

    propagate   --config F [--snapshots N]   run one pump+probe propagation,
                                             write PFL1 snapshot files
    analytic    --delta-n X --k-max K --samples N [--lambda0 M] [--out FILE]
                                             closed-form dispersion curve CSV
    dispersion  --config F                   measured dispersion curve CSV
    sound-speed --config F                   sound-speed scan CSV + summary
    preset      fig2|fig3|fig4 --out DIR     canned measurement campaigns

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 fit/measurement failure.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from .config import PRESETS, load_config, preset_config
from .errors import (
    ConfigError,
    FitFailureError,
    InvalidArgumentError,
    InvalidConfigurationError,
    MeasurementFailureError,
    NumericalBlowupError,
)
from .experiment import (
    DispersionCurve,
    DispersionSample,
    MODE_ANALYTIC,
    measure_separation,
    phase_scan_envelope,
    reconstruct_dispersion,
    run_dispersion_scan,
    run_sound_speed_scan,
    synthesize_input,
)
from .medium import BogoliubovParams, bogoliubov_group_velocity, bogoliubov_omega
from .propagation import PropagationPlan, propagate
from .serialize import (
    write_curve_csv,
    write_envelope_map_csv,
    write_snapshot,
    write_sound_speed_csv,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_MEASUREMENT = 4


def _read_config(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    return load_config(text)


def _out_dir(config, override=None) -> Path:
    out = Path(override) if override else Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _cmd_propagate(args) -> int:
    config = _read_config(args.config)
    plan = config.plan
    if args.snapshots and args.snapshots > 0:
        stride = max(1, plan.n_steps // args.snapshots)
        plan = PropagationPlan(plan.z_span, plan.n_steps, snapshot_stride=stride)
    field = synthesize_input(config.grid(), config.pump, config.probe)
    trajectory = propagate(field, config.medium, plan)
    out = _out_dir(config)
    lambda0 = config.medium.lambda0
    written = []
    if plan.snapshot_stride > 0:
        for index, (_z, snap) in enumerate(trajectory.snapshots):
            path = out / f"field_{index:04d}.pfl"
            path.write_bytes(write_snapshot(snap, lambda0))
            written.append(path)
    else:
        path = out / "field_final.pfl"
        path.write_bytes(write_snapshot(trajectory.final, lambda0))
        written.append(path)
    print(f"propagated to z = {trajectory.final.z:.6g} m; wrote {len(written)} file(s):")
    for path in written:
        print(f"  {path}")
    return EXIT_OK


def _cmd_analytic(args) -> int:
    if args.delta_n == 0:
        raise ConfigError("--delta-n must be nonzero")
    if args.k_max <= 0 or args.samples < 2:
        raise ConfigError("--k-max must be positive and --samples >= 2")
    params = BogoliubovParams(-abs(args.delta_n), 2.0 * np.pi / args.lambda0)
    k = np.linspace(0.0, args.k_max, args.samples)
    v_g = np.asarray(bogoliubov_group_velocity(k, params))
    omega_recon = reconstruct_dispersion(k, v_g)
    curve = DispersionCurve()
    for ki, vgi, omri in zip(k, v_g, omega_recon):
        curve.samples.append(
            DispersionSample(
                float(ki),
                float(vgi),
                MODE_ANALYTIC,
                0.0,
                omega_recon=float(omri),
                omega_analytic=float(bogoliubov_omega(ki, params)),
            )
        )
    text = write_curve_csv(curve)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_dispersion(args) -> int:
    config = _read_config(args.config)
    curve = run_dispersion_scan(config)
    out = _out_dir(config)
    path = out / "dispersion.csv"
    path.write_text(write_curve_csv(curve))
    print(f"wrote {path} ({len(curve.samples)} points, {len(curve.failures)} failures)")
    for k, reason in curve.failures:
        print(f"  failed at k = {k:.4g} 1/m: {reason}")
    return EXIT_OK


def _cmd_sound_speed(args) -> int:
    config = _read_config(args.config)
    if config.intensities is None:
        raise ConfigError("config must list 'intensities' for a sound-speed scan")
    scan = run_sound_speed_scan(config, config.intensities)
    out = _out_dir(config)
    path = out / "sound_speed.csv"
    path.write_text(write_sound_speed_csv(scan))
    summary = out / "sound_speed_summary.txt"
    summary.write_text(
        f"exponent = {scan.exponent:.6f}\nprefactor = {scan.prefactor:.6e}\n"
    )
    print(f"wrote {path} and {summary}")
    print(f"c_s ~ I^{scan.exponent:.4f} (prefactor {scan.prefactor:.4e})")
    return EXIT_OK


def run_preset(name: str, out_dir: str) -> list:
    """Run a canned campaign, writing its data files; returns written paths."""
    config = preset_config(name)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    if name == "fig2":
        grid = config.grid()
        envelopes, extracted = [], DispersionCurve()
        for k in config.k_list:
            envelope = phase_scan_envelope(config, k)
            envelopes.append(envelope)
            try:
                separation, v_g, mode, flagged = measure_separation(envelope, k, config)
                extracted.samples.append(
                    DispersionSample(k, v_g, mode, separation, flagged=flagged)
                )
            except MeasurementFailureError as exc:
                extracted.failures.append((float(k), str(exc)))
        map_path = out / "fig2_envelope_map.csv"
        map_path.write_text(write_envelope_map_csv(config.k_list, grid.x, envelopes))
        curve_path = out / "fig2_separation.csv"
        curve_path.write_text(write_curve_csv(extracted))
        written += [map_path, curve_path]
    elif name == "fig3":
        curve = run_dispersion_scan(config)
        path = out / "fig3_dispersion.csv"
        path.write_text(write_curve_csv(curve))
        written.append(path)
    elif name == "fig4":
        scan = run_sound_speed_scan(config, config.intensities)
        path = out / "fig4_sound_speed.csv"
        path.write_text(write_sound_speed_csv(scan))
        summary = out / "fig4_summary.txt"
        summary.write_text(
            f"exponent = {scan.exponent:.6f}\nprefactor = {scan.prefactor:.6e}\n"
        )
        written += [path, summary]
    return written


def _cmd_preset(args) -> int:
    written = run_preset(args.name, args.out)
    print(f"preset '{args.name}' wrote:")
    for path in written:
        print(f"  {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photonfluid",
        description="Photon-fluid propagation and dispersion measurement toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("propagate", help="single pump+probe propagation")
    p.add_argument("--config", required=True)
    p.add_argument("--snapshots", type=int, default=0, metavar="N")
    p.set_defaults(func=_cmd_propagate)

    p = sub.add_parser("analytic", help="closed-form dispersion curve")
    p.add_argument("--delta-n", type=float, required=True, dest="delta_n")
    p.add_argument("--k-max", type=float, required=True, dest="k_max")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--lambda0", type=float, default=780e-9)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_analytic)

    p = sub.add_parser("dispersion", help="measured dispersion curve")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_dispersion)

    p = sub.add_parser("sound-speed", help="sound speed vs pump intensity")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_sound_speed)

    p = sub.add_parser("preset", help="canned measurement campaigns")
    p.add_argument("name", choices=sorted(PRESETS))
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_preset)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, InvalidConfigurationError, InvalidArgumentError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalBlowupError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (FitFailureError, MeasurementFailureError) as exc:
        print(f"measurement failure: {exc}", file=sys.stderr)
        return EXIT_MEASUREMENT


if __name__ == "__main__":
    sys.exit(main())
