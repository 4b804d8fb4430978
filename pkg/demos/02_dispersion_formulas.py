"""Closed-form excitation quantities of the photon fluid.

Prints the healing length, sound angle and Landau critical speed for two
interaction strengths, then tabulates the dispersion relation Omega(k) and
its group velocity across the sound-to-particle crossover.

Run:  python demos/02_dispersion_formulas.py [--plot]
"""

import sys

import numpy as np

from photonfluid import (
    BogoliubovParams,
    bogoliubov_group_velocity,
    bogoliubov_omega,
    healing_length,
    landau_critical_speed,
    sound_speed_angle,
)

LAMBDA0 = 780e-9
K0 = 2 * np.pi / LAMBDA0

for dn in (1.3e-5, 3.9e-6):
    xi = healing_length(LAMBDA0, dn)
    print(f"|dn| = {dn:.2e}:  xi = {xi * 1e6:.1f} um,  2pi/xi = {2 * np.pi / xi:.3e} 1/m,"
          f"  c_s = {sound_speed_angle(dn):.3e} rad,"
          f"  Landau speed = {landau_critical_speed(BogoliubovParams(-dn, K0)):.3e} rad")

dn = 3.9e-6
params = BogoliubovParams(-dn, K0)
xi = healing_length(LAMBDA0, dn)
print(f"\ndispersion at |dn| = {dn:.1e} (sound below k ~ 2pi/xi, free particle above):")
print(f"{'k (1/m)':>10} {'k*xi/2pi':>9} {'Omega (1/m)':>12} {'v_g (rad)':>11} "
      f"{'sound?':>7} {'particle?':>9}")
for frac in (0.02, 0.1, 0.3, 1.0, 3.0, 10.0, 50.0):
    k = frac * 2 * np.pi / xi
    omega = bogoliubov_omega(k, params)
    v_g = bogoliubov_group_velocity(k, params)
    sound = abs(omega - sound_speed_angle(dn) * k) / omega
    particle = abs(omega - k**2 / (2 * K0)) / omega
    print(f"{k:10.3g} {frac:9.2f} {omega:12.4g} {v_g:11.4g} "
          f"{100 * sound:6.1f}% {100 * particle:8.1f}%")
print("(percentages: deviation from the pure sound / pure particle laws)")

if "--plot" in sys.argv:
    try:
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib not installed; rerun without --plot")
    k = np.linspace(0, 6 * 2 * np.pi / xi, 400)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    ax1.plot(k, bogoliubov_omega(k, params), label="Omega(k)")
    ax1.plot(k, sound_speed_angle(dn) * k, "--", label="sound")
    ax1.plot(k, k**2 / (2 * K0), ":", label="particle")
    ax1.set_xlabel("k (1/m)")
    ax1.set_ylabel("Omega (1/m)")
    ax1.legend()
    ax2.plot(k, bogoliubov_group_velocity(k, params))
    ax2.axhline(sound_speed_angle(dn), ls="--", color="gray")
    ax2.set_xlabel("k (1/m)")
    ax2.set_ylabel("v_g (rad)")
    fig.tight_layout()
    plt.show()
