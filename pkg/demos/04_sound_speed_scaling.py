"""Sound speed vs fluid density: the square-root law.

The probe carrier is fixed at zero and the zero-carrier packet speed is
measured while the pump intensity (the fluid density) spans a decade.  A
power-law fit of c_s(I) should return an exponent of one half.

Run:  python demos/04_sound_speed_scaling.py
"""

import numpy as np

from photonfluid import (
    ExperimentConfig,
    MediumSpec,
    ProbeSpec,
    PropagationPlan,
    PumpSpec,
    run_sound_speed_scan,
)

medium = MediumSpec(lambda0=780e-9, n2=-3.1e-11, alpha=0.0, length=7.5e-2)
config = ExperimentConfig(
    medium=medium,
    n_points=1024,
    width=8.192e-3,
    pump=PumpSpec(2.26e5),
    probe=ProbeSpec(relative_amplitude=0.1, waist=180e-6),
    plan=PropagationPlan(z_span=medium.length, n_steps=1200),
)

intensities = np.geomspace(2.26e5, 2.26e6, 4)
scan = run_sound_speed_scan(config, intensities)

print(f"{'I (W/m^2)':>11} {'c_s measured':>13} {'sqrt|n2 I|':>11} {'ratio':>7}")
for intensity, c_s in zip(scan.intensities, scan.sound_speeds):
    reference = np.sqrt(abs(medium.n2) * intensity)
    print(f"{intensity:11.3e} {c_s:13.4e} {reference:11.4e} {c_s / reference:7.4f}")
print(f"\nfitted power law: c_s = {scan.prefactor:.3e} * I^{scan.exponent:.4f}")
print("(square-root scaling: the interaction energy, hence c_s^2, is "
      "proportional to the fluid density)")
