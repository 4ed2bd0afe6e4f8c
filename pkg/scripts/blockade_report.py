#!/usr/bin/env python3
"""Print a one-screen tour of the model's operating points.

For each drive scheme this solves the steady state at its marquee frequency,
classifies the photon statistics, and quotes the perturbative oracle where it
exists. A quick orientation before running full sweeps.
"""

import math

from pblab.analytic import analytic_g2, analytic_g3, steady_amplitudes
from pblab.criteria import classify
from pblab.hilbert import SpaceConfig
from pblab.lindblad import build_liouvillian, correlation_g, mean_photon, steady_state
from pblab.model import DriveSpec, ModelParams, hamiltonian_rotating, resonance_locations


def solve(params, drive, n_cav_max=12):
    space = SpaceConfig(n_cav_max)
    h = hamiltonian_rotating(params, drive, space)
    return steady_state(build_liouvillian(h, params))


def line(params, drive, kind):
    rho = solve(params, drive)
    g2, g3, g4 = (correlation_g(rho, k) for k in (2, 3, 4))
    label = classify(g2, g3, g4, kind)
    print(
        f"  {drive.kind:15s} omega={drive.frequency:.6f}  mean_n={mean_photon(rho):.3e}  "
        f"g2={g2:9.3e}  g3={g3:9.3e}  g4={g4:9.3e}  -> {label}"
    )


def main() -> None:
    cavity = ModelParams(omega_c=1.0, omega_0=2.0, J=0.01, kappa=1e-3, gamma=1e-3)
    pair = ModelParams(omega_c=1.0, omega_0=2.0, J=0.012, kappa=1e-3, gamma=1e-3)

    print("resonance catalogue (cavity drive, J = 0.01):")
    for label, freq in resonance_locations(cavity, "cavity_1photon", 3):
        print(f"  {label:8s} {freq:.6f}")

    print("single-photon cavity drive (strength 0.4 kappa):")
    line(cavity, DriveSpec("cavity_1photon", 0.4e-3, 1.0), "one_photon")
    line(cavity, DriveSpec("cavity_1photon", 0.4e-3, 1 + 0.01 / math.sqrt(2)), "one_photon")

    print("perturbative oracle at the same two points:")
    for freq in (1.0, 1 + 0.01 / math.sqrt(2)):
        amps = steady_amplitudes(cavity, DriveSpec("cavity_1photon", 0.4e-3, freq))
        print(f"  omega={freq:.6f}  g2={analytic_g2(amps):9.3e}  g3={analytic_g3(amps):9.3e}")

    print("atom drive (pair injection, J = 0.012):")
    line(pair, DriveSpec("atom", 0.4e-3, 2 + math.sqrt(2) * 0.012), "two_photon")
    line(pair, DriveSpec("atom", 0.4e-3, 2.0), "two_photon")

    print("two-photon cavity drive (J = 0.012):")
    line(pair, DriveSpec("cavity_2photon", 0.4e-3, 2 + math.sqrt(2) * 0.012), "two_photon")
    line(pair, DriveSpec("cavity_2photon", 0.4e-3, 2.0), "two_photon")


if __name__ == "__main__":
    main()
