"""Superconducting-circuit parameter map for the two-photon JC model.

A split Cooper-pair box (charge qubit) whose SQUID loop is threaded by the
flux of a transmission-line resonator mode realizes, after expanding the
Josephson cosine to second order in the small flux parameters and applying
the rotating-wave approximation, an effective two-photon JC model with

    omega_0 = E_C (n_g - 1/2)          atomic splitting
    J       = E_J0 phi_q^2 / 2         two-photon coupling
    Omega_L = E_J0 phi_s^2 / 8         atom-drive strength, at omega_L = 2 omega_s
    J_x     = E_J0 (1 - phi_s^2 / 4)   static sigma_x term removed by the RWA
    J_c     = E_J0 phi_q phi_s / 2     cross coupling removed by the RWA

Only these final formulas are executable here; the derivation chain
(Lagrangian, Legendre transform, charge-basis projection) is intentionally
not modelled. Energies are angular frequencies in any consistent unit
(hbar = 1); the geometric flux-coupling formula is evaluated in SI.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .model import DriveSpec, ModelParams

# CODATA values
FLUX_QUANTUM = 2.067833848e-15  # Wb, h / 2e
MU_0 = 1.25663706212e-6         # N / A^2
HBAR = 1.054571817e-34          # J s

#: above this value the second-order expansion of the Josephson cosine is suspect
SMALL_PARAMETER_LIMIT = 0.3

#: default operationalization of "much greater / much less than"
DEFAULT_RWA_THRESHOLD = 0.1


@dataclass(frozen=True)
class GeometryParams:
    """SI geometry of the SQUID loop and the transmission-line resonator."""

    loop_area: float              # m^2
    distance: float               # m, loop to transmission line
    resonator_length: float       # m
    inductance_per_length: float  # H / m

    def __post_init__(self) -> None:
        for name in ("loop_area", "distance", "resonator_length", "inductance_per_length"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class CircuitParams:
    """Circuit-level inputs of the effective-model map.

    e_c and e_j0 are the charging and single-junction Josephson energies,
    n_g the gate charge, phi_q and phi_s the dimensionless resonator- and
    drive-flux parameters, omega_s the flux-drive frequency, omega_res the
    resonator mode frequency, and omega_d / omega_cav_drive_strength the
    direct cavity drive.
    """

    e_c: float
    n_g: float
    e_j0: float
    phi_q: float
    phi_s: float
    omega_s: float
    omega_res: float
    omega_d: float
    omega_cav_drive_strength: float

    def __post_init__(self) -> None:
        if self.phi_q < 0 or self.phi_s < 0:
            raise ValueError("flux parameters phi_q, phi_s must be nonnegative")
        for name, value in (("phi_q", self.phi_q), ("phi_s", self.phi_s)):
            if value > SMALL_PARAMETER_LIMIT:
                warnings.warn(
                    f"{name} = {value:.3g} exceeds the small-parameter limit "
                    f"{SMALL_PARAMETER_LIMIT}; the second-order flux expansion is unreliable",
                    stacklevel=2,
                )


@dataclass(frozen=True)
class EffectiveModel:
    """Mapped model parameters plus the two drive channels and the RWA leftovers."""

    params: ModelParams
    atom_drive: DriveSpec
    cavity_drive: DriveSpec
    j_x: float
    j_c: float


@dataclass(frozen=True)
class RwaCheck:
    """One named scale-separation inequality, as a small/large ratio."""

    name: str
    small: float
    large: float
    ratio: float
    passed: bool


def flux_coupling(geom: GeometryParams, omega_c: float) -> float:
    """Dimensionless flux parameter phi_q of a resonator mode at omega_c (rad/s).

    phi_q = pi (1/Phi_0) (mu_0 / 2 pi r) S sqrt(hbar omega_c / (l L_0)).
    Warns when the result leaves the small-parameter regime.
    """
    if omega_c <= 0:
        raise ValueError("omega_c must be positive")
    field_per_current = MU_0 / (2.0 * math.pi * geom.distance)
    current_scale = math.sqrt(
        HBAR * omega_c / (geom.resonator_length * geom.inductance_per_length)
    )
    phi_q = math.pi / FLUX_QUANTUM * field_per_current * geom.loop_area * current_scale
    if phi_q >= SMALL_PARAMETER_LIMIT:
        warnings.warn(
            f"phi_q = {phi_q:.3g} is at or above the small-parameter limit "
            f"{SMALL_PARAMETER_LIMIT}",
            stacklevel=2,
        )
    return phi_q


def effective_model(circ: CircuitParams) -> EffectiveModel:
    """Map circuit parameters onto the effective two-photon JC model.

    The decay rates are not part of the map (they come from the environment,
    not the circuit Hamiltonian) and are returned as zero.
    """
    omega_0 = circ.e_c * (circ.n_g - 0.5)
    coupling = circ.e_j0 * circ.phi_q**2 / 2.0
    omega_l_drive = circ.e_j0 * circ.phi_s**2 / 8.0
    j_x = circ.e_j0 * (1.0 - circ.phi_s**2 / 4.0)
    j_c = circ.e_j0 * circ.phi_q * circ.phi_s / 2.0

    params = ModelParams(
        omega_c=circ.omega_res, omega_0=omega_0, J=coupling, kappa=0.0, gamma=0.0
    )
    atom_drive = DriveSpec(kind="atom", strength=omega_l_drive, frequency=2.0 * circ.omega_s)
    cavity_drive = DriveSpec(
        kind="cavity_1photon",
        strength=circ.omega_cav_drive_strength,
        frequency=circ.omega_d,
    )
    return EffectiveModel(
        params=params, atom_drive=atom_drive, cavity_drive=cavity_drive, j_x=j_x, j_c=j_c
    )


def charge_regime_ratio(circ: CircuitParams) -> float:
    """E_J0 / E_C; the two-level (charge qubit) truncation needs this to be small."""
    return circ.e_j0 / circ.e_c


def rwa_validity(
    circ: CircuitParams, n_a: int, threshold: float = DEFAULT_RWA_THRESHOLD
) -> list[RwaCheck]:
    """Evaluate the scale hierarchies behind the rotating-wave approximation.

    n_a is the maximal photon number expected in the cavity mode. Each
    inequality is reported as ratio = |small| / large and passes iff the
    large side is positive and the ratio is below threshold.
    """
    if int(n_a) != n_a or n_a < 1:
        raise ValueError(f"n_a must be an integer >= 1, got {n_a!r}")
    eff = effective_model(circ)
    omega_0 = eff.params.omega_0
    coupling = eff.params.J
    omega_l_drive = eff.atom_drive.strength

    pairs = [
        ("omega0_vs_J_minus_Jx", abs(coupling - eff.j_x), omega_0),
        ("omega0_vs_2J_na", 2.0 * coupling * n_a, omega_0),
        ("omega0_plus_2omegac_vs_J", coupling, omega_0 + 2.0 * circ.omega_res),
        ("omega0_plus_2omegas_vs_OmegaL", omega_l_drive, omega_0 + 2.0 * circ.omega_s),
        (
            "omega0_minus_omegac_minus_omegas_vs_Jx",
            eff.j_x,
            omega_0 - circ.omega_res - circ.omega_s,
        ),
    ]
    checks = []
    for name, small, large in pairs:
        if large > 0:
            ratio = abs(small) / large
        else:
            ratio = math.inf
        checks.append(
            RwaCheck(name=name, small=small, large=large, ratio=ratio, passed=ratio < threshold)
        )
    return checks
