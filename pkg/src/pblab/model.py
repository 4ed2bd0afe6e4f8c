"""Two-photon Jaynes-Cummings Hamiltonians, closed-form spectrum, resonances.

Internal unit convention: omega_c = 1 and every other rate is a ratio to it.
The lab-frame Hamiltonian is

    H = omega_c a^dag a + omega_0 sigma_+ sigma_- + J (a^dag^2 sigma_- + sigma_+ a^2),

and the weighted excitation number N = 2 sigma_+ sigma_- + a^dag a splits it
into 2x2 blocks spanned by {|g,n>, |e,n-2>} for n >= 2 (the N = 0, 1 blocks
are one-dimensional with energies 0 and omega_c).

Three monochromatic drive schemes are supported. Each one admits a rotating
frame in which the Hamiltonian is time independent:

    cavity_1photon:  detunings dc = omega_c - omega_d, d0 = omega_0 - 2 omega_d,
                     drive term  strength * (a^dag + a)
    atom:            dc = omega_c - omega_L / 2, d0 = omega_0 - omega_L,
                     drive term  strength * (sigma_+ + sigma_-)
    cavity_2photon:  dc = omega_c - omega_l / 2, d0 = omega_0 - omega_l,
                     drive term  strength * (a^dag^2 + a^2)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .hilbert import Operator, SpaceConfig, annihilation, atom_operator, number

DriveKind = Literal["cavity_1photon", "atom", "cavity_2photon"]

DRIVE_KINDS: tuple[str, ...] = ("cavity_1photon", "atom", "cavity_2photon")


@dataclass(frozen=True)
class ModelParams:
    """The five physical rates of the open two-photon JC model."""

    omega_c: float
    omega_0: float
    J: float
    kappa: float
    gamma: float

    def __post_init__(self) -> None:
        if self.omega_c <= 0:
            raise ValueError(f"omega_c must be positive, got {self.omega_c}")
        if self.J < 0:
            raise ValueError(f"J must be nonnegative, got {self.J}")
        if self.kappa < 0 or self.gamma < 0:
            raise ValueError("decay rates kappa, gamma must be nonnegative")


@dataclass(frozen=True)
class DriveSpec:
    """Monochromatic drive: which operator is driven, how hard, at what frequency."""

    kind: str
    strength: float
    frequency: float

    def __post_init__(self) -> None:
        if self.kind not in DRIVE_KINDS:
            raise ValueError(f"drive kind must be one of {DRIVE_KINDS}, got {self.kind!r}")
        if self.strength < 0:
            raise ValueError(f"drive strength must be nonnegative, got {self.strength}")
        if self.frequency <= 0:
            raise ValueError(f"drive frequency must be positive, got {self.frequency}")


@dataclass(frozen=True)
class EigBlock:
    """Closed-form eigensystem of one 2x2 excitation block (n >= 2).

    The eigenvectors are |n,+> = c_gn_plus |g,n> + c_en2_plus |e,n-2> and
    |n,-> = c_gn_minus |g,n> + c_en2_minus |e,n-2>; the coefficients are real
    and the pair is orthonormal. eps_plus >= eps_minus always.
    """

    n: int
    eps_plus: float
    eps_minus: float
    theta_n: float
    c_gn_plus: float
    c_en2_plus: float
    c_gn_minus: float
    c_en2_minus: float


def detunings(params: ModelParams, drive: DriveSpec) -> tuple[float, float]:
    """Cavity and atom detunings (dc, d0) of the rotating frame for a drive."""
    if drive.kind == "cavity_1photon":
        return params.omega_c - drive.frequency, params.omega_0 - 2.0 * drive.frequency
    # atom and two-photon cavity drives share the same frame
    return params.omega_c - drive.frequency / 2.0, params.omega_0 - drive.frequency


def hamiltonian_lab(params: ModelParams, space: SpaceConfig) -> Operator:
    """Lab-frame two-photon JC Hamiltonian (no drive)."""
    a = annihilation(space).entries
    ad = a.conj().T
    sp = atom_operator("raise", space).entries
    sm = sp.conj().T
    h = (
        params.omega_c * number(space).entries
        + params.omega_0 * (sp @ sm)
        + params.J * (ad @ ad @ sm + sp @ a @ a)
    )
    return Operator(h, space)


def hamiltonian_rotating(params: ModelParams, drive: DriveSpec, space: SpaceConfig) -> Operator:
    """Time-independent rotating-frame Hamiltonian including the drive term."""
    a = annihilation(space).entries
    ad = a.conj().T
    sp = atom_operator("raise", space).entries
    sm = sp.conj().T
    dc, d0 = detunings(params, drive)
    h = dc * (ad @ a) + d0 * (sp @ sm) + params.J * (ad @ ad @ sm + sp @ a @ a)
    if drive.kind == "cavity_1photon":
        h = h + drive.strength * (ad + a)
    elif drive.kind == "atom":
        h = h + drive.strength * (sp + sm)
    else:  # cavity_2photon
        h = h + drive.strength * (ad @ ad + a @ a)
    return Operator(h, space)


def spectrum_block(n: int, params: ModelParams) -> EigBlock:
    """Closed-form eigenvalues and eigenvectors of the n-excitation block.

    Rejects n < 2: those blocks are one-dimensional (energies 0 and omega_c)
    and carry no mixing angle.
    """
    if int(n) != n or n < 2:
        raise ValueError(f"excitation index must be an integer >= 2, got {n!r}")
    n = int(n)
    mean = (2.0 * (n - 1) * params.omega_c + params.omega_0) / 2.0
    delta = 2.0 * params.omega_c - params.omega_0  # diagonal gap of the block
    lam = 2.0 * math.sqrt(n * (n - 1)) * params.J  # twice the off-diagonal coupling
    half_split = math.sqrt(delta**2 + lam**2) / 2.0
    if delta == 0.0:
        theta = math.pi / 4.0  # arctangent limit at the resonant case
    else:
        theta = 0.5 * math.atan2(lam, delta)
    return EigBlock(
        n=n,
        eps_plus=mean + half_split,
        eps_minus=mean - half_split,
        theta_n=theta,
        c_gn_plus=math.cos(theta),
        c_en2_plus=math.sin(theta),
        c_gn_minus=-math.sin(theta),
        c_en2_minus=math.cos(theta),
    )


def resonance_locations(
    params: ModelParams, drive_kind: str, n_max: int
) -> list[tuple[str, float]]:
    """Catalogue of drive frequencies at which multiphoton transitions are resonant.

    For the single-photon cavity drive these are the k-photon lines
    omega = eps_{k,+-} / k for k = 2..n_max plus the one-photon line at omega_c.
    For the atom and two-photon cavity drives the drive injects quanta in
    pairs: the direct lines are eps_{2,+-} (one drive quantum) and
    eps_{4,+-} / 2 (two drive quanta), and the Raman-assisted lines
    eps_{3,+-} - eps_1 go through the singly excited state populated by decay.
    Labels name the transition and distinguish direct from Raman-assisted
    lines; the returned list is sorted by frequency.
    """
    if drive_kind not in DRIVE_KINDS:
        raise ValueError(f"drive kind must be one of {DRIVE_KINDS}, got {drive_kind!r}")
    if int(n_max) != n_max or n_max < 2:
        raise ValueError(f"n_max must be an integer >= 2, got {n_max!r}")
    n_max = int(n_max)

    lines: list[tuple[str, float]] = []
    if drive_kind == "cavity_1photon":
        lines.append(("0->1", params.omega_c))
        for k in range(2, n_max + 1):
            blk = spectrum_block(k, params)
            lines.append((f"0->{k}+", blk.eps_plus / k))
            lines.append((f"0->{k}-", blk.eps_minus / k))
    else:
        blk2 = spectrum_block(2, params)
        lines.append(("0->2+", blk2.eps_plus))
        lines.append(("0->2-", blk2.eps_minus))
        if n_max >= 3:
            blk3 = spectrum_block(3, params)
            eps1 = params.omega_c
            lines.append(("raman:1->3+", blk3.eps_plus - eps1))
            lines.append(("raman:1->3-", blk3.eps_minus - eps1))
        if n_max >= 4:
            blk4 = spectrum_block(4, params)
            lines.append(("0->4+", blk4.eps_plus / 2.0))
            lines.append(("0->4-", blk4.eps_minus / 2.0))
    lines.sort(key=lambda item: item[1])
    return lines
