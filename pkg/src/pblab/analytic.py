"""Weak-driving perturbation theory for the single-photon cavity drive.

Truncating the cavity at n = 3 and expanding in powers of the drive strength,
the non-Hermitian effective Hamiltonian (decay rates folded in as -i kappa/2,
-i gamma/2) has closed-form steady-state amplitudes on the six basis states
|g,0>, |g,1>, |g,2>, |e,0>, |g,3>, |e,1>. With dc = omega_c - omega_d,
d0 = omega_0 - 2 omega_d and drive strength F:

    c_g0 = 1
    c_g1 = -2 F / (2 dc - i kappa)
    c_g2 = 2 sqrt(2) i (gamma + 2 i d0) F^2 / W
    c_e0 = 8 J F^2 / W
    c_g3 = -4 sqrt(6) [8 J^2 - (gamma + 2 i d0) V] F^3 / (3 W [8 J^2 + (2 i dc + kappa) V])
    c_e1 = -16 i J V F^3 / (W [8 J^2 + (2 i dc + kappa) V])

    W = (2 dc - i kappa) [4 J^2 + (gamma + 2 i d0) (2 i dc + kappa)]
    V = gamma + 2 i (d0 + dc) + kappa

These amplitudes are the independent oracle for the Lindblad solver. The
correlation functions use the leading-order forms g2 = 2 P2 / P1^2 and
g3 = 6 P3 / P1^3. By default the normalization constant is omitted from the
P_n entering those ratios: the resulting forms are exact in the linear-cavity
limit J = 0 (they give g = 1 for a coherent state at any drive strength) and
they are what the master-equation numerics reproduce. Keeping the exact
normalization instead multiplies g2 by N and g3 by N^2; both variants are
exposed through the exact_norm flag, and N itself is reported by
analytic_distribution (N - 1 is not small at the drive strengths used for the
reference sweeps, about 0.64 at strength/kappa = 0.4 on resonance).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lindblad import VACUUM_THRESHOLD, VacuumState
from .model import DriveSpec, ModelParams, detunings, spectrum_block


class DegenerateDenominator(ArithmeticError):
    """Closed-form amplitude denominator vanished (kappa = gamma = 0 on resonance)."""


_DENOMINATOR_FLOOR = 1e-300


@dataclass(frozen=True)
class AmplitudeSet:
    """The six steady-state amplitudes plus the shared denominators w, v."""

    c_g0: complex
    c_g1: complex
    c_g2: complex
    c_e0: complex
    c_g3: complex
    c_e1: complex
    w: complex
    v: complex


@dataclass(frozen=True)
class InterferenceSplit:
    """Eigenbasis decomposition of the two- and three-photon probabilities.

    d_2pm / d_3pm are the amplitudes on the dressed states of the n = 2, 3
    blocks. p2_noninterference keeps only the squared moduli of the two paths;
    p2_full adds the cross terms (and likewise for p3). The difference
    p_full - p_noninterference is exactly the quantum-interference
    contribution, which can be negative (destructive) or positive.
    """

    d_2plus: complex
    d_2minus: complex
    d_3plus: complex
    d_3minus: complex
    p2_full: float
    p2_noninterference: float
    p3_full: float
    p3_noninterference: float


def _require_cavity_drive(drive: DriveSpec) -> None:
    if drive.kind != "cavity_1photon":
        raise ValueError(
            "closed-form amplitudes exist only for the single-photon cavity drive, "
            f"got drive kind {drive.kind!r}"
        )


def steady_amplitudes(params: ModelParams, drive: DriveSpec) -> AmplitudeSet:
    """Closed-form steady-state amplitudes for a single-photon cavity drive."""
    _require_cavity_drive(drive)
    dc, d0 = detunings(params, drive)
    J = params.J
    kappa, gamma = params.kappa, params.gamma
    f = drive.strength

    g2i = gamma + 2j * d0
    v = gamma + 2j * (d0 + dc) + kappa
    w = (2 * dc - 1j * kappa) * (4 * J**2 + g2i * (2j * dc + kappa))
    den3 = 8 * J**2 + (2j * dc + kappa) * v

    if f == 0.0:
        # no drive: only the ground amplitude survives, no divisions needed
        return AmplitudeSet(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, w=w, v=v)

    if abs(w) < _DENOMINATOR_FLOOR or abs(den3) < _DENOMINATOR_FLOOR:
        raise DegenerateDenominator(
            "amplitude denominator vanished (|W| or |8J^2 + (2i dc + kappa)V| "
            "below 1e-300); this happens for kappa = gamma = 0 exactly on resonance"
        )

    c_g1 = -2 * f / (2 * dc - 1j * kappa)
    c_g2 = 2 * math.sqrt(2) * 1j * g2i * f**2 / w
    c_e0 = 8 * J * f**2 / w
    c_g3 = -4 * math.sqrt(6) * (8 * J**2 - g2i * v) * f**3 / (3 * w * den3)
    c_e1 = -16j * J * v * f**3 / (w * den3)
    return AmplitudeSet(1.0, c_g1, c_g2, c_e0, c_g3, c_e1, w=w, v=v)


def normalization(amps: AmplitudeSet) -> float:
    """Sum of the squared moduli of all six amplitudes."""
    return float(
        abs(amps.c_g0) ** 2
        + abs(amps.c_g1) ** 2
        + abs(amps.c_g2) ** 2
        + abs(amps.c_e0) ** 2
        + abs(amps.c_g3) ** 2
        + abs(amps.c_e1) ** 2
    )


def analytic_distribution(amps: AmplitudeSet) -> tuple[np.ndarray, float]:
    """Normalized photon-number probabilities (P0, P1, P2, P3) and the norm.

    P0 and P1 collect both atom states; P2 and P3 have only the ground-atom
    contribution within the n <= 3 truncation.
    """
    norm = normalization(amps)
    p = np.array(
        [
            abs(amps.c_g0) ** 2 + abs(amps.c_e0) ** 2,
            abs(amps.c_g1) ** 2 + abs(amps.c_e1) ** 2,
            abs(amps.c_g2) ** 2,
            abs(amps.c_g3) ** 2,
        ]
    )
    return p / norm, norm


def _p1_unnormalized(amps: AmplitudeSet) -> float:
    return abs(amps.c_g1) ** 2 + abs(amps.c_e1) ** 2


def analytic_g2(amps: AmplitudeSet, *, exact_norm: bool = False) -> float:
    """Leading-order g^(2)(0) = 2 P2 / P1^2.

    With exact_norm=False (default) the normalization constant is dropped from
    the P_n, matching both the coherent-state limit and the steady-state
    numerics; exact_norm=True keeps it (multiplies the ratio by the norm).
    """
    p1 = _p1_unnormalized(amps)
    if p1 <= VACUUM_THRESHOLD:
        raise VacuumState(f"one-photon weight {p1:.3e} at or below vacuum threshold")
    g2 = 2.0 * abs(amps.c_g2) ** 2 / p1**2
    if exact_norm:
        g2 *= normalization(amps)
    return g2


def analytic_g3(amps: AmplitudeSet, *, exact_norm: bool = False) -> float:
    """Leading-order g^(3)(0) = 6 P3 / P1^3 (normalization handling as in analytic_g2)."""
    p1 = _p1_unnormalized(amps)
    if p1 <= VACUUM_THRESHOLD:
        raise VacuumState(f"one-photon weight {p1:.3e} at or below vacuum threshold")
    g3 = 6.0 * abs(amps.c_g3) ** 2 / p1**3
    if exact_norm:
        g3 *= normalization(amps) ** 2
    return g3


def interference_split(params: ModelParams, drive: DriveSpec) -> InterferenceSplit:
    """Split P2 and P3 into path moduli and quantum-interference cross terms.

    The bare amplitudes are rotated into the dressed basis of the n = 2 and
    n = 3 blocks: d_{n,s} = c_{g,n} C_gn^[s] + c_{e,n-2} C_en2^[s] with the
    real eigenvector coefficients from spectrum_block. Both the full and the
    no-interference probabilities share the exact normalization constant, so
    they are directly comparable to the analytic_distribution values.
    """
    amps = steady_amplitudes(params, drive)
    norm = normalization(amps)

    blk2 = spectrum_block(2, params)
    blk3 = spectrum_block(3, params)

    d2p = amps.c_g2 * blk2.c_gn_plus + amps.c_e0 * blk2.c_en2_plus
    d2m = amps.c_g2 * blk2.c_gn_minus + amps.c_e0 * blk2.c_en2_minus
    d3p = amps.c_g3 * blk3.c_gn_plus + amps.c_e1 * blk3.c_en2_plus
    d3m = amps.c_g3 * blk3.c_gn_minus + amps.c_e1 * blk3.c_en2_minus

    p2_non = (abs(d2p * blk2.c_gn_plus) ** 2 + abs(d2m * blk2.c_gn_minus) ** 2) / norm
    p3_non = (abs(d3p * blk3.c_gn_plus) ** 2 + abs(d3m * blk3.c_gn_minus) ** 2) / norm
    p2_full = abs(amps.c_g2) ** 2 / norm
    p3_full = abs(amps.c_g3) ** 2 / norm

    return InterferenceSplit(
        d_2plus=d2p,
        d_2minus=d2m,
        d_3plus=d3p,
        d_3minus=d3m,
        p2_full=p2_full,
        p2_noninterference=p2_non,
        p3_full=p3_full,
        p3_noninterference=p3_non,
    )


def perfect_blockade_check(params: ModelParams, drive: DriveSpec) -> tuple[bool, float]:
    """Whether the two-photon amplitude vanishes identically, plus |c_g2|.

    The amplitude cancels exactly when the atom is resonant with the
    two-photon drive (d0 = 0) and does not decay (gamma = 0): the two
    excitation paths through the dressed n = 2 states interfere destructively.
    """
    _require_cavity_drive(drive)
    amps = steady_amplitudes(params, drive)
    residual = abs(amps.c_g2)
    return residual < 1e-14, residual
