"""Blockade / tunneling classification from equal-time correlation functions.

For single-photon transition processes (cavity drive) the n-photon blockade
criterion is g^(n) >= 1 with g^(n+1) < 1; for two-photon transition processes
(atom drive, two-photon cavity drive) the next TWO orders must be
sub-Poissonian: g^(n) >= 1, g^(n+1) < 1, g^(n+2) < 1. Photon-induced
tunneling (PIT) is super-Poissonian statistics at every reported order.

All threshold comparisons use a guard band of +-tol around 1 (default 1e-3):
values inside the band are treated as borderline and classified as "none",
which keeps sweep grids from flip-flopping on numerical noise. The raw g
values are always carried alongside the label.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

#: half-width of the guard band around the threshold g = 1
CLASSIFY_TOLERANCE = 1e-3

#: deepest photon number / correlation order carried in reports
REPORT_DEPTH = 4

LABELS: tuple[str, ...] = ("PB1", "PB2", "PIT", "mixed_2_3_enhanced", "none")
TRANSITION_KINDS: tuple[str, ...] = ("one_photon", "two_photon")


@dataclass(frozen=True)
class StatisticsReport:
    """One classified steady-state observation point."""

    mean_n: float
    p: tuple[float, ...]        # P_0 .. P_4
    poisson: tuple[float, ...]  # Poisson reference at the same mean
    g2: float
    g3: float
    g4: float
    transition_kind: str
    label: str


def poisson_reference(mean_n: float, n: int) -> float:
    """Poisson mass mean^n exp(-mean) / n! (the coherent-state reference)."""
    if mean_n < 0:
        raise ValueError(f"mean photon number must be nonnegative, got {mean_n}")
    if int(n) != n or n < 0:
        raise ValueError(f"photon number must be a nonnegative integer, got {n!r}")
    n = int(n)
    if mean_n == 0.0:
        return 1.0 if n == 0 else 0.0
    return mean_n**n * math.exp(-mean_n) / math.factorial(n)


def classify(
    g2: float,
    g3: float = math.nan,
    g4: float = math.nan,
    transition_kind: str = "one_photon",
    tol: float = CLASSIFY_TOLERANCE,
) -> str:
    """Blockade / PIT label from the correlation functions.

    NaN comparisons are false, so a missing higher order can only prevent a
    label that needs it. Values within tol of 1 are borderline and yield
    "none".
    """
    if transition_kind not in TRANSITION_KINDS:
        raise ValueError(f"transition kind must be one of {TRANSITION_KINDS}")

    def above(g: float) -> bool:
        return g > 1.0 + tol

    def below(g: float) -> bool:
        return g < 1.0 - tol

    if transition_kind == "one_photon":
        if below(g2):
            return "PB1"
        if above(g2) and below(g3):
            return "PB2"
        if above(g2) and above(g3):
            return "PIT"
        return "none"

    if above(g2) and below(g3) and below(g4):
        return "PB2"
    if above(g2) and above(g3) and above(g4):
        return "PIT"
    if above(g2) and above(g3) and below(g4):
        return "mixed_2_3_enhanced"
    return "none"


def relative_deviation(p: Sequence[float], poisson: Sequence[float]) -> list[float]:
    """Signed deviations (P_n - Q_n) / Q_n from the Poisson reference."""
    if len(p) != len(poisson):
        raise ValueError("distribution and reference must have equal length")
    out = []
    for pn, qn in zip(p, poisson):
        if qn < 1e-300:
            raise ValueError(f"Poisson reference value {qn} too small to divide by")
        out.append((pn - qn) / qn)
    return out


def _suppressed(pn: float, qn: float) -> bool:
    # strict suppression, except that an exactly empty level counts as suppressed
    return pn < qn or (pn == 0.0 and qn == 0.0)


def pn_criterion(p: Sequence[float], poisson: Sequence[float], n: int) -> bool:
    """Distribution-based n-photon blockade test.

    True iff P_n >= Q_n while every deeper level up to the report depth is
    suppressed relative to the Poisson reference.
    """
    depth = min(len(p), len(poisson)) - 1
    if not 0 <= n <= depth:
        raise ValueError(f"n = {n} outside the covered range [0, {depth}]")
    if p[n] < poisson[n]:
        return False
    return all(_suppressed(p[m], poisson[m]) for m in range(n + 1, depth + 1))


def build_report(
    mean_n: float,
    p: Sequence[float],
    g2: float,
    g3: float,
    g4: float,
    transition_kind: str,
    tol: float = CLASSIFY_TOLERANCE,
) -> StatisticsReport:
    """Assemble a StatisticsReport: Poisson reference, label, stored raw values."""
    if len(p) < REPORT_DEPTH + 1:
        raise ValueError(f"need P_0..P_{REPORT_DEPTH}, got {len(p)} entries")
    poisson = tuple(poisson_reference(mean_n, k) for k in range(REPORT_DEPTH + 1))
    return StatisticsReport(
        mean_n=mean_n,
        p=tuple(float(x) for x in p[: REPORT_DEPTH + 1]),
        poisson=poisson,
        g2=g2,
        g3=g3,
        g4=g4,
        transition_kind=transition_kind,
        label=classify(g2, g3, g4, transition_kind, tol=tol),
    )
