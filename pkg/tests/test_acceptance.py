"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s`. Every criterion is
implemented exactly as stated, including its tolerances; several are known to
fail against exact steady-state physics at the stated drive strength
(strength = 0.4 kappa saturates the one-photon transition, which the
leading-order perturbative oracle cannot see). Those failures are real and
deliberate; the analysis lives in the project notes. The same claims are
demonstrated to hold in the asymptotic weak-driving regime by the unit suite
(see test_lindblad.py::TestSteadyState::test_weak_drive_matches_perturbative_oracle).
"""

import math
import time
from dataclasses import replace

import numpy as np
import pytest

from pblab.analytic import analytic_g2, analytic_g3, steady_amplitudes
from pblab.criteria import classify, pn_criterion, poisson_reference
from pblab.hilbert import SpaceConfig
from pblab.lindblad import (
    build_liouvillian,
    correlation_g,
    full_distribution,
    mean_photon,
    solve_steady_state,
)
from pblab.model import DriveSpec, ModelParams, hamiltonian_rotating, spectrum_block
from pblab.sweep import SweepConfig, emit_csv, run_sweep

# hand-derived oracle for the blockade dip (see test_analytic.py)
REF_G2_DIP = 6.21886671928162e-6

# raw-solve hygiene numbers accumulated across all criteria that solve states
HYGIENE: list[tuple[float, float, float, float]] = []


def report(number: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] criterion {number:02d}: {status} - {detail}")


def solve_tracked(params: ModelParams, drive: DriveSpec, n_cav_max: int = 12):
    space = SpaceConfig(n_cav_max)
    h = hamiltonian_rotating(params, drive, space)
    sol = solve_steady_state(build_liouvillian(h, params))
    HYGIENE.append((sol.trace_defect, sol.herm_defect, sol.min_eig, sol.residual))
    return sol.rho


def reference_params() -> ModelParams:
    return ModelParams(omega_c=1.0, omega_0=2.0, J=0.01, kappa=1e-3, gamma=1e-3)


def cavity_drive(frequency: float, strength: float = 0.4e-3) -> DriveSpec:
    return DriveSpec("cavity_1photon", strength, frequency)


def local_extrema(xs: np.ndarray, ys: np.ndarray, kind: str) -> list[float]:
    out = []
    for i in range(1, len(ys) - 1):
        if kind == "max" and ys[i] > ys[i - 1] and ys[i] > ys[i + 1]:
            out.append(float(xs[i]))
        if kind == "min" and ys[i] < ys[i - 1] and ys[i] < ys[i + 1]:
            out.append(float(xs[i]))
    return out


def nearest_distance(candidates: list[float], target: float) -> float:
    if not candidates:
        return math.inf
    return min(abs(c - target) for c in candidates)


def test_criterion_01_spectrum_exactness():
    rng = np.random.default_rng(20240809)
    start = time.monotonic()
    worst = 0.0
    for _ in range(200):
        params = ModelParams(
            omega_c=1.0,
            omega_0=float(rng.uniform(1.5, 2.5)),
            J=float(rng.uniform(0.001, 0.05)),
            kappa=0.0,
            gamma=0.0,
        )
        n = int(rng.integers(2, 11))
        blk = spectrum_block(n, params)
        lam = math.sqrt(n * (n - 1)) * params.J
        sub = np.array(
            [[n * 1.0, lam], [lam, (n - 2) * 1.0 + params.omega_0]]
        )
        eig = np.linalg.eigvalsh(sub)
        worst = max(worst, abs(blk.eps_plus - eig[1]), abs(blk.eps_minus - eig[0]))
    elapsed = time.monotonic() - start
    ok = worst < 1e-10 and elapsed < 1.0
    report(1, ok, f"200 draws, worst |closed-form - diag| = {worst:.2e}, {elapsed:.2f} s")
    assert ok


def test_criterion_02_perfect_blockade():
    start = time.monotonic()
    params = reference_params()
    lossless_atom = replace(params, gamma=0.0)
    amps = steady_amplitudes(lossless_atom, cavity_drive(1.0))
    analytic_zero = abs(amps.c_g2) < 1e-15

    g2_with_gamma = correlation_g(solve_tracked(params, cavity_drive(1.0)), 2)
    g2_without = correlation_g(solve_tracked(lossless_atom, cavity_drive(1.0)), 2)
    ratio = g2_with_gamma / g2_without
    elapsed = time.monotonic() - start
    ok = analytic_zero and ratio >= 100.0 and elapsed < 10.0
    report(
        2,
        ok,
        f"analytic c_g2 = {abs(amps.c_g2):.1e}; numeric g2 drop factor {ratio:.2f} "
        f"(required >= 100) at the stated drive strength 0.4*kappa; {elapsed:.1f} s",
    )
    assert ok, (
        "the numeric gamma=0 drop is saturation-limited at drive strength 0.4*kappa "
        f"(measured factor {ratio:.2f}; the same drop exceeds 150 at strength 0.02*kappa); "
        "see notes/decisions.md"
    )


def test_criterion_03_analytic_numeric_agreement():
    start = time.monotonic()
    params = reference_params()
    bad_g2 = bad_g3 = 0
    worst_g2 = worst_g3 = 0.0
    for freq in np.linspace(0.98, 1.02, 50):
        drive = cavity_drive(float(freq))
        rho = solve_tracked(params, drive)
        amps = steady_amplitudes(params, drive)
        g2_num, g3_num = correlation_g(rho, 2), correlation_g(rho, 3)
        g2_ref, g3_ref = analytic_g2(amps), analytic_g3(amps)
        if g2_num > 1e-8:
            err = abs(g2_num - g2_ref) / g2_ref
            worst_g2 = max(worst_g2, err)
            bad_g2 += err >= 0.05
        if g3_num > 1e-8:
            err = abs(g3_num - g3_ref) / g3_ref
            worst_g3 = max(worst_g3, err)
            bad_g3 += err >= 0.10
    elapsed = time.monotonic() - start
    ok = bad_g2 == 0 and bad_g3 == 0 and elapsed < 120.0
    report(
        3,
        ok,
        f"g2: {bad_g2}/50 points beyond 5% (worst {worst_g2:.1%}); "
        f"g3: {bad_g3}/50 beyond 10% (worst {worst_g3:.1%}); {elapsed:.0f} s",
    )
    assert ok, (
        "perturbative and steady-state correlations deviate near the saturated "
        "one-photon resonance at the stated drive strength; the 5%/10% agreement "
        "holds throughout the window at strength 0.02*kappa (see test_lindblad.py "
        "and notes/decisions.md)"
    )


def test_criterion_04_single_photon_blockade_dip():
    params = reference_params()
    rho = solve_tracked(params, cavity_drive(1.0))
    g2 = correlation_g(rho, 2)
    g3 = correlation_g(rho, 3)
    factor = max(g2 / REF_G2_DIP, REF_G2_DIP / g2)
    label = classify(g2, g3, correlation_g(rho, 4), "one_photon")
    ok = factor <= 1.2 and label == "PB1"
    report(
        4,
        ok,
        f"numeric g2 = {g2:.3e} vs oracle {REF_G2_DIP:.3e} (factor {factor:.2f}, "
        f"required <= 1.2); classification {label}",
    )
    assert ok, (
        f"the dip bottoms at g2 = {g2:.3e}, a factor {factor:.1f} above the "
        "perturbative oracle: the oracle is exact only as the drive vanishes "
        "(numeric g2 = 6.23e-6 at strength 0.02*kappa); see notes/decisions.md"
    )


def test_criterion_05_pit_at_two_photon_resonance():
    params = reference_params()
    results = []
    for sign in (+1, -1):
        freq = 1.0 + sign * params.J / math.sqrt(2)
        rho = solve_tracked(params, cavity_drive(freq))
        g2, g3 = correlation_g(rho, 2), correlation_g(rho, 3)
        label = classify(g2, g3, correlation_g(rho, 4), "one_photon")
        results.append((freq, g2, g3, label))
    ok = all(g2 > 1 and g3 > 1 and label == "PIT" for _, g2, g3, label in results)
    detail = "; ".join(
        f"omega_d={f:.6f}: g2={g2:.1f}, g3={g3:.1f}, {label}" for f, g2, g3, label in results
    )
    report(5, ok, detail)
    assert ok


@pytest.mark.slow
def test_criterion_06_feature_locations():
    params = reference_params()
    j = params.J
    problems = []

    # resonant case: 401 points across the window used for the reference data
    xs = np.linspace(0.97, 1.03, 401)
    step = float(xs[1] - xs[0])
    p2, p3 = [], []
    for freq in xs:
        rho = solve_tracked(params, cavity_drive(float(freq)))
        dist = full_distribution(rho)
        p2.append(dist[2])
        p3.append(dist[3])
    p2_peaks = local_extrema(xs, np.array(p2), "max")
    p3_peaks = local_extrema(xs, np.array(p3), "max")
    for target in (1 - j / math.sqrt(2), 1 + j / math.sqrt(2)):
        d = nearest_distance(p2_peaks, target)
        if d > step:
            problems.append(f"resonant P2 peak at {target:.6f} missed by {d:.2e}")
    for target in (1 - math.sqrt(6) * j / 3, 1 + math.sqrt(6) * j / 3):
        d = nearest_distance(p3_peaks, target)
        if d > step:
            problems.append(f"resonant P3 peak at {target:.6f} missed by {d:.2e}")

    # off-resonant case omega_0 = 1.92: window centred on the two-photon pair
    off = replace(params, omega_0=1.92)
    xs2 = np.linspace(0.94, 1.02, 401)
    step2 = float(xs2[1] - xs2[0])
    p2_off = []
    for freq in xs2:
        rho = solve_tracked(off, cavity_drive(float(freq)))
        p2_off.append(full_distribution(rho)[2])
    p2_off = np.array(p2_off)
    off_peaks = local_extrema(xs2, p2_off, "max")
    off_dips = local_extrema(xs2, p2_off, "min")
    split = math.sqrt(0.0064 + 8 * j**2)
    for target in ((3.92 - split) / 4, (3.92 + split) / 4):
        d = nearest_distance(off_peaks, target)
        if d > step2:
            problems.append(f"off-resonant P2 peak at {target:.6f} missed by {d:.2e}")
    d = nearest_distance(off_dips, 0.96)
    if d > step2:
        problems.append(f"off-resonant interference dip at 0.96 missed by {d:.2e}")

    ok = not problems
    report(6, ok, "all features within one grid step" if ok else "; ".join(problems))
    assert ok, (
        "stated locations are ideal transition frequencies; the actual curve "
        "extrema are pulled by neighbouring resonances (the three-photon features "
        "sit ~2.7e-4 below the ideal positions even in the closed-form curve, and "
        "are shoulders rather than separate maxima at this resolution); "
        "see notes/decisions.md: " + "; ".join(problems)
    )


@pytest.mark.slow
def test_criterion_07_atom_drive_no_single_photon_blockade():
    start = time.monotonic()
    worst = math.inf
    for freq in np.linspace(1.93, 2.07, 41):
        for omega_0 in np.linspace(1.9, 2.1, 41):
            params = ModelParams(1.0, float(omega_0), 0.012, 1e-3, 1e-3)
            rho = solve_tracked(params, DriveSpec("atom", 0.4e-3, float(freq)))
            worst = min(worst, correlation_g(rho, 2))
    elapsed = time.monotonic() - start
    ok = worst > 1.0 and elapsed < 300.0
    report(7, ok, f"min g2 over the 41x41 grid = {worst:.3f} (> 1 required); {elapsed:.0f} s")
    assert ok


def test_criterion_08_two_photon_blockade_at_atom_drive():
    params = ModelParams(1.0, 2.0, 0.012, 1e-3, 1e-3)
    checks = []
    for sign in (+1, -1):
        freq = 2.0 + sign * math.sqrt(2) * params.J
        rho = solve_tracked(params, DriveSpec("atom", 0.4e-3, freq))
        dist = full_distribution(rho)
        mean = mean_photon(rho)
        g2, g3, g4 = (correlation_g(rho, k) for k in (2, 3, 4))
        label = classify(g2, g3, g4, "two_photon")
        q = [poisson_reference(mean, n) for n in range(5)]
        comparisons = dist[2] > q[2] and dist[1] < q[1] and dist[3] < q[3]
        eq5 = pn_criterion(list(dist[:5]), q, 2)
        checks.append((freq, label, comparisons, eq5, g2, g3, g4))
    ok = all(label == "PB2" and comp and eq5 for _, label, comp, eq5, *_ in checks)
    detail = "; ".join(
        f"omega_L={f:.6f}: {label}, g=({g2:.2f},{g3:.2f},{g4:.2f}), "
        f"P-vs-Poisson {'ok' if comp else 'bad'}"
        for f, label, comp, eq5, g2, g3, g4 in checks
    )
    report(8, ok, detail)
    assert ok


def test_criterion_09_two_photon_cavity_drive_statistics():
    params = ModelParams(1.0, 2.0, 0.012, 1e-3, 1e-3)
    problems = []
    side_values = []
    for sign in (+1, -1):
        freq = 2.0 + sign * math.sqrt(2) * params.J
        rho = solve_tracked(params, DriveSpec("cavity_2photon", 0.4e-3, freq))
        g2, g3, g4 = (correlation_g(rho, k) for k in (2, 3, 4))
        side_values.append((freq, g2, g3, g4))
        if not g2 > 1:
            problems.append(f"g2 = {g2:.3f} not > 1 at {freq:.6f}")
        if not g4 > 1:
            problems.append(f"g4 = {g4:.3f} not > 1 at {freq:.6f}")
        if not 0.8 <= g3 <= 1.2:
            problems.append(f"g3 = {g3:.4f} outside [0.8, 1.2] at {freq:.6f}")
    rho = solve_tracked(params, DriveSpec("cavity_2photon", 0.4e-3, 2.0))
    g2c, g3c, g4c = (correlation_g(rho, k) for k in (2, 3, 4))
    if not (g2c > 1 and g3c > 1 and g4c > 1):
        problems.append(f"centre point not PIT: g = ({g2c:.2f}, {g3c:.2f}, {g4c:.2f})")
    ok = not problems
    detail = "; ".join(
        f"omega_l={f:.6f}: g=({g2:.2f},{g3:.4f},{g4:.2f})" for f, g2, g3, g4 in side_values
    ) + f"; centre g=({g2c:.1e},{g3c:.1e},{g4c:.1e})"
    report(9, ok, detail if ok else detail + " | " + "; ".join(problems))
    assert ok, (
        "g3 at the pair resonance sits just outside the stated [0.8, 1.2] band "
        "(measured 1.2544, converged in the cutoff); see notes/decisions.md: "
        + "; ".join(problems)
    )


def test_criterion_10_monotonic_trends():
    g2_vs_j = []
    for coupling in np.linspace(0.005, 0.02, 5):
        params = ModelParams(1.0, 2.0, float(coupling), 1e-3, 1e-3)
        rho = solve_tracked(params, cavity_drive(1.0))
        g2_vs_j.append(correlation_g(rho, 2))
    decreasing = all(a > b for a, b in zip(g2_vs_j, g2_vs_j[1:]))

    g2_vs_kappa = []
    for kappa in np.linspace(1e-3, 3e-3, 5):
        params = ModelParams(1.0, 2.0, 0.01, float(kappa), float(kappa))
        rho = solve_tracked(params, cavity_drive(1.0, strength=0.4 * float(kappa)))
        g2_vs_kappa.append(correlation_g(rho, 2))
    increasing = all(a < b for a, b in zip(g2_vs_kappa, g2_vs_kappa[1:]))

    ok = decreasing and increasing
    report(
        10,
        ok,
        f"g2 vs J strictly decreasing: {decreasing} "
        f"({g2_vs_j[0]:.1e} -> {g2_vs_j[-1]:.1e}); "
        f"g2 vs kappa strictly increasing: {increasing} "
        f"({g2_vs_kappa[0]:.1e} -> {g2_vs_kappa[-1]:.1e})",
    )
    assert ok


def test_criterion_11_state_hygiene_and_truncation():
    assert HYGIENE, "hygiene stats are accumulated by the earlier criteria"
    trace_worst = max(h[0] for h in HYGIENE)
    herm_worst = max(h[1] for h in HYGIENE)
    eig_worst = min(h[2] for h in HYGIENE)
    hygiene_ok = trace_worst < 1e-9 and herm_worst < 1e-10 and eig_worst > -1e-8

    marquee = [
        (reference_params(), cavity_drive(1.0)),
        (reference_params(), cavity_drive(1 + 0.01 / math.sqrt(2))),
        (ModelParams(1.0, 2.0, 0.012, 1e-3, 1e-3), DriveSpec("atom", 0.4e-3, 2 + math.sqrt(2) * 0.012)),
        (ModelParams(1.0, 2.0, 0.012, 1e-3, 1e-3), DriveSpec("cavity_2photon", 0.4e-3, 2 + math.sqrt(2) * 0.012)),
    ]
    drift_worst = 0.0
    drift_detail = []
    for params, drive in marquee:
        values = {}
        for n_cav_max in (8, 12):
            rho = solve_tracked(params, drive, n_cav_max=n_cav_max)
            dist = full_distribution(rho)
            values[n_cav_max] = np.array(
                [*dist[:4], *(correlation_g(rho, k) for k in (2, 3, 4))]
            )
        rel = np.abs(values[8] - values[12]) / np.abs(values[12])
        drift_worst = max(drift_worst, float(np.max(rel)))
        drift_detail.append(f"{drive.kind}@{drive.frequency:.4f}: {float(np.max(rel)):.1e}")
    drift_ok = drift_worst < 1e-6

    ok = hygiene_ok and drift_ok
    report(
        11,
        ok,
        f"trace defect {trace_worst:.1e}, hermiticity {herm_worst:.1e}, "
        f"min eig {eig_worst:.1e} over {len(HYGIENE)} states; "
        f"worst 8->12 drift {drift_worst:.1e} ({'; '.join(drift_detail)})",
    )
    assert ok, (
        "hygiene bounds hold, but the 8->12 relative drift exceeds 1e-6 for "
        "g4-type observables whose factorial moments live in the distribution "
        "tail (worst at the two-photon-drive point and at the blockade dip "
        "where g4 ~ 1e-8); absolute drifts are below 1e-10 there; "
        "see notes/decisions.md"
    )


@pytest.mark.slow
def test_criterion_12_determinism(tmp_path):
    cfg = SweepConfig(
        omega0_ratio=2.0,
        J_ratio=0.01,
        kappa_ratio=1e-3,
        gamma_ratio=1e-3,
        drive_kind="cavity_1photon",
        drive_strength_over_kappa=0.4,
        axis="drive_frequency",
        lo=0.99,
        hi=1.01,
        points=21,
        n_cav_max=12,
        oracle="numeric",
        out_prefix=str(tmp_path / "det"),
        emit_plots=False,
    )
    paths = [tmp_path / name for name in ("a.csv", "b.csv", "c.csv")]
    emit_csv(run_sweep(cfg), str(paths[0]))
    emit_csv(run_sweep(cfg), str(paths[1]))
    emit_csv(run_sweep(cfg, jobs=2), str(paths[2]))
    repeat_same = paths[0].read_bytes() == paths[1].read_bytes()
    parallel_same = paths[0].read_bytes() == paths[2].read_bytes()
    ok = repeat_same and parallel_same
    report(
        12,
        ok,
        f"repeat run byte-identical: {repeat_same}; jobs=2 byte-identical: {parallel_same}",
    )
    assert ok
