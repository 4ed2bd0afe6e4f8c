"""Command-line front end: sweep, spectrum, classify, circuit, selftest.

Exit codes: 0 success, 1 configuration error, 2 solver / selftest failure.
The environment variable PBLAB_NMAX overrides n_cav_max from any config.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import replace

import numpy as np

from . import __version__, analytic, circuit, criteria, lindblad, sweep
from .hilbert import SpaceConfig
from .model import (
    DRIVE_KINDS,
    DriveSpec,
    ModelParams,
    hamiltonian_lab,
    hamiltonian_rotating,
    resonance_locations,
    spectrum_block,
)

NMAX_ENV = "PBLAB_NMAX"


def _fail(message: str, code: int) -> int:
    print(f"pblab: error: {message}", file=sys.stderr)
    return code


def _load_sweep_config(args: argparse.Namespace) -> sweep.SweepConfig:
    cfg = sweep.parse_config(args.config)
    overrides: dict[str, object] = {}
    env_nmax = os.environ.get(NMAX_ENV)
    if env_nmax is not None:
        try:
            overrides["n_cav_max"] = int(env_nmax)
        except ValueError as exc:
            raise sweep.ConfigError(f"{NMAX_ENV} must be an integer, got {env_nmax!r}") from exc
    if getattr(args, "points", None) is not None:
        overrides["points"] = args.points
    if getattr(args, "out", None) is not None:
        overrides["out_prefix"] = args.out
    if getattr(args, "no_plots", False):
        overrides["emit_plots"] = False
    return replace(cfg, **overrides) if overrides else cfg


def _cmd_sweep(args: argparse.Namespace) -> int:
    try:
        cfg = _load_sweep_config(args)
    except sweep.ConfigError as exc:
        return _fail(str(exc), 1)
    try:
        outputs = sweep.run_and_emit(cfg, jobs=args.jobs)
    except OSError as exc:
        return _fail(str(exc), 2)
    for name, path in outputs.items():
        print(f"{name}: {path}")
    return 0


def _cmd_spectrum(args: argparse.Namespace) -> int:
    try:
        cfg = _load_sweep_config(args)
    except sweep.ConfigError as exc:
        return _fail(str(exc), 1)
    params = ModelParams(
        omega_c=1.0,
        omega_0=cfg.omega0_ratio,
        J=cfg.J_ratio,
        kappa=cfg.kappa_ratio,
        gamma=cfg.gamma_ratio,
    )
    n_max = args.n_max
    print(f"# excitation blocks, omega_0 = {cfg.omega0_ratio}, J = {cfg.J_ratio}")
    print("# n  eps_minus          eps_plus           theta")
    print("  0  0.0")
    print(f"  1  {params.omega_c}")
    for n in range(2, n_max + 1):
        blk = spectrum_block(n, params)
        print(f"  {blk.n}  {blk.eps_minus:<17.12g}  {blk.eps_plus:<17.12g}  {blk.theta_n:.12g}")
    print(f"# resonance catalogue for drive_kind = {cfg.drive_kind}")
    for label, freq in resonance_locations(params, cfg.drive_kind, n_max):
        print(f"  {label:<14s} {freq:.12g}")
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    try:
        cfg = _load_sweep_config(args)
    except sweep.ConfigError as exc:
        return _fail(str(exc), 1)
    frequency = args.frequency
    if frequency is None:
        frequency = cfg.drive_frequency_ratio
    if frequency is None:
        return _fail("classify needs --frequency (or drive_frequency_ratio in the config)", 1)

    params = ModelParams(
        omega_c=1.0,
        omega_0=cfg.omega0_ratio,
        J=cfg.J_ratio,
        kappa=cfg.kappa_ratio,
        gamma=cfg.gamma_ratio,
    )
    drive = DriveSpec(
        kind=cfg.drive_kind,
        strength=cfg.drive_strength_over_kappa * cfg.kappa_ratio,
        frequency=frequency,
    )
    try:
        space = SpaceConfig(cfg.n_cav_max)
        h = hamiltonian_rotating(params, drive, space)
        rho = lindblad.steady_state(lindblad.build_liouvillian(h, params))
        dist = lindblad.full_distribution(rho)
        mean_n = lindblad.mean_photon(rho)
        g2, g3, g4 = (lindblad.correlation_g(rho, k) for k in (2, 3, 4))
    except (lindblad.SingularSystem, lindblad.VacuumState, ValueError) as exc:
        return _fail(f"solver: {exc}", 2)
    report = criteria.build_report(
        mean_n, tuple(dist[:5]), g2, g3, g4, sweep.transition_kind(cfg.drive_kind)
    )
    print(f"drive_kind      {cfg.drive_kind}")
    print(f"drive_frequency {frequency}")
    print(f"mean_n          {mean_n:.6e}")
    for n in range(criteria.REPORT_DEPTH + 1):
        print(f"P{n} {report.p[n]: .6e}   Q{n} {report.poisson[n]: .6e}")
    print(f"g2 {g2:.6e}")
    print(f"g3 {g3:.6e}")
    print(f"g4 {g4:.6e}")
    print(f"label {report.label}")
    return 0


_CIRCUIT_KEYS = {
    "e_c": float,
    "n_g": float,
    "e_j0": float,
    "phi_q": float,
    "phi_s": float,
    "omega_s": float,
    "omega_res": float,
    "omega_d": float,
    "omega_cav_drive_strength": float,
    "n_a": int,
    "rwa_threshold": float,
    "loop_area": float,
    "distance": float,
    "resonator_length": float,
    "inductance_per_length": float,
}


def _parse_circuit_config(path: str) -> dict[str, float]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise sweep.ConfigError(f"cannot read circuit config {path}: {exc}") from exc
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise sweep.ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CIRCUIT_KEYS:
            raise sweep.ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _CIRCUIT_KEYS[key](value)
        except ValueError as exc:
            raise sweep.ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return values


def _cmd_circuit(args: argparse.Namespace) -> int:
    try:
        values = _parse_circuit_config(args.config)
        geometry_keys = ("loop_area", "distance", "resonator_length", "inductance_per_length")
        geometry = {k: values.pop(k) for k in geometry_keys if k in values}
        n_a = int(values.pop("n_a", 1))
        threshold = values.pop("rwa_threshold", circuit.DEFAULT_RWA_THRESHOLD)
        if geometry and "phi_q" not in values:
            if len(geometry) != len(geometry_keys):
                raise sweep.ConfigError(f"geometry needs all of {geometry_keys}")
            if "omega_res" not in values:
                raise sweep.ConfigError("geometry-based phi_q needs omega_res (rad/s)")
            geom = circuit.GeometryParams(**geometry)
            values["phi_q"] = circuit.flux_coupling(geom, values["omega_res"])
        missing = [k for k in (
            "e_c", "n_g", "e_j0", "phi_q", "phi_s", "omega_s",
            "omega_res", "omega_d", "omega_cav_drive_strength",
        ) if k not in values]
        if missing:
            raise sweep.ConfigError(f"circuit config missing keys: {missing}")
        circ = circuit.CircuitParams(**values)  # type: ignore[arg-type]
    except (sweep.ConfigError, ValueError) as exc:
        return _fail(str(exc), 1)

    eff = circuit.effective_model(circ)
    wc = eff.params.omega_c
    print(f"phi_q                 {circ.phi_q:.6g}")
    print(f"phi_s                 {circ.phi_s:.6g}")
    print("# effective model, in units of the resonator frequency")
    print(f"omega_c               1.0   ({wc:.6g} input units)")
    print(f"omega_0 / omega_c     {eff.params.omega_0 / wc:.6g}")
    print(f"J / omega_c           {eff.params.J / wc:.6g}")
    print(f"J_x / omega_c         {eff.j_x / wc:.6g}")
    print(f"J_c / omega_c         {eff.j_c / wc:.6g}")
    print(f"Omega_L / omega_c     {eff.atom_drive.strength / wc:.6g}")
    print(f"omega_L / omega_c     {eff.atom_drive.frequency / wc:.6g}")
    print(f"Omega / omega_c       {eff.cavity_drive.strength / wc:.6g}")
    print(f"omega_d / omega_c     {eff.cavity_drive.frequency / wc:.6g}")
    print(f"E_J0 / E_C            {circuit.charge_regime_ratio(circ):.6g}  "
          "(charge-qubit regime wants << 1)")
    print(f"# rotating-wave approximation checks (ratio < {threshold} passes), n_a = {n_a}")
    all_ok = True
    for check in circuit.rwa_validity(circ, n_a, threshold):
        status = "pass" if check.passed else "FAIL"
        all_ok = all_ok and check.passed
        print(f"  {status}  {check.name:<40s} ratio {check.ratio:.4g}")
    print(f"rwa_valid {all_ok}")
    return 0


def _selftest_checks() -> list[tuple[str, bool, str]]:
    results: list[tuple[str, bool, str]] = []

    def record(name: str, ok: bool, detail: str = "") -> None:
        results.append((name, ok, detail))

    space = SpaceConfig(8)
    from .hilbert import annihilation, identity, weighted_excitation

    a = annihilation(space)
    comm = (a @ a.dag() - a.dag() @ a - identity(space)).entries
    interior = [space.index(s, n) for s in ("g", "e") for n in range(space.n_cav_max)]
    err = float(np.max(np.abs(comm[np.ix_(interior, interior)])))
    record("ladder commutator (interior)", err < 1e-12, f"max err {err:.2e}")

    params = ModelParams(omega_c=1.0, omega_0=2.0, J=0.01, kappa=1e-3, gamma=1e-3)
    h = hamiltonian_lab(params, space)
    n_op = weighted_excitation(space)
    err = float(np.max(np.abs((n_op @ h - h @ n_op).entries)))
    record("weighted excitation conserved", err < 1e-12, f"max err {err:.2e}")

    rng = np.random.default_rng(20240811)
    worst = 0.0
    for _ in range(40):
        p = ModelParams(
            omega_c=1.0,
            omega_0=float(rng.uniform(1.5, 2.5)),
            J=float(rng.uniform(0.001, 0.05)),
            kappa=1e-3,
            gamma=1e-3,
        )
        n = int(rng.integers(2, 11))
        blk = spectrum_block(n, p)
        sub = np.array(
            [
                [n * p.omega_c, math.sqrt(n * (n - 1)) * p.J],
                [math.sqrt(n * (n - 1)) * p.J, (n - 2) * p.omega_c + p.omega_0],
            ]
        )
        eig = np.linalg.eigvalsh(sub)
        worst = max(worst, abs(eig[1] - blk.eps_plus), abs(eig[0] - blk.eps_minus))
    record("closed-form spectrum vs diagonalization", worst < 1e-10, f"max err {worst:.2e}")

    drive = DriveSpec(kind="cavity_1photon", strength=0.4e-3, frequency=1.0)
    h_rot = hamiltonian_rotating(params, drive, SpaceConfig(12))
    liouvillian = lindblad.build_liouvillian(h_rot, params)
    rho = lindblad.steady_state(liouvillian)
    resid = float(np.max(np.abs(liouvillian.matrix @ lindblad.vectorize(rho.entries))))
    record("steady-state residual", resid < 1e-9, f"residual {resid:.2e}")

    # the perturbative oracle is asymptotic in the drive, so compare deep in
    # the weak-driving regime where it is quantitatively valid
    weak = DriveSpec(kind="cavity_1photon", strength=0.02e-3, frequency=1.0)
    h_weak = hamiltonian_rotating(params, weak, SpaceConfig(12))
    rho_weak = lindblad.steady_state(lindblad.build_liouvillian(h_weak, params))
    g2 = lindblad.correlation_g(rho_weak, 2)
    g2_ref = analytic.analytic_g2(analytic.steady_amplitudes(params, weak))
    ok = abs(g2 - g2_ref) <= 0.05 * g2_ref
    record("numeric vs perturbative g2 (weak drive)", ok, f"{g2:.3e} vs {g2_ref:.3e}")

    linear = ModelParams(omega_c=1.0, omega_0=2.0, J=0.0, kappa=1e-3, gamma=1e-3)
    h_lin = hamiltonian_rotating(linear, drive, SpaceConfig(12))
    rho_lin = lindblad.steady_state(lindblad.build_liouvillian(h_lin, linear))
    g2_lin = lindblad.correlation_g(rho_lin, 2)
    record("linear cavity is Poissonian", abs(g2_lin - 1.0) < 1e-6, f"g2 {g2_lin:.9f}")

    cfg = sweep.SweepConfig(points=5, lo=0.99, hi=1.01, n_cav_max=8, emit_plots=False)
    rows_a = sweep.run_sweep(cfg)
    rows_b = sweep.run_sweep(cfg)
    same = all(
        ra.p == rb.p and ra.q == rb.q and (ra.g2, ra.g3, ra.g4) == (rb.g2, rb.g3, rb.g4)
        for ra, rb in zip(rows_a, rows_b)
    )
    record("sweep determinism", same)

    return results


def _cmd_selftest(_args: argparse.Namespace) -> int:
    failures = 0
    for name, ok, detail in _selftest_checks():
        status = "PASS" if ok else "FAIL"
        suffix = f"  ({detail})" if detail else ""
        print(f"{status}  {name}{suffix}")
        if not ok:
            failures += 1
    print(f"selftest: {failures} failure(s)")
    return 0 if failures == 0 else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pblab",
        description=(
            "Driven-dissipative two-photon Jaynes-Cummings model: steady-state "
            "photon statistics, blockade classification and parameter sweeps."
        ),
    )
    parser.add_argument("--version", action="version", version=f"pblab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a sweep config, emit CSV and plots")
    p_sweep.add_argument("--config", required=True, help="flat key=value sweep config")
    p_sweep.add_argument("--out", help="override the output path prefix")
    p_sweep.add_argument("--points", type=int, help="override the grid point count")
    p_sweep.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p_sweep.add_argument("--no-plots", action="store_true", help="skip plot emission")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_spec = sub.add_parser("spectrum", help="print the excitation-block spectrum")
    p_spec.add_argument("--config", required=True)
    p_spec.add_argument("--n-max", type=int, default=4, dest="n_max")
    p_spec.set_defaults(func=_cmd_spectrum)

    p_cls = sub.add_parser("classify", help="steady-state report at one drive frequency")
    p_cls.add_argument("--config", required=True)
    p_cls.add_argument("--frequency", type=float, help="drive frequency in units of omega_c")
    p_cls.set_defaults(func=_cmd_classify)

    p_circ = sub.add_parser("circuit", help="map circuit parameters to model parameters")
    p_circ.add_argument("--config", required=True, help="flat key=value circuit config")
    p_circ.set_defaults(func=_cmd_circuit)

    p_self = sub.add_parser("selftest", help="run the built-in invariant checks")
    p_self.set_defaults(func=_cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
