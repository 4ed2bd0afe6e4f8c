"""Parameter sweeps over drive / atom frequencies, CSV and plot emission.

A sweep is described by a flat key=value config (see parse_config). Every
grid point is an independent steady-state computation, so sweeps can run
serially or across processes with byte-identical output; rows are always
ordered by axis value. Per-point solver failures never abort a sweep: the
offending row carries an error marker in its label field and NaN values.

CSV contract: UTF-8, LF newlines, header exactly

    axis,P0,P1,P2,P3,P4,Q0,Q1,Q2,Q3,Q4,g2,g3,g4,mean_n,label,resonance

(axis1,axis2 for 2D sweeps), floats in scientific notation with 12
significant digits and a bare exponent, e.g. 1.00000000000e0. Q_n is the
Poisson reference at the row's mean photon number.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial
from typing import Optional, Sequence

import numpy as np

from . import analytic, criteria, lindblad
from .hilbert import SpaceConfig
from .model import DRIVE_KINDS, DriveSpec, ModelParams, hamiltonian_rotating, resonance_locations

AXES: tuple[str, ...] = ("drive_frequency", "atom_frequency", "both-2D")
ORACLES: tuple[str, ...] = ("numeric", "analytic", "both")

CSV_COLUMNS = "P0,P1,P2,P3,P4,Q0,Q1,Q2,Q3,Q4,g2,g3,g4,mean_n,label,resonance"
CSV_HEADER_1D = "axis," + CSV_COLUMNS
CSV_HEADER_2D = "axis1,axis2," + CSV_COLUMNS

#: catalogue depth used for row annotation
ANNOTATION_N_MAX = 4


class ConfigError(ValueError):
    """Malformed or inconsistent sweep configuration."""


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: model ratios, drive, axis ranges, output options.

    All frequencies and rates are ratios to the cavity frequency (omega_c = 1
    internally). For axis="both-2D" the first axis is the drive frequency
    (lo/hi/points) and the second the atomic frequency (lo2/hi2/points2).
    For axis="atom_frequency" the drive frequency is pinned by
    drive_frequency_ratio.
    """

    omega0_ratio: float = 2.0
    J_ratio: float = 0.01
    kappa_ratio: float = 1e-3
    gamma_ratio: float = 1e-3
    drive_kind: str = "cavity_1photon"
    drive_strength_over_kappa: float = 0.4
    axis: str = "drive_frequency"
    lo: float = 0.97
    hi: float = 1.03
    points: int = 101
    lo2: Optional[float] = None
    hi2: Optional[float] = None
    points2: Optional[int] = None
    drive_frequency_ratio: Optional[float] = None
    n_cav_max: int = 12
    oracle: str = "numeric"
    out_prefix: str = "sweep"
    emit_plots: bool = True

    def __post_init__(self) -> None:
        if self.drive_kind not in DRIVE_KINDS:
            raise ConfigError(f"drive_kind must be one of {DRIVE_KINDS}, got {self.drive_kind!r}")
        if self.axis not in AXES:
            raise ConfigError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.oracle not in ORACLES:
            raise ConfigError(f"oracle must be one of {ORACLES}, got {self.oracle!r}")
        if self.oracle in ("analytic", "both") and self.drive_kind != "cavity_1photon":
            raise ConfigError("the analytic oracle exists only for drive_kind=cavity_1photon")
        if not self.lo < self.hi:
            raise ConfigError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if self.points < 2:
            raise ConfigError(f"points must be >= 2, got {self.points}")
        if self.n_cav_max < 6:
            raise ConfigError(
                f"n_cav_max must be >= 6 so that g4 is meaningful, got {self.n_cav_max}"
            )
        if self.J_ratio < 0 or self.kappa_ratio < 0 or self.gamma_ratio < 0:
            raise ConfigError("J_ratio, kappa_ratio, gamma_ratio must be nonnegative")
        if self.drive_strength_over_kappa < 0:
            raise ConfigError("drive_strength_over_kappa must be nonnegative")
        if self.axis == "both-2D":
            if self.lo2 is None or self.hi2 is None or self.points2 is None:
                raise ConfigError("2D sweeps need lo2, hi2 and points2")
            if not self.lo2 < self.hi2:
                raise ConfigError(f"need lo2 < hi2, got [{self.lo2}, {self.hi2}]")
            if self.points2 < 2:
                raise ConfigError(f"points2 must be >= 2, got {self.points2}")
        if self.axis == "atom_frequency":
            if self.drive_frequency_ratio is None or self.drive_frequency_ratio <= 0:
                raise ConfigError(
                    "atom_frequency sweeps need a positive drive_frequency_ratio"
                )


@dataclass(frozen=True)
class AnalyticPoint:
    """Perturbative observables attached to a numeric row when oracle=both."""

    p: tuple[float, float, float, float]
    g2: float
    g3: float
    mean_n: float


@dataclass(frozen=True)
class SweepRow:
    """One grid point: axis value(s), distributions, correlations, labels."""

    axis: tuple[float, ...]
    p: tuple[float, ...]        # P_0 .. P_4
    q: tuple[float, ...]        # Poisson reference
    g2: float
    g3: float
    g4: float
    mean_n: float
    label: str
    resonance: str
    analytic: Optional[AnalyticPoint] = None


_CONFIG_TYPES = {
    "omega0_ratio": float,
    "J_ratio": float,
    "kappa_ratio": float,
    "gamma_ratio": float,
    "drive_kind": str,
    "drive_strength_over_kappa": float,
    "axis": str,
    "lo": float,
    "hi": float,
    "points": int,
    "lo2": float,
    "hi2": float,
    "points2": int,
    "drive_frequency_ratio": float,
    "n_cav_max": int,
    "oracle": str,
    "out_prefix": str,
    "emit_plots": bool,
}

_BOOL_VALUES = {"true": True, "1": True, "yes": True, "false": False, "0": False, "no": False}


def parse_config_text(text: str, source: str = "<config>") -> SweepConfig:
    """Parse flat key=value text (utf-8, '#' comments) into a SweepConfig."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CONFIG_TYPES:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        caster = _CONFIG_TYPES[key]
        try:
            if caster is bool:
                values[key] = _BOOL_VALUES[value.lower()]
            else:
                values[key] = caster(value)
        except (ValueError, KeyError) as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {value!r}") from exc
    try:
        return SweepConfig(**values)  # type: ignore[arg-type]
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{source}: {exc}") from exc


def parse_config(path: str) -> SweepConfig:
    """Read a sweep config file."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text, source=str(path))


def transition_kind(drive_kind: str) -> str:
    """Physical transition class of a drive: photons enter one or two at a time."""
    return "one_photon" if drive_kind == "cavity_1photon" else "two_photon"


def _axis_values(lo: float, hi: float, points: int) -> np.ndarray:
    return np.linspace(lo, hi, points)


def grid(cfg: SweepConfig) -> list[tuple[float, ...]]:
    """Ordered grid of axis tuples (1 or 2 entries per point)."""
    ax1 = _axis_values(cfg.lo, cfg.hi, cfg.points)
    if cfg.axis != "both-2D":
        return [(float(x),) for x in ax1]
    ax2 = _axis_values(cfg.lo2, cfg.hi2, cfg.points2)  # type: ignore[arg-type]
    return [(float(x1), float(x2)) for x1 in ax1 for x2 in ax2]


def point_inputs(cfg: SweepConfig, axis: tuple[float, ...]) -> tuple[ModelParams, DriveSpec]:
    """Model parameters and drive for one grid point."""
    if cfg.axis == "drive_frequency":
        drive_freq, omega0 = axis[0], cfg.omega0_ratio
    elif cfg.axis == "atom_frequency":
        drive_freq, omega0 = float(cfg.drive_frequency_ratio), axis[0]  # type: ignore[arg-type]
    else:
        drive_freq, omega0 = axis[0], axis[1]
    params = ModelParams(
        omega_c=1.0,
        omega_0=omega0,
        J=cfg.J_ratio,
        kappa=cfg.kappa_ratio,
        gamma=cfg.gamma_ratio,
    )
    strength = cfg.drive_strength_over_kappa * cfg.kappa_ratio
    drive = DriveSpec(kind=cfg.drive_kind, strength=strength, frequency=drive_freq)
    return params, drive


def _poisson_row(mean_n: float) -> tuple[float, ...]:
    mean_n = max(mean_n, 0.0)
    return tuple(
        criteria.poisson_reference(mean_n, k) for k in range(criteria.REPORT_DEPTH + 1)
    )


_NAN5 = (math.nan,) * 5


def _numeric_observables(cfg: SweepConfig, params: ModelParams, drive: DriveSpec):
    space = SpaceConfig(cfg.n_cav_max)
    h = hamiltonian_rotating(params, drive, space)
    liouvillian = lindblad.build_liouvillian(h, params)
    rho = lindblad.steady_state(liouvillian)
    dist = lindblad.full_distribution(rho)
    p5 = tuple(float(x) for x in dist[:5])
    mean_n = max(float(np.dot(np.arange(dist.size), dist)), 0.0)
    gs = tuple(lindblad.correlation_g(rho, order) for order in (2, 3, 4))
    return p5, mean_n, gs


def _analytic_observables(params: ModelParams, drive: DriveSpec):
    amps = analytic.steady_amplitudes(params, drive)
    p4, _ = analytic.analytic_distribution(amps)
    # the perturbative ansatz stops at three photons: P4 = 0, g4 = 0
    p5 = (float(p4[0]), float(p4[1]), float(p4[2]), float(p4[3]), 0.0)
    mean_n = float(p4[1] + 2.0 * p4[2] + 3.0 * p4[3])
    g2 = analytic.analytic_g2(amps)
    g3 = analytic.analytic_g3(amps)
    return p5, mean_n, (g2, g3, 0.0)


def solve_point(cfg: SweepConfig, axis: tuple[float, ...]) -> SweepRow:
    """Observables at one grid point; solver errors become an error-marker row."""
    params, drive = point_inputs(cfg, axis)
    kind = transition_kind(cfg.drive_kind)

    overlay: Optional[AnalyticPoint] = None
    if cfg.oracle == "both":
        try:
            ap5, amean, (ag2, ag3, _) = _analytic_observables(params, drive)
            overlay = AnalyticPoint(p=ap5[:4], g2=ag2, g3=ag3, mean_n=amean)
        except (analytic.DegenerateDenominator, lindblad.VacuumState):
            overlay = None

    try:
        if cfg.oracle == "analytic":
            p5, mean_n, (g2, g3, g4) = _analytic_observables(params, drive)
        else:
            p5, mean_n, (g2, g3, g4) = _numeric_observables(cfg, params, drive)
    except (lindblad.SingularSystem, lindblad.VacuumState,
            analytic.DegenerateDenominator, ValueError) as exc:
        return SweepRow(
            axis=axis,
            p=_NAN5,
            q=_NAN5,
            g2=math.nan,
            g3=math.nan,
            g4=math.nan,
            mean_n=math.nan,
            label=f"error:{type(exc).__name__}",
            resonance="",
            analytic=overlay,
        )

    label = criteria.classify(g2, g3, g4, kind)
    return SweepRow(
        axis=axis,
        p=p5,
        q=_poisson_row(mean_n),
        g2=g2,
        g3=g3,
        g4=g4,
        mean_n=mean_n,
        label=label,
        resonance="",
        analytic=overlay,
    )


def _annotate(rows: list[SweepRow], cfg: SweepConfig) -> list[SweepRow]:
    """Tag each row with the nearest resonance line within half a grid step."""
    half_step = 0.5 * (cfg.hi - cfg.lo) / (cfg.points - 1)
    out = []
    for row in rows:
        params, drive = point_inputs(cfg, row.axis)
        lines = resonance_locations(params, cfg.drive_kind, ANNOTATION_N_MAX)
        best_label, best_dist = "", math.inf
        for label, freq in lines:
            dist = abs(drive.frequency - freq)
            if dist <= half_step and dist < best_dist:
                best_label, best_dist = label, dist
        out.append(replace(row, resonance=best_label))
    return out


def run_sweep(cfg: SweepConfig, jobs: int = 1) -> list[SweepRow]:
    """All grid rows, ordered by axis value, identical for any jobs count."""
    points = grid(cfg)
    if jobs > 1:
        chunk = max(1, len(points) // (jobs * 4))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(partial(solve_point, cfg), points, chunksize=chunk))
    else:
        rows = [solve_point(cfg, axis) for axis in points]
    return _annotate(rows, cfg)


def format_float(x: float) -> str:
    """Scientific notation, 12 significant digits, bare exponent (1.0 -> 1.00000000000e0)."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    mantissa, _, exponent = f"{x:.11e}".partition("e")
    return f"{mantissa}e{int(exponent)}"


def emit_csv(rows: Sequence[SweepRow], path: str) -> str:
    """Write rows to a CSV file with the pinned header and float format."""
    if not rows:
        raise ValueError("refusing to write an empty sweep CSV")
    n_axis = len(rows[0].axis)
    header = CSV_HEADER_1D if n_axis == 1 else CSV_HEADER_2D
    lines = [header]
    for row in rows:
        fields = [format_float(a) for a in row.axis]
        fields += [format_float(x) for x in row.p]
        fields += [format_float(x) for x in row.q]
        fields += [format_float(row.g2), format_float(row.g3), format_float(row.g4)]
        fields += [format_float(row.mean_n), row.label, row.resonance]
        lines.append(",".join(fields))
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc
    return path


def analytic_rows(rows: Sequence[SweepRow]) -> list[SweepRow]:
    """Standalone rows built from the analytic overlays (for oracle=both)."""
    out = []
    for row in rows:
        if row.analytic is None:
            continue
        ap = row.analytic
        p5 = ap.p + (0.0,)
        out.append(
            SweepRow(
                axis=row.axis,
                p=p5,
                q=_poisson_row(ap.mean_n),
                g2=ap.g2,
                g3=ap.g3,
                g4=0.0,
                mean_n=ap.mean_n,
                label=criteria.classify(ap.g2, ap.g3, math.nan, "one_photon"),
                resonance=row.resonance,
            )
        )
    return out


#: plot rendering floor for log-scale curves (CSV keeps raw values)
PLOT_FLOOR = 1e-12


def _clamped(values: Sequence[float]) -> np.ndarray:
    arr = np.array(values, dtype=float)
    return np.maximum(arr, PLOT_FLOOR)


def emit_plot(
    rows: Sequence[SweepRow],
    path: str,
    resonance_lines: Optional[Sequence[tuple[str, float]]] = None,
    title: str = "",
) -> str:
    """Render a static vector-graphics file (P_n and g^(n) curves, or 2D maps)."""
    if not rows:
        raise ValueError("refusing to plot an empty sweep")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if len(rows[0].axis) == 1:
        fig = _plot_1d(plt, rows, resonance_lines, title)
    else:
        fig = _plot_2d(plt, rows, title)
    try:
        fig.savefig(path)
    except OSError as exc:
        raise OSError(f"cannot write plot to {path}: {exc}") from exc
    finally:
        plt.close(fig)
    return path


def _plot_1d(plt, rows, resonance_lines, title):
    x = [row.axis[0] for row in rows]
    fig, (ax_p, ax_g) = plt.subplots(2, 1, figsize=(7.0, 7.5), sharex=True)
    for n in range(4):
        ax_p.plot(x, _clamped([row.p[n] for row in rows]), label=f"P{n}")
    has_overlay = any(row.analytic is not None for row in rows)
    if has_overlay:
        for n in range(4):
            ax_p.plot(
                x,
                _clamped([row.analytic.p[n] if row.analytic else math.nan for row in rows]),
                ls=":",
                color="gray",
                lw=0.9,
            )
    ax_p.set_yscale("log")
    ax_p.set_ylabel("photon-number probability")
    ax_p.legend(loc="best", fontsize=8)

    for name, values in (
        ("g2", [row.g2 for row in rows]),
        ("g3", [row.g3 for row in rows]),
        ("g4", [row.g4 for row in rows]),
    ):
        ax_g.plot(x, _clamped(values), label=name)
    if has_overlay:
        ax_g.plot(
            x,
            _clamped([row.analytic.g2 if row.analytic else math.nan for row in rows]),
            ls=":",
            color="gray",
            lw=0.9,
            label="g2 (perturbative)",
        )
    ax_g.axhline(1.0, color="black", lw=0.6)
    ax_g.set_yscale("log")
    ax_g.set_xlabel("swept frequency (units of cavity frequency)")
    ax_g.set_ylabel("correlation functions")
    ax_g.legend(loc="best", fontsize=8)

    if resonance_lines:
        lo, hi = min(x), max(x)
        for label, freq in resonance_lines:
            if lo <= freq <= hi:
                for ax in (ax_p, ax_g):
                    ax.axvline(freq, color="tab:gray", lw=0.5, ls="--")
                ax_g.annotate(
                    label,
                    xy=(freq, 1.0),
                    xycoords=("data", "axes fraction"),
                    xytext=(0, 2),
                    textcoords="offset points",
                    rotation=90,
                    fontsize=6,
                    ha="center",
                    va="bottom",
                )
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    return fig


def _plot_2d(plt, rows, title):
    x = sorted({row.axis[0] for row in rows})
    y = sorted({row.axis[1] for row in rows})
    fig, axes = plt.subplots(1, 3, figsize=(13.0, 4.0), sharey=True)
    for ax, name, getter in (
        (axes[0], "log10 g2", lambda r: r.g2),
        (axes[1], "log10 g3", lambda r: r.g3),
        (axes[2], "log10 g4", lambda r: r.g4),
    ):
        z = np.full((len(y), len(x)), np.nan)
        xi = {v: i for i, v in enumerate(x)}
        yi = {v: i for i, v in enumerate(y)}
        for row in rows:
            z[yi[row.axis[1]], xi[row.axis[0]]] = math.log10(max(getter(row), PLOT_FLOOR))
        mesh = ax.pcolormesh(x, y, z, shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label=name)
        ax.set_xlabel("drive frequency")
    axes[0].set_ylabel("atomic frequency")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    return fig


def run_and_emit(cfg: SweepConfig, jobs: int = 1) -> dict[str, str]:
    """Run a sweep and write its CSV (plus plot / analytic companion) files.

    Returns a mapping of artifact names to paths: always "csv"; "analytic_csv"
    when oracle=both; "plot" when emit_plots is on.
    """
    rows = run_sweep(cfg, jobs=jobs)
    outputs: dict[str, str] = {}
    directory = os.path.dirname(cfg.out_prefix)
    if directory:
        os.makedirs(directory, exist_ok=True)
    outputs["csv"] = emit_csv(rows, cfg.out_prefix + ".csv")
    if cfg.oracle == "both":
        companion = analytic_rows(rows)
        if companion:
            outputs["analytic_csv"] = emit_csv(companion, cfg.out_prefix + "_analytic.csv")
    if cfg.emit_plots:
        lines = None
        if cfg.axis != "both-2D":
            params, _ = point_inputs(cfg, grid(cfg)[0])
            lines = resonance_locations(params, cfg.drive_kind, ANNOTATION_N_MAX)
        outputs["plot"] = emit_plot(rows, cfg.out_prefix + ".svg", resonance_lines=lines)
    return outputs
