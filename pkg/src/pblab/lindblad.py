"""Liouvillian construction, steady-state solve, photon statistics.

The master equation (vacuum reservoirs for both the cavity and the atom) is

    drho/dt = i [rho, H] + kappa/2 (2 a rho a^dag - a^dag a rho - rho a^dag a)
                         + gamma/2 (2 s- rho s+ - s+ s- rho - rho s+ s-),

written here as a dense superoperator acting on column-stacked density
matrices: vec(A X B) = (B^T kron A) vec(X). Steady states come only from a
linear solve (one row of the Liouvillian is replaced by the trace constraint);
there is no time-evolution path in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import Operator, SpaceConfig, annihilation, atom_operator
from .model import ModelParams


class SingularSystem(RuntimeError):
    """Steady-state solve failed: singular or degenerate Liouvillian."""


class VacuumState(RuntimeError):
    """Correlation function undefined: mean photon number at vacuum level."""


#: mean photon number below which correlation functions are refused
VACUUM_THRESHOLD = 1e-14


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace state on a SpaceConfig.

    Construction enforces Hermiticity to 1e-10 and trace 1 to 1e-10;
    positivity is checked at the solver boundary (see steady_state).
    """

    entries: np.ndarray
    space: SpaceConfig

    def __post_init__(self) -> None:
        m = np.array(self.entries, dtype=complex)
        expected = (self.space.dim, self.space.dim)
        if m.shape != expected:
            raise ValueError(f"density matrix shape {m.shape} does not match space {expected}")
        herm_err = np.max(np.abs(m - m.conj().T))
        if herm_err > 1e-10:
            raise ValueError(f"density matrix not Hermitian: max |rho - rho^dag| = {herm_err:.3e}")
        tr = m.trace()
        if abs(tr - 1.0) > 1e-10:
            raise ValueError(f"density matrix trace {tr} differs from 1 beyond 1e-10")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.space.dim

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries)[0])


@dataclass(frozen=True, eq=False)
class Liouvillian:
    """Dense dim^2 x dim^2 generator acting on column-stacked density matrices."""

    matrix: np.ndarray
    space: SpaceConfig

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=complex)
        d2 = self.space.dim**2
        if m.shape != (d2, d2):
            raise ValueError(f"Liouvillian shape {m.shape} does not match dim^2 = {d2}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.space.dim


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization (Fortran order)."""
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvectorize(vec: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of vectorize()."""
    return np.asarray(vec, dtype=complex).reshape((dim, dim), order="F")


def _dissipator(c: np.ndarray) -> np.ndarray:
    # vec form of 2 c rho c^dag - c^dag c rho - rho c^dag c
    eye = np.eye(c.shape[0])
    cdc = c.conj().T @ c
    return 2.0 * np.kron(c.conj(), c) - np.kron(eye, cdc) - np.kron(cdc.T, eye)


def build_liouvillian(h_rot: Operator, params: ModelParams) -> Liouvillian:
    """Superoperator for the master equation with Hamiltonian h_rot.

    The collapse channels are cavity decay at rate params.kappa through a and
    atomic decay at rate params.gamma through sigma_-.
    """
    space = h_rot.space
    h = h_rot.entries
    eye = np.eye(space.dim)
    mat = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    if params.kappa > 0:
        mat = mat + (params.kappa / 2.0) * _dissipator(annihilation(space).entries)
    if params.gamma > 0:
        mat = mat + (params.gamma / 2.0) * _dissipator(atom_operator("lower", space).entries)
    return Liouvillian(mat, space)


def apply(liouvillian: Liouvillian, rho: np.ndarray) -> np.ndarray:
    """d(rho)/dt as a matrix, for an arbitrary (not necessarily physical) rho."""
    return unvectorize(liouvillian.matrix @ vectorize(rho), liouvillian.dim)


@dataclass(frozen=True, eq=False)
class SteadyStateSolution:
    """Steady state plus the raw-solve hygiene numbers, for convergence audits.

    residual is the max-abs of L vec(rho) for the raw solution; herm_defect
    and trace_defect measure the raw solution before the Hermitize /
    renormalize step; min_eig is the smallest eigenvalue of the final state.
    """

    rho: DensityMatrix
    residual: float
    herm_defect: float
    trace_defect: float
    min_eig: float


def solve_steady_state(
    liouvillian: Liouvillian,
    *,
    residual_tol: float = 1e-9,
    min_eig_tol: float = -1e-8,
) -> SteadyStateSolution:
    """Unique trace-one null vector of the Liouvillian, with diagnostics.

    One population row of L (the one with the largest diagonal magnitude) is
    replaced by the vectorized trace constraint and the resulting square
    system is solved directly. A rank deficiency of two or more (degenerate
    steady states) leaves the modified matrix singular, which surfaces either
    as a linear algebra failure or as a residual above residual_tol; both
    raise SingularSystem. The solution is Hermitized and trace-renormalized;
    eigenvalues below min_eig_tol raise ValueError instead of being clipped.
    """
    mat = liouvillian.matrix
    dim = liouvillian.dim

    trace_row = vectorize(np.eye(dim))
    if np.max(np.abs(trace_row @ mat)) > 1e-10:
        raise ValueError("Liouvillian is not trace-preserving")

    # Only the population rows (d rho_ii / dt) participate in the trace
    # redundancy vec(I)^T L = 0; replacing any other row leaves that exact
    # linear dependency in place and the modified system singular. Among the
    # population rows, take the one with the largest diagonal magnitude.
    population_rows = np.arange(dim) * (dim + 1)
    diag = np.abs(np.diag(mat)[population_rows])
    row = int(population_rows[int(np.argmax(diag))])
    modified = np.array(mat)
    modified[row, :] = trace_row
    rhs = np.zeros(dim * dim, dtype=complex)
    rhs[row] = 1.0
    try:
        vec = np.linalg.solve(modified, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"steady-state linear solve failed: {exc}") from exc

    residual = float(np.max(np.abs(mat @ vec)))
    if not math.isfinite(residual) or residual > residual_tol:
        raise SingularSystem(
            f"steady-state residual {residual:.3e} exceeds {residual_tol:.1e}; "
            "the null space may be degenerate in this parameter regime"
        )

    raw = unvectorize(vec, dim)
    herm_defect = float(np.max(np.abs(raw - raw.conj().T)))
    trace_defect = float(abs(raw.trace() - 1.0))
    rho = 0.5 * (raw + raw.conj().T)
    rho = rho / rho.trace().real
    min_eig = float(np.linalg.eigvalsh(rho)[0])
    if min_eig < min_eig_tol:
        raise ValueError(
            f"steady state has eigenvalue {min_eig:.3e} below {min_eig_tol:.1e}; "
            "refusing to clip a significantly non-positive state"
        )
    return SteadyStateSolution(
        rho=DensityMatrix(rho, liouvillian.space),
        residual=residual,
        herm_defect=herm_defect,
        trace_defect=trace_defect,
        min_eig=min_eig,
    )


def steady_state(
    liouvillian: Liouvillian,
    *,
    residual_tol: float = 1e-9,
    min_eig_tol: float = -1e-8,
) -> DensityMatrix:
    """Steady state of the Liouvillian (see solve_steady_state for details)."""
    return solve_steady_state(
        liouvillian, residual_tol=residual_tol, min_eig_tol=min_eig_tol
    ).rho


def photon_distribution(rho: DensityMatrix, n: int) -> float:
    """P_n: probability of n photons, traced over the atom."""
    space = rho.space
    if int(n) != n or not 0 <= n <= space.n_cav_max:
        raise ValueError(f"photon number {n} outside [0, {space.n_cav_max}]")
    n = int(n)
    m = rho.entries
    ig = space.index("g", n)
    ie = space.index("e", n)
    return float((m[ig, ig] + m[ie, ie]).real)


def full_distribution(rho: DensityMatrix) -> np.ndarray:
    """All photon-number probabilities P_0 .. P_{n_cav_max}."""
    return np.array([photon_distribution(rho, n) for n in range(rho.space.cav_dim)])


def mean_photon(rho: DensityMatrix) -> float:
    """Mean photon number Tr(a^dag a rho)."""
    p = full_distribution(rho)
    return float(np.dot(np.arange(p.size), p))


def correlation_g(rho: DensityMatrix, order: int) -> float:
    """Equal-time normalized correlation g^(order)(0) for order in {2, 3, 4}.

    Computed from factorial moments of the photon-number distribution:
    Tr(a^dag^m a^m rho) = sum_n n (n-1) ... (n-m+1) P_n.
    """
    if order not in (2, 3, 4):
        raise ValueError(f"correlation order must be 2, 3 or 4, got {order}")
    p = full_distribution(rho)
    ns = np.arange(p.size, dtype=float)
    mean = float(np.dot(ns, p))
    if mean <= VACUUM_THRESHOLD:
        raise VacuumState(f"mean photon number {mean:.3e} at or below vacuum threshold")
    factorial_moment = np.ones_like(ns)
    for k in range(order):
        factorial_moment = factorial_moment * (ns - k)
    numerator = float(np.dot(factorial_moment, p))
    return max(numerator / mean**order, 0.0)


def expectation(op: Operator, rho: DensityMatrix) -> complex:
    """Tr(op rho)."""
    if op.space != rho.space:
        raise ValueError("operator and state act on different spaces")
    return complex(np.trace(op.entries @ rho.entries))
