"""Truncated atom (x) cavity Hilbert space and the elementary operators.

The basis ordering is fixed once and for all: the atom index varies slowest,

    |g,0>, |g,1>, ..., |g,n_max>, |e,0>, ..., |e,n_max>,

so basis index = atom * (n_max + 1) + n with atom = 0 for |g>, 1 for |e>.
All operators are dense complex matrices; the largest space used anywhere in
this package has dimension 2 * 21 = 42, which makes sparse storage pointless.

Truncation convention: the creation operator maps the top Fock state |n_max>
to the zero vector (hard cutoff, no rescaling). Convergence against the cutoff
is checked by the truncation-doubling tests of the steady-state solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

AtomOpKind = Literal["raise", "lower", "sigma_z", "excited_projector"]

ATOM_OP_KINDS: tuple[str, ...] = ("raise", "lower", "sigma_z", "excited_projector")


@dataclass(frozen=True)
class SpaceConfig:
    """Configuration of the truncated two-level-atom (x) cavity space.

    n_cav_max is the highest retained Fock state; the total dimension is
    2 * (n_cav_max + 1).
    """

    n_cav_max: int

    def __post_init__(self) -> None:
        if int(self.n_cav_max) != self.n_cav_max or self.n_cav_max < 3:
            raise ValueError(f"n_cav_max must be an integer >= 3, got {self.n_cav_max!r}")

    @property
    def cav_dim(self) -> int:
        return self.n_cav_max + 1

    @property
    def dim(self) -> int:
        return 2 * self.cav_dim

    def index(self, atom: str, n: int) -> int:
        """Basis index of the product state |atom, n> with atom in {'g', 'e'}."""
        if atom not in ("g", "e"):
            raise ValueError(f"atom state must be 'g' or 'e', got {atom!r}")
        if not 0 <= n <= self.n_cav_max:
            raise ValueError(f"photon number {n} outside [0, {self.n_cav_max}]")
        return (0 if atom == "g" else 1) * self.cav_dim + n

    def label(self, index: int) -> tuple[str, int]:
        """Inverse of index(): (atom state, photon number) for a basis index."""
        if not 0 <= index < self.dim:
            raise ValueError(f"basis index {index} outside [0, {self.dim})")
        atom, n = divmod(index, self.cav_dim)
        return ("g" if atom == 0 else "e", n)


@dataclass(frozen=True, eq=False)
class Operator:
    """Dense complex matrix on a SpaceConfig, with immutable entries."""

    entries: np.ndarray
    space: SpaceConfig

    def __post_init__(self) -> None:
        m = np.array(self.entries, dtype=complex)
        expected = (self.space.dim, self.space.dim)
        if m.shape != expected:
            raise ValueError(f"operator shape {m.shape} does not match space dim {expected}")
        if not np.all(np.isfinite(m)):
            raise ValueError("operator entries must be finite (no NaN/Inf)")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.space.dim

    def dag(self) -> "Operator":
        return Operator(self.entries.conj().T, self.space)

    def _check_space(self, other: "Operator") -> None:
        if other.space != self.space:
            raise ValueError("operators act on different spaces")

    def __matmul__(self, other: "Operator") -> "Operator":
        self._check_space(other)
        return Operator(self.entries @ other.entries, self.space)

    def __add__(self, other: "Operator") -> "Operator":
        self._check_space(other)
        return Operator(self.entries + other.entries, self.space)

    def __sub__(self, other: "Operator") -> "Operator":
        self._check_space(other)
        return Operator(self.entries - other.entries, self.space)

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(self.entries * scalar, self.space)

    __rmul__ = __mul__

    def __neg__(self) -> "Operator":
        return Operator(-self.entries, self.space)


def _cavity_annihilation(space: SpaceConfig) -> np.ndarray:
    # <n-1| a |n> = sqrt(n) on the cavity factor alone
    return np.diag(np.sqrt(np.arange(1, space.cav_dim, dtype=float)), k=1).astype(complex)


_ATOM_MATRICES = {
    # 2x2 blocks in the (g, e) ordering
    "raise": np.array([[0, 0], [1, 0]], dtype=complex),        # |e><g|
    "lower": np.array([[0, 1], [0, 0]], dtype=complex),        # |g><e|
    "sigma_z": np.array([[-1, 0], [0, 1]], dtype=complex),     # |e><e| - |g><g|
    "excited_projector": np.array([[0, 0], [0, 1]], dtype=complex),
}


def annihilation(space: SpaceConfig) -> Operator:
    """Cavity annihilation operator a, acting as identity on the atom."""
    return Operator(np.kron(np.eye(2), _cavity_annihilation(space)), space)


def creation(space: SpaceConfig) -> Operator:
    """Cavity creation operator; maps |n_max> to zero under the hard cutoff."""
    return annihilation(space).dag()


def number(space: SpaceConfig) -> Operator:
    """Photon number operator a^dag a."""
    a = _cavity_annihilation(space)
    return Operator(np.kron(np.eye(2), a.conj().T @ a), space)


def atom_operator(kind: AtomOpKind, space: SpaceConfig) -> Operator:
    """Two-level atom operator (raise, lower, sigma_z, excited_projector) on the full space."""
    if kind not in _ATOM_MATRICES:
        raise ValueError(f"unknown atom operator kind {kind!r}; expected one of {ATOM_OP_KINDS}")
    return Operator(np.kron(_ATOM_MATRICES[kind], np.eye(space.cav_dim)), space)


def weighted_excitation(space: SpaceConfig) -> Operator:
    """Weighted excitation number 2 sigma_+ sigma_- + a^dag a.

    Diagonal: |g,n> -> n and |e,n> -> n + 2. Commutes with the two-photon
    coupling exactly, even under truncation, because sigma_+ a^2 never crosses
    the Fock cutoff upward.
    """
    sp = _ATOM_MATRICES["excited_projector"]
    a = _cavity_annihilation(space)
    entries = 2 * np.kron(sp, np.eye(space.cav_dim)) + np.kron(np.eye(2), a.conj().T @ a)
    return Operator(entries, space)


def identity(space: SpaceConfig) -> Operator:
    return Operator(np.eye(space.dim, dtype=complex), space)


def fock_projector(space: SpaceConfig, n: int) -> Operator:
    """Projector 1_atom (x) |n><n| onto photon number n (both atom states)."""
    if not 0 <= n <= space.n_cav_max:
        raise ValueError(f"photon number {n} outside [0, {space.n_cav_max}]")
    p = np.zeros((space.cav_dim, space.cav_dim), dtype=complex)
    p[n, n] = 1.0
    return Operator(np.kron(np.eye(2), p), space)


def basis_state(space: SpaceConfig, atom: str, n: int) -> np.ndarray:
    """Column vector of the basis state |atom, n>."""
    v = np.zeros(space.dim, dtype=complex)
    v[space.index(atom, n)] = 1.0
    return v
