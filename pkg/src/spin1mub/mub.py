"""Spin-1 mutually unbiased bases, the clock/shift pair and null-projection states."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .spin import DERIVED_TOL, Direction, X, Y, Z, as_direction, spin_along, spin_operators

OMEGA = np.exp(2j * np.pi / 3)

# Axis tetrahedral to x, y, z whose spin projection plays the momentum role
# for the Cartesian null basis. The other three are (1, +-1, +-1)/sqrt(3).
TETRAHEDRAL_AXIS = Direction.normalized([1.0, -1.0, -1.0])
TETRAHEDRAL_ANGLE = float(np.arccos(1 / np.sqrt(3)))

# Cartesian spin-1 states: |i> is annihilated by S_i. |y> carries an overall
# factor i, and |x> = (-1, 0, 1)/sqrt(2) is fixed so that every real
# combination sum_i n_i |i> is annihilated by n.S. The commonly quoted
# (1, 0, -1)/sqrt(2) differs only by a sign and is equal to it up to phase.
KET_X = np.array([-1, 0, 1], dtype=complex) / np.sqrt(2)
KET_Y = np.array([1j, 0, 1j], dtype=complex) / np.sqrt(2)
KET_Z = np.array([0, 1, 0], dtype=complex)


@dataclass
class Basis:
    """Orthonormal basis stored as the columns of ``vectors``."""

    vectors: np.ndarray
    label: str = ""

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=complex)
        if self.vectors.ndim != 2 or self.vectors.shape[0] != self.vectors.shape[1]:
            raise ValueError("basis vectors must form a square matrix of columns")

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def __len__(self):
        return self.dim

    def __getitem__(self, k) -> np.ndarray:
        return self.vectors[:, k]

    def __iter__(self):
        return iter(self.vectors.T)

    def orthonormality_error(self) -> float:
        g = self.vectors.conj().T @ self.vectors
        return float(np.abs(g - np.eye(self.dim)).max())

    def is_orthonormal(self, tol: float = DERIVED_TOL) -> bool:
        return self.orthonormality_error() <= tol

    def transformed(self, u: np.ndarray, label: str | None = None) -> "Basis":
        return Basis(np.asarray(u) @ self.vectors, self.label if label is None else label)


@dataclass
class MubSet:
    bases: list[Basis] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.bases[0].dim

    def __len__(self):
        return len(self.bases)

    def __getitem__(self, i) -> Basis:
        return self.bases[i]

    def __iter__(self):
        return iter(self.bases)


@dataclass
class UnbiasednessReport:
    max_deviation: float
    worst_pair: tuple[int, int]
    passed: bool
    tol: float
    max_orthonormality_error: float = 0.0


def weyl_pair(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Shift U and clock V with UV = qVU, q = exp(2 pi i/d).

    V = diag(1, q, q^2, ...) and U|j> = |j-1 mod d>.
    """
    if int(d) != d or d < 2:
        raise ValueError(f"need d >= 2, got {d!r}")
    d = int(d)
    q = np.exp(2j * np.pi / d)
    v = np.diag(q ** np.arange(d))
    u = np.roll(np.eye(d, dtype=complex), -1, axis=0)
    return u, v


def fourier_matrix(d: int) -> np.ndarray:
    if int(d) != d or d < 2:
        raise ValueError(f"need d >= 2, got {d!r}")
    j = np.arange(int(d))
    return np.exp(2j * np.pi * np.outer(j, j) / d) / np.sqrt(d)


def standard_mubs3() -> MubSet:
    """The four spin-1 MUBs in the textbook listing order.

    Basis 0 is the S_z basis, basis 1 its Fourier transform; bases 2 and 3
    are obtained from basis 1 by diag(1, w, 1) and its square.
    """
    w, wc = OMEGA, OMEGA.conjugate()
    rows = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[1, 1, 1], [1, w, wc], [1, wc, w]],
        [[1, w, 1], [1, wc, wc], [1, 1, w]],
        [[1, wc, 1], [1, 1, wc], [1, w, w]],
    ]
    labels = ["computational", "fourier", "twisted", "twisted-conjugate"]
    bases = []
    for i, (vecs, label) in enumerate(zip(rows, labels)):
        m = np.array(vecs, dtype=complex).T
        if i > 0:
            m = m / np.sqrt(3)
        bases.append(Basis(m, label))
    return MubSet(bases)


def null_state(direction) -> np.ndarray:
    """Spin-1 eigenstate of n.S with eigenvalue 0: n_x|x> + n_y|y> + n_z|z>."""
    n = as_direction(direction)
    return n.x * KET_X + n.y * KET_Y + n.z * KET_Z


def null_basis(directions, tol: float = DERIVED_TOL) -> Basis:
    dirs = [as_direction(d) for d in directions]
    if len(dirs) != 3:
        raise ValueError("need exactly three directions")
    for a, b in itertools.combinations(dirs, 2):
        if abs(a.dot(b)) > tol:
            raise ValueError("null basis directions must be mutually orthogonal")
    return Basis(np.column_stack([null_state(n) for n in dirs]), "null")


def two_axis_operator(i, j, tol: float = DERIVED_TOL) -> np.ndarray:
    """S_i^2 - S_j^2 for spin 1; its eigenvectors are null states of i, j and i x j."""
    i, j = as_direction(i), as_direction(j)
    if abs(i.dot(j)) > tol:
        raise ValueError("two-axis operator needs orthogonal axes")
    ops = spin_operators(1)
    si, sj = spin_along(ops, i), spin_along(ops, j)
    return si @ si - sj @ sj


def position_operator() -> np.ndarray:
    """X = S_x^2 - S_y^2, diagonal in the Cartesian null basis."""
    return two_axis_operator(X, Y)


def momentum_operator(axis=TETRAHEDRAL_AXIS) -> np.ndarray:
    """Spin projection onto a tetrahedral axis."""
    axis = as_direction(axis)
    if abs(abs(axis.z) - 1 / np.sqrt(3)) > 1e-9 or abs(abs(axis.x) - abs(axis.y)) > 1e-9:
        raise ValueError("momentum axis must be one of (+-1, +-1, +-1)/sqrt(3)")
    return spin_along(spin_operators(1), axis)


def cartesian_basis() -> Basis:
    return null_basis([X, Y, Z])


def _overlap_deviation(a: Basis, b: Basis) -> tuple[float, tuple[int, int]]:
    dev = np.abs(np.abs(a.vectors.conj().T @ b.vectors) ** 2 - 1 / a.dim)
    j, k = np.unravel_index(np.argmax(dev), dev.shape)
    return float(dev[j, k]), (int(j), int(k))


def unbiasedness(a: Basis, b: Basis, tol: float = DERIVED_TOL) -> UnbiasednessReport:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    # worst_pair indexes the offending vectors (a_j, b_k)
    dev, pair = _overlap_deviation(a, b)
    return UnbiasednessReport(dev, pair, dev <= tol, tol)


def mub_set_valid(mubs: MubSet, tol: float = DERIVED_TOL) -> UnbiasednessReport:
    if len(mubs) < 2:
        raise ValueError("need at least two bases")
    dims = {b.dim for b in mubs}
    if len(dims) != 1:
        raise ValueError(f"bases have mixed dimensions {sorted(dims)}")
    # worst_pair indexes the offending bases
    worst, pair = -1.0, (0, 1)
    for i, j in itertools.combinations(range(len(mubs)), 2):
        dev, _ = _overlap_deviation(mubs[i], mubs[j])
        if dev > worst:
            worst, pair = dev, (i, j)
    ortho = max(b.orthonormality_error() for b in mubs)
    return UnbiasednessReport(worst, pair, worst <= tol and ortho <= tol, tol, ortho)


def is_eigenbasis(op: np.ndarray, basis: Basis, tol: float = DERIVED_TOL) -> bool:
    """True when every basis vector is an eigenvector of op."""
    for v in basis:
        ov = op @ v
        if np.linalg.norm(ov - np.vdot(v, ov) * v) > tol:
            return False
    return True


def permutation_up_to_phase(a: Basis, b: Basis, tol: float = DERIVED_TOL) -> list[int] | None:
    """Index map k -> j with a[k] ~ b[j] up to phase, or None if the bases differ."""
    if a.dim != b.dim:
        return None
    mod = np.abs(a.vectors.conj().T @ b.vectors)
    perm = []
    for k in range(a.dim):
        j = int(np.argmax(mod[k]))
        if mod[k, j] < 1 - tol:
            return None
        perm.append(j)
    if sorted(perm) != list(range(a.dim)):
        return None
    return perm
