"""Spin operators for arbitrary spin and the matrix functions built on them.

States and operators are plain complex numpy arrays. Amplitudes are ordered by
S_z eigenvalue m = s, s-1, ..., -s throughout the package, and hbar = 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

STRUCT_TOL = 1e-12
DERIVED_TOL = 1e-10
DIRECTION_SLACK = 1e-6


def spin_dim(s: float) -> int:
    """Hilbert-space dimension 2s+1; rejects anything that is not a half-integer >= 0."""
    two_s = 2 * float(s)
    if two_s < 0 or abs(two_s - round(two_s)) > 1e-12:
        raise ValueError(f"spin must be a nonnegative half-integer, got {s!r}")
    return int(round(two_s)) + 1


def spin_from_dim(d: int) -> float:
    if int(d) != d or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")
    return (int(d) - 1) / 2


@dataclass(frozen=True)
class Direction:
    """Unit vector in real 3-space."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        v = np.array([self.x, self.y, self.z], dtype=float)
        norm = np.linalg.norm(v)
        if not np.isfinite(norm) or abs(norm - 1.0) > DIRECTION_SLACK:
            raise ValueError(f"direction must have unit norm, got |n| = {norm:.6g}")
        v = v / norm
        object.__setattr__(self, "x", float(v[0]))
        object.__setattr__(self, "y", float(v[1]))
        object.__setattr__(self, "z", float(v[2]))

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "Direction":
        """theta is the colatitude from z, phi the azimuth from x."""
        return cls(
            np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)
        )

    @classmethod
    def normalized(cls, v) -> "Direction":
        """Build from any nonzero 3-vector, rescaling it first."""
        v = np.asarray(v, dtype=float)
        norm = np.linalg.norm(v)
        if v.shape != (3,) or norm == 0:
            raise ValueError("need a nonzero 3-vector")
        return cls(*(v / norm))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @property
    def theta(self) -> float:
        return float(np.arccos(np.clip(self.z, -1.0, 1.0)))

    @property
    def phi(self) -> float:
        return float(np.arctan2(self.y, self.x))

    def dot(self, other: "Direction") -> float:
        return float(self.vector @ as_direction(other).vector)


X = Direction(1.0, 0.0, 0.0)
Y = Direction(0.0, 1.0, 0.0)
Z = Direction(0.0, 0.0, 1.0)


def as_direction(d) -> Direction:
    if isinstance(d, Direction):
        return d
    v = np.asarray(d, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"direction needs 3 components, got shape {v.shape}")
    return Direction(*v)


def spin_operators(s: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (S_x, S_y, S_z) for spin s built from the raising operator."""
    d = spin_dim(s)
    s = (d - 1) / 2
    m = s - np.arange(d)
    # <m+1|S_+|m> sits one row above the diagonal in descending-m order
    raising = np.diag(np.sqrt(s * (s + 1) - m[1:] * (m[1:] + 1)), 1).astype(complex)
    lowering = raising.conj().T
    sx = (raising + lowering) / 2
    sy = (raising - lowering) / 2j
    sz = np.diag(m).astype(complex)
    return sx, sy, sz


def spin_along(ops, direction) -> np.ndarray:
    """n . S for a unit direction n."""
    n = as_direction(direction)
    sx, sy, sz = ops
    return n.x * sx + n.y * sy + n.z * sz


def is_hermitian(a: np.ndarray, tol: float = STRUCT_TOL) -> bool:
    a = np.asarray(a)
    scale = max(1.0, np.linalg.norm(a))
    return a.ndim == 2 and a.shape[0] == a.shape[1] and np.linalg.norm(a - a.conj().T) <= tol * scale


def is_unitary(a: np.ndarray, tol: float = DERIVED_TOL) -> bool:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return np.linalg.norm(a.conj().T @ a - np.eye(a.shape[0])) <= tol


def exp_i_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) via the eigendecomposition of a hermitian h."""
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h):
        raise ValueError("exp_i_hermitian needs a hermitian matrix")
    h = (h + h.conj().T) / 2
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def rotation(ops, direction, angle: float) -> np.ndarray:
    """exp(-i angle n.S)."""
    return exp_i_hermitian(spin_along(ops, direction), angle)


def quadratic_evolution(ops, direction, t: float) -> np.ndarray:
    """One-axis twisting exp(-i t (n.S)^2)."""
    sn = spin_along(ops, direction)
    return exp_i_hermitian(sn @ sn, t)


def normalize_state(psi, tol: float = DIRECTION_SLACK) -> np.ndarray:
    """Check that psi is a unit vector (within tol) and return it renormalized."""
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.size == 0:
        raise ValueError("a state must be a nonempty 1-d amplitude array")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state is not normalized: |psi| = {norm:.9g}")
    return psi / norm


class PhaseMatch(NamedTuple):
    matches: bool
    phase: complex
    overlap: float


def equal_up_to_phase(a, b, tol: float = DERIVED_TOL) -> PhaseMatch:
    """Compare two states or two unitaries modulo a global phase.

    Vectors match when |<a|b>| >= 1 - tol, matrices when |tr(a^dag b)|/d >= 1 - tol.
    The returned phase p satisfies b ~ p a.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.ndim == 1:
        inner = np.vdot(a, b)
        overlap = abs(inner)
    elif a.ndim == 2:
        inner = np.trace(a.conj().T @ b)
        overlap = abs(inner) / a.shape[0]
    else:
        raise ValueError("expected a vector or a square matrix")
    phase = inner / abs(inner) if abs(inner) > 0 else 1.0 + 0j
    return PhaseMatch(bool(overlap >= 1 - tol), complex(phase), float(overlap))
