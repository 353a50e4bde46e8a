"""Generating and measuring the spin-1 MUBs with rotation and twisting pulses.

The Hadamard-like map comes from one-axis twisting about a tetrahedral axis,
the remaining bases from 2pi/3 twisting pulses about z. Measurement in any of
the four bases is a pulse sequence followed by ideal S_z (Stern-Gerlach)
sampling.

Randomness: every sampling call builds ``numpy.random.default_rng(seed)``.
Calls that need several independent streams (one per basis, say) spawn them
with ``numpy.random.SeedSequence(seed).spawn(n)`` in basis order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .mub import Basis, MubSet, fourier_matrix, permutation_up_to_phase, standard_mubs3
from .spin import (
    DERIVED_TOL,
    Direction,
    Z,
    as_direction,
    is_unitary,
    normalize_state,
    quadratic_evolution,
    rotation,
    spin_operators,
)
from .squeezing import null_direction

TWIST_TIME = 2 * np.pi / 3
SPIN1 = spin_operators(1)


def twisting_hadamard(phi: float) -> np.ndarray:
    """Explicit complex Hadamard produced by 2pi/3 twisting about null_direction(phi)."""
    e = np.exp(1j * np.pi / 3)
    p1, p2 = np.exp(1j * phi), np.exp(2j * phi)
    m = np.array(
        [
            [e, p1.conjugate(), p2.conjugate()],
            [p1, e, -p1.conjugate()],
            [p2, -p1, e],
        ]
    )
    return m / np.sqrt(3)


def twisting_unitary(phi: float, t: float = TWIST_TIME) -> np.ndarray:
    """exp(-i t S_m^2) with m = null_direction(phi)."""
    return quadratic_evolution(SPIN1, null_direction(phi), t)


def is_complex_hadamard(m: np.ndarray, tol: float = 1e-12) -> bool:
    m = np.asarray(m)
    return is_unitary(m) and bool(np.abs(np.abs(m) - 1 / np.sqrt(m.shape[0])).max() <= tol)


@dataclass
class Pulse:
    """One control step. ``duration`` is an angle for rotations, a time for twisting."""

    kind: str
    axis: Optional[Direction]
    duration: float
    matrix: np.ndarray = field(repr=False, default=None)
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("rotation", "twisting", "fixed-unitary"):
            raise ValueError(f"unknown pulse kind {self.kind!r}")
        if self.kind != "fixed-unitary":
            self.axis = as_direction(self.axis)
            if self.matrix is None:
                self.matrix = self.resolve()
        elif self.matrix is None:
            raise ValueError("fixed-unitary pulses need a matrix")
        self.matrix = np.asarray(self.matrix, dtype=complex)

    def resolve(self) -> np.ndarray:
        """Recompute the unitary from the pulse description."""
        if self.kind == "rotation":
            return rotation(SPIN1, self.axis, self.duration)
        if self.kind == "twisting":
            return quadratic_evolution(SPIN1, self.axis, self.duration)
        return np.asarray(self.matrix, dtype=complex)

    @classmethod
    def rotate(cls, axis, angle: float, label: str = "") -> "Pulse":
        return cls("rotation", as_direction(axis), float(angle), label=label)

    @classmethod
    def twist(cls, axis, t: float, label: str = "") -> "Pulse":
        return cls("twisting", as_direction(axis), float(t), label=label)


def hadamard_pulse(phi: float, inverse: bool = False) -> Pulse:
    t = -TWIST_TIME if inverse else TWIST_TIME
    return Pulse.twist(null_direction(phi), t, label="hadamard-inverse" if inverse else "hadamard")


def z_twist_pulse() -> Pulse:
    return Pulse.twist(Z, TWIST_TIME, label="z-twist")


@dataclass
class Circuit:
    """Pulses in time order; ``net`` applies the first pulse first."""

    pulses: list[Pulse] = field(default_factory=list)
    twist_count: int = 0

    @property
    def net(self) -> np.ndarray:
        out = np.eye(3, dtype=complex)
        for p in self.pulses:
            out = p.matrix @ out
        return out

    def resolved_net(self) -> np.ndarray:
        out = np.eye(3, dtype=complex)
        for p in self.pulses:
            out = p.resolve() @ out
        return out


def generated_mub_set(phi: float) -> MubSet:
    """{computational, H, T H, T^2 H} with H = twisting_hadamard(phi), T the z twist."""
    h = twisting_hadamard(phi)
    t = quadratic_evolution(SPIN1, Z, TWIST_TIME)
    return MubSet(
        [
            Basis(np.eye(3, dtype=complex), "computational"),
            Basis(h, "hadamard"),
            Basis(t @ h, "hadamard-twist1"),
            Basis(t @ t @ h, "hadamard-twist2"),
        ]
    )


def _check_index(name: str, value: int, n: int):
    if int(value) != value or not 0 <= value < n:
        raise IndexError(f"{name} must be in 0..{n - 1}, got {value!r}")


def preparation_circuit(basis_index: int, phi: float) -> Circuit:
    _check_index("basis_index", basis_index, 4)
    if basis_index == 0:
        return Circuit()
    twists = basis_index - 1
    return Circuit([hadamard_pulse(phi)] + [z_twist_pulse() for _ in range(twists)], twists)


def prepare(basis_index: int, state_index: int, phi: float) -> tuple[Circuit, np.ndarray]:
    """Pulse sequence taking |state_index> of S_z to that vector of the generated basis."""
    _check_index("state_index", state_index, 3)
    circuit = preparation_circuit(basis_index, phi)
    return circuit, circuit.net[:, state_index]


def measurement_circuit(basis_index: int, phi: float, tol: float = DERIVED_TOL) -> Circuit:
    """Pulses mapping vector k of generated basis ``basis_index`` onto |k>.

    Tries zero, one and two z twists before the inverse Hadamard and keeps the
    first sequence that works; the choice is recorded in ``twist_count``.
    """
    _check_index("basis_index", basis_index, 4)
    if basis_index == 0:
        return Circuit()
    target = generated_mub_set(phi)[basis_index]
    for n in range(3):
        circuit = Circuit([z_twist_pulse() for _ in range(n)] + [hadamard_pulse(phi, inverse=True)], n)
        mapped = np.abs(circuit.net @ target.vectors)
        if np.abs(mapped - np.eye(3)).max() <= tol:
            return circuit
    raise RuntimeError(f"no twist count maps basis {basis_index} onto the computational basis")


@dataclass
class Counts:
    shots: int
    outcomes: np.ndarray
    seed: Optional[int] = None
    basis: Optional[int] = None

    def __post_init__(self):
        self.outcomes = np.asarray(self.outcomes, dtype=int)
        if self.outcomes.sum() != self.shots:
            raise ValueError("outcome counts do not add up to shots")

    @property
    def frequencies(self) -> np.ndarray:
        return self.outcomes / self.shots


def outcome_probabilities(state, basis: Basis) -> np.ndarray:
    psi = normalize_state(state)
    b = basis.vectors if isinstance(basis, Basis) else np.asarray(basis)
    p = np.abs(b.conj().T @ psi) ** 2
    return p / p.sum()


def born_sample(state, basis: Basis, shots: int, seed=None, rng=None, basis_index=None) -> Counts:
    """Ideal projective measurement repeated ``shots`` times."""
    if int(shots) != shots or shots < 1:
        raise ValueError(f"shots must be a positive integer, got {shots!r}")
    p = outcome_probabilities(state, basis)
    if rng is None:
        rng = np.random.default_rng(seed)
    return Counts(int(shots), rng.multinomial(int(shots), p), seed, basis_index)


COMPUTATIONAL = Basis(np.eye(3, dtype=complex), "computational")


def measure(state, basis_index: int, phi: float, shots: int, seed=None, rng=None) -> Counts:
    """Measurement circuit for ``basis_index`` followed by S_z sampling."""
    psi = normalize_state(state)
    net = measurement_circuit(basis_index, phi).net
    return born_sample(net @ psi, COMPUTATIONAL, shots, seed=seed, rng=rng, basis_index=basis_index)


def measure_all(state, phi: float, shots: int, seed: int) -> list[Counts]:
    """Counts in all four generated bases, one spawned stream per basis."""
    streams = np.random.SeedSequence(seed).spawn(4)
    out = []
    for b, ss in enumerate(streams):
        c = measure(state, b, phi, shots, rng=np.random.default_rng(ss))
        c.seed = seed
        out.append(c)
    return out


def exact_probabilities(state, mubs: MubSet) -> np.ndarray:
    return np.array([outcome_probabilities(state, b) for b in mubs])


def probabilities_from_counts(counts) -> np.ndarray:
    return np.array([c.frequencies for c in counts])


@dataclass
class Reconstruction:
    """Linear-inversion estimate plus its eigenvalue-clipped projection."""

    raw: np.ndarray
    projected: np.ndarray
    min_eigenvalue: float

    @property
    def physical(self) -> bool:
        return self.min_eigenvalue >= -1e-8


def project_to_state(rho: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh((rho + rho.conj().T) / 2)
    w = np.clip(w, 0, None)
    return (v * (w / w.sum())) @ v.conj().T


def tomography(probabilities, mubs: MubSet) -> Reconstruction:
    """rho = sum_b sum_k p_k^(b) |b_k><b_k| - I from a complete set of d+1 MUBs."""
    p = np.asarray(probabilities, dtype=float)
    d = mubs.dim
    if len(mubs) != d + 1:
        raise ValueError(f"tomography needs {d + 1} bases in dimension {d}, got {len(mubs)}")
    if p.shape != (d + 1, d):
        raise ValueError(f"probability table must be {d + 1}x{d}, got {p.shape}")
    bad = np.abs(p.sum(axis=1) - 1) > 1e-6
    if bad.any():
        raise ValueError(f"probability rows {np.flatnonzero(bad).tolist()} do not sum to 1")
    rho = -np.eye(d, dtype=complex)
    for row, basis in zip(p, mubs):
        v = basis.vectors
        rho += (v * row) @ v.conj().T
    rho = (rho + rho.conj().T) / 2
    return Reconstruction(rho, project_to_state(rho), float(np.linalg.eigvalsh(rho)[0]))


def trace_distance(rho, sigma) -> float:
    return float(0.5 * np.abs(np.linalg.eigvalsh(np.asarray(rho) - np.asarray(sigma))).sum())


@dataclass
class QkdResult:
    rounds: int
    n_bases: int
    sifted: int
    errors: int
    seed: int
    phi: float
    noise: float

    @property
    def sifted_fraction(self) -> float:
        return self.sifted / self.rounds

    @property
    def qber(self) -> float:
        return self.errors / self.sifted if self.sifted else 0.0


def qkd_sift(rounds: int, n_bases: int, phi: float = 0.0, seed: int = 0, noise: float = 0.0) -> QkdResult:
    """Qutrit prepare-and-measure key sifting over an ideal or depolarizing channel.

    Two bases: computational and Hadamard. Four bases: the full generated set.
    Random draws come from one generator in the order: Alice's bases, Alice's
    symbols, Bob's bases, Bob's uniforms.
    """
    if int(rounds) != rounds or rounds < 1:
        raise ValueError("rounds must be a positive integer")
    if n_bases not in (2, 4):
        raise ValueError("n_bases must be 2 or 4")
    if not 0 <= noise <= 1:
        raise ValueError("noise must be a probability")
    # table[a, k, b, j] = P(Bob sees j | Alice sent vector k of basis a, Bob measures b)
    table = np.empty((n_bases, 3, n_bases, 3))
    for b in range(n_bases):
        net = measurement_circuit(b, phi).net
        for a in range(n_bases):
            for k in range(3):
                _, psi = prepare(a, k, phi)
                table[a, k, b] = np.abs(net @ psi) ** 2
    table[table < 1e-14] = 0.0
    table = (1 - noise) * table / table.sum(axis=-1, keepdims=True) + noise / 3

    rng = np.random.default_rng(seed)
    a = rng.integers(n_bases, size=rounds)
    k = rng.integers(3, size=rounds)
    b = rng.integers(n_bases, size=rounds)
    u = rng.random(rounds)
    cdf = np.cumsum(table[a, k, b], axis=1)
    outcome = np.minimum((u[:, None] >= cdf).sum(axis=1), 2)
    sifted = a == b
    errors = sifted & (outcome != k)
    return QkdResult(int(rounds), n_bases, int(sifted.sum()), int(errors.sum()), seed, phi, noise)


@dataclass
class FourierCompletion:
    twist_time: float
    rotation_angle: float
    permutation: list[int]
    overlap: float


def fourier_completion(phi: float, tol: float = DERIVED_TOL) -> FourierCompletion:
    """z twist time t and z rotation angle a with R_z(a) exp(-i t S_z^2) H(phi) ~ F.

    Both pulses are diagonal, so the product equals diag(1, e^{i(t+a)}, e^{2ia})
    up to a global phase. Matching the first Hadamard column to each Fourier
    column fixes the two phases; the candidate that sends every column onto a
    Fourier column (up to phase) is returned. ``permutation[k]`` is the Fourier
    column reached by Hadamard column k and ``overlap`` the smallest |<f|g>|.
    """
    h = twisting_hadamard(phi)
    f = fourier_matrix(3)
    fourier = Basis(f)
    c = h[:, 0] / h[0, 0]
    for j0 in range(3):
        g = f[:, j0] / f[0, j0]
        rel = g / c
        a_phase, b_phase = np.angle(rel[1]), np.angle(rel[2])
        angle = np.mod(b_phase / 2, np.pi)
        t = np.mod(a_phase - angle, 2 * np.pi)
        u = rotation(SPIN1, Z, angle) @ quadratic_evolution(SPIN1, Z, t)
        mapped = Basis(u @ h)
        perm = permutation_up_to_phase(mapped, fourier, tol)
        if perm is not None:
            overlap = float(min(abs(np.vdot(f[:, perm[k]], mapped[k])) for k in range(3)))
            return FourierCompletion(float(t), float(angle), perm, overlap)
    raise RuntimeError("no diagonal completion found")


def match_standard(mubs: MubSet, tol: float = DERIVED_TOL) -> list[Optional[int]]:
    """For each basis, the index of the textbook basis it equals (as a set up to phase)."""
    standard = standard_mubs3()
    out = []
    for basis in mubs:
        hit = None
        for i, ref in enumerate(standard):
            if permutation_up_to_phase(basis, ref, tol) is not None:
                hit = i
                break
        out.append(hit)
    return out
