"""Mean spin, variances and squeezing diagnostics for pure spin states."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .spin import (
    DERIVED_TOL,
    Direction,
    as_direction,
    normalize_state,
    spin_along,
    spin_from_dim,
    spin_operators,
)

DEGENERATE_MEAN = 1e-8
SQUEEZE_MARGIN = 1e-12


def _prepare(state, s):
    psi = normalize_state(state)
    if s is None:
        s = spin_from_dim(psi.size)
    ops = spin_operators(s)
    if ops[0].shape[0] != psi.size:
        raise ValueError(f"state has {psi.size} amplitudes but spin {s} needs {ops[0].shape[0]}")
    return psi, s, ops


def _expect(psi, op) -> complex:
    return np.vdot(psi, op @ psi)


def mean_spin(state, s=None) -> np.ndarray:
    """(<S_x>, <S_y>, <S_z>); the spin is inferred from the state length if omitted."""
    psi, _, ops = _prepare(state, s)
    return np.array([_expect(psi, op).real for op in ops])


def covariance(state, s=None) -> np.ndarray:
    """Symmetrized covariance 1/2<{S_i, S_j}> - <S_i><S_j>."""
    psi, _, ops = _prepare(state, s)
    vecs = [op @ psi for op in ops]
    mean = np.array([np.vdot(psi, v).real for v in vecs])
    second = np.array([[np.vdot(a, b).real for b in vecs] for a in vecs])
    # Re<S_i psi|S_j psi> is already the symmetrized second moment
    return second - np.outer(mean, mean)


def variance_along(state, direction, s=None) -> float:
    psi, _, ops = _prepare(state, s)
    sn = spin_along(ops, direction)
    v = sn @ psi
    m = np.vdot(psi, v).real
    return float(np.vdot(v, v).real - m * m)


@dataclass
class SpinStats:
    mean: np.ndarray
    covariance: np.ndarray
    variances: dict = field(default_factory=dict)

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.mean))


def spin_stats(state, s=None, directions=()) -> SpinStats:
    """Mean, covariance and variances along any extra named directions.

    ``directions`` is a mapping name -> direction or an iterable of directions;
    in the latter case the keys are the direction tuples.
    """
    psi, s, _ = _prepare(state, s)
    mean = mean_spin(psi, s)
    cov = covariance(psi, s)
    items = directions.items() if isinstance(directions, dict) else (
        (tuple(as_direction(d).vector), d) for d in directions
    )
    variances = {k: float(as_direction(d).vector @ cov @ as_direction(d).vector) for k, d in items}
    return SpinStats(mean, cov, variances)


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    # representative with y >= 0, then z >= 0, then x >= 0
    for c in (1, 2, 0):
        if abs(v[c]) > 1e-12:
            return v if v[c] > 0 else -v
    return v


@dataclass
class SqueezingReport:
    mean: np.ndarray
    min_variance: float
    max_variance: float
    min_direction: Direction
    threshold: float
    squeezed: bool
    degenerate_mean: bool


def transverse_frame(mean: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal pair spanning the plane orthogonal to ``mean``.

    The first vector is the in-plane (xy) perpendicular oriented to y >= 0 when
    the mean is not along z; the second is orthogonal to both, oriented to z >= 0.
    """
    m = np.asarray(mean, dtype=float)
    m = m / np.linalg.norm(m)
    e1 = np.cross([0.0, 0.0, 1.0], m)
    if np.linalg.norm(e1) < 1e-9:
        e1 = np.array([0.0, 1.0, 0.0])
    e1 = _canonical_sign(e1 / np.linalg.norm(e1))
    e2 = np.cross(m, e1)
    e2 = e2 / np.linalg.norm(e2)
    if e2[2] < 0:
        e2 = -e2
    return e1, e2


def squeezing_report(state, s=None) -> SqueezingReport:
    """Smallest variance orthogonal to the mean spin, compared with s/2.

    With a vanishing mean spin (|<S>| < 1e-8) there is no preferred plane and
    the minimum is taken over the whole sphere.
    """
    psi, s, _ = _prepare(state, s)
    mean = mean_spin(psi, s)
    cov = covariance(psi, s)
    degenerate = bool(np.linalg.norm(mean) < DEGENERATE_MEAN)
    if degenerate:
        w, v = np.linalg.eigh(cov)
        vmin, vmax, dmin = w[0], w[-1], v[:, 0]
    else:
        e1, e2 = transverse_frame(mean)
        frame = np.column_stack([e1, e2])
        w, v = np.linalg.eigh(frame.T @ cov @ frame)
        vmin, vmax, dmin = w[0], w[-1], frame @ v[:, 0]
    threshold = s / 2
    return SqueezingReport(
        mean=mean,
        min_variance=float(vmin),
        max_variance=float(vmax),
        min_direction=Direction.normalized(_canonical_sign(dmin)),
        threshold=threshold,
        squeezed=bool(vmin < threshold - SQUEEZE_MARGIN),
        degenerate_mean=degenerate,
    )


def scan_transverse_variance(state, s=None, step: float = 1e-4) -> tuple[float, np.ndarray]:
    """Brute-force minimum of the variance over directions orthogonal to the mean.

    Evaluates <S_n^2> - <S_n>^2 on an angular grid and refines the best grid
    point with a three-point parabola. Meant as a cross-check, not for speed.
    """
    psi, s, ops = _prepare(state, s)
    mean = np.array([_expect(psi, op).real for op in ops])
    e1, e2 = transverse_frame(mean)
    a = [op @ psi for op in ops]
    ve1 = sum(c * v for c, v in zip(e1, a))
    ve2 = sum(c * v for c, v in zip(e2, a))

    def var(theta):
        theta = np.atleast_1d(theta)
        c, sn = np.cos(theta)[:, None], np.sin(theta)[:, None]
        vecs = c * ve1[None, :] + sn * ve2[None, :]
        second = np.einsum("ij,ij->i", vecs.conj(), vecs).real
        first = (vecs @ psi.conj()).real
        return second - first**2

    grid = np.arange(0.0, np.pi, step)
    vals = var(grid)
    i = int(np.argmin(vals))
    y0, y1, y2 = var(np.array([grid[i] - step, grid[i], grid[i] + step]))
    denom = y0 - 2 * y1 + y2
    shift = 0.5 * (y0 - y2) / denom if denom > 0 else 0.0
    theta = grid[i] + shift * step
    best = float(var(theta)[0])
    return best, np.cos(theta) * e1 + np.sin(theta) * e2


def alpha_state(kind: str, alpha: float) -> np.ndarray:
    """Spin-1 states unbiased to the S_z basis with <S_y> = 0.

    ``polarized``: (1, e^{ia}, 1)/sqrt(3), mean spin along x.
    ``unpolarized``: (1, e^{ia}, -e^{2ia})/sqrt(3), zero mean spin.
    """
    if kind == "polarized":
        v = [1, np.exp(1j * alpha), 1]
    elif kind == "unpolarized":
        v = [1, np.exp(1j * alpha), -np.exp(2j * alpha)]
    else:
        raise ValueError(f"kind must be 'polarized' or 'unpolarized', got {kind!r}")
    return np.array(v, dtype=complex) / np.sqrt(3)


def null_direction(alpha: float) -> Direction:
    """Tetrahedral axis (sqrt2 cos a, sqrt2 sin a, 1)/sqrt3.

    Its twisting generator produces the complex Hadamard of
    ``protocol.twisting_hadamard``. Note the zero-projection state of this axis
    is ``alpha_state("unpolarized", alpha + pi)``, not the one at ``alpha``.
    """
    return Direction(
        np.sqrt(2 / 3) * np.cos(alpha), np.sqrt(2 / 3) * np.sin(alpha), 1 / np.sqrt(3)
    )


class UncertaintyCheck(NamedTuple):
    lhs: float
    rhs: float
    satisfied: bool


def uncertainty_check(state, i, j, k, s=None, tol: float = DERIVED_TOL) -> UncertaintyCheck:
    """Var(S_i) Var(S_j) >= |<S_k>|^2 / 4 for mutually orthogonal i, j, k.

    The bound is only tight when k lies along the mean spin.
    """
    i, j, k = (as_direction(d) for d in (i, j, k))
    for a, b in ((i, j), (j, k), (i, k)):
        if abs(a.dot(b)) > tol:
            raise ValueError("uncertainty check needs mutually orthogonal directions")
    psi, s, ops = _prepare(state, s)
    lhs = variance_along(psi, i, s) * variance_along(psi, j, s)
    rhs = 0.25 * abs(_expect(psi, spin_along(ops, k)).real) ** 2
    return UncertaintyCheck(float(lhs), float(rhs), bool(lhs >= rhs - tol))


@dataclass
class FourierStateStats:
    d: int
    mean_x: float
    mean_x_direct: float
    mean_y_direct: float
    var_z: float
    var_z_direct: float
    var_y: float
    var_y_direct: float
    var_y_bound: float
    coherent_bound: float
    squeeze_threshold: float


def fourier_state_stats(d: int) -> FourierStateStats:
    """Statistics of the flat state (1, ..., 1)/sqrt(d) for spin (d-1)/2.

    Each closed-form sum is paired with the direct matrix expectation.
    ``var_y_bound`` is the intermediate upper bound obtained by replacing
    sqrt(j(d-j)(j+1)(d-j-1)) with j(d-j-1); it collapses to (d-1)/4 = s/2.
    """
    if int(d) != d or d < 2:
        raise ValueError(f"need d >= 2, got {d!r}")
    d = int(d)
    s = (d - 1) / 2
    j = np.arange(1, d)
    jj = np.arange(1, d - 1)
    mean_x = float(np.sum(np.sqrt(j * (d - j))) / d)
    var_z = (d * d - 1) / 12
    first = float(np.sum(j * (d - j)) / (2 * d))
    var_y = first - float(np.sum(np.sqrt(jj * (d - jj) * (jj + 1) * (d - jj - 1))) / (2 * d))
    var_y_bound = first - float(np.sum(jj * (d - jj - 1)) / (2 * d))

    psi = np.ones(d, dtype=complex) / np.sqrt(d)
    mean = mean_spin(psi, s)
    cov = covariance(psi, s)
    return FourierStateStats(
        d=d,
        mean_x=mean_x,
        mean_x_direct=float(mean[0]),
        mean_y_direct=float(mean[1]),
        var_z=var_z,
        var_z_direct=float(cov[2, 2]),
        var_y=var_y,
        var_y_direct=float(cov[1, 1]),
        var_y_bound=var_y_bound,
        coherent_bound=s,
        squeeze_threshold=s / 2,
    )
