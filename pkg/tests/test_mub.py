import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spin1mub.mub import (
    KET_X,
    KET_Y,
    KET_Z,
    OMEGA,
    TETRAHEDRAL_ANGLE,
    TETRAHEDRAL_AXIS,
    Basis,
    MubSet,
    cartesian_basis,
    fourier_matrix,
    is_eigenbasis,
    momentum_operator,
    mub_set_valid,
    null_basis,
    null_state,
    permutation_up_to_phase,
    position_operator,
    standard_mubs3,
    two_axis_operator,
    unbiasedness,
    weyl_pair,
)
from spin1mub.spin import Direction, X, Y, Z, equal_up_to_phase, rotation, spin_along, spin_operators
from spin1mub.squeezing import alpha_state, null_direction

SPIN1 = spin_operators(1)
R3 = np.sqrt(3)


def null_space_oracle(direction):
    """Zero-eigenvalue vector of n.S from an SVD, independent of the Cartesian kets."""
    _, sv, vh = np.linalg.svd(spin_along(SPIN1, direction))
    assert sv[-1] < 1e-12
    return vh[-1].conj()


def random_direction(rng):
    v = rng.normal(size=3)
    return Direction.normalized(v)


def orthogonal_triples():
    angles = st.floats(0, 2 * np.pi)
    return st.tuples(angles, angles, angles).map(_rotated_frame)


def _rotated_frame(abc):
    a, b, c = abc
    rz = lambda t: np.array([[np.cos(t), -np.sin(t), 0], [np.sin(t), np.cos(t), 0], [0, 0, 1]])
    ry = lambda t: np.array([[np.cos(t), 0, np.sin(t)], [0, 1, 0], [-np.sin(t), 0, np.cos(t)]])
    r = rz(a) @ ry(b) @ rz(c)
    return [Direction.normalized(r[:, i]) for i in range(3)]


class TestWeylPair:
    def test_d3_commutation(self):
        u, v = weyl_pair(3)
        assert np.linalg.norm(u @ v - OMEGA * v @ u) <= 1e-12

    @pytest.mark.parametrize("d", [2, 3, 4, 5, 7])
    def test_commutation_any_d(self, d):
        u, v = weyl_pair(d)
        q = np.exp(2j * np.pi / d)
        assert np.linalg.norm(u @ v - q * v @ u) <= 1e-12

    def test_d3_eigenvalues(self):
        u, v = weyl_pair(3)
        roots = np.sort_complex(np.array([1, OMEGA, OMEGA**2]).round(12))
        for op in (u, v, u @ v, u @ v @ v):
            w = np.sort_complex(np.linalg.eigvals(op).round(12))
            np.testing.assert_allclose(w, roots, atol=1e-10)

    def test_d2_involutions(self):
        u, v = weyl_pair(2)
        np.testing.assert_allclose(u, [[0, 1], [1, 0]], atol=1e-15)
        np.testing.assert_allclose(v, np.diag([1, -1]), atol=1e-15)
        np.testing.assert_allclose(u @ u, np.eye(2), atol=1e-15)

    def test_rejects_small(self):
        with pytest.raises(ValueError):
            weyl_pair(1)

    def test_standard_bases_are_eigenbases(self):
        # with UV = qVU the twisted bases pair with UV^2 and UV in that order
        u, v = weyl_pair(3)
        s = standard_mubs3()
        ops = [v, u, u @ v @ v, u @ v]
        for basis, op in zip(s, ops):
            assert is_eigenbasis(op, basis)
        assert not is_eigenbasis(u @ v, s[2])


class TestStandardSet:
    def test_listed_vectors(self):
        s = standard_mubs3()
        np.testing.assert_allclose(s[1][0], np.ones(3) / R3)
        np.testing.assert_allclose(s[2][0], np.array([1, OMEGA, 1]) / R3)
        np.testing.assert_allclose(s[3][2], np.array([1, OMEGA, OMEGA]) / R3)
        np.testing.assert_array_equal(s[0].vectors, np.eye(3))

    def test_cross_overlaps(self):
        s = standard_mubs3()
        for i in range(4):
            assert s[i].is_orthonormal(1e-12)
            for j in range(i + 1, 4):
                p = np.abs(s[i].vectors.conj().T @ s[j].vectors) ** 2
                np.testing.assert_allclose(p, 1 / 3, atol=1e-12)

    def test_valid(self):
        rep = mub_set_valid(standard_mubs3(), 1e-12)
        assert rep.passed and rep.max_deviation <= 1e-12

    def test_twist_maps_between_bases(self):
        s = standard_mubs3()
        t = np.diag([1, OMEGA, 1])
        for src, dst in ((1, 2), (2, 3)):
            for k in range(3):
                assert equal_up_to_phase(t @ s[src][k], s[dst][k]).matches

    def test_z_rotation_permutes(self):
        s = standard_mubs3()
        for k in (1, 2):
            u = rotation(SPIN1, Z, 2 * np.pi * k / 3)
            for b in range(1, 4):
                perm = permutation_up_to_phase(s[b].transformed(u), s[b])
                assert perm is not None and perm != [0, 1, 2]


class TestFourier:
    def test_d3_first_column(self):
        np.testing.assert_allclose(fourier_matrix(3)[:, 0], np.ones(3) / R3)

    def test_d3_reproduces_fourier_basis(self):
        f = Basis(fourier_matrix(3))
        assert permutation_up_to_phase(f, standard_mubs3()[1]) == [0, 1, 2]

    def test_d2(self):
        f = fourier_matrix(2)
        np.testing.assert_allclose(f, f.T)
        np.testing.assert_allclose(np.abs(f), 1 / np.sqrt(2))

    @pytest.mark.parametrize("d", range(2, 12))
    def test_unitary(self, d):
        f = fourier_matrix(d)
        assert np.linalg.norm(f.conj().T @ f - np.eye(d)) <= 1e-12

    def test_rejects(self):
        with pytest.raises(ValueError):
            fourier_matrix(1)


class TestNullStates:
    def test_axes(self):
        np.testing.assert_allclose(null_state(Z), [0, 1, 0])
        assert equal_up_to_phase(null_state(X), np.array([1, 0, -1]) / np.sqrt(2)).matches
        assert equal_up_to_phase(null_state(Y), np.array([1j, 0, 1j]) / np.sqrt(2)).matches

    def test_against_null_space_solve(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            n = random_direction(rng)
            psi = null_state(n)
            assert np.linalg.norm(spin_along(SPIN1, n) @ psi) <= 1e-10
            assert equal_up_to_phase(psi, null_space_oracle(n)).matches

    @settings(max_examples=100, deadline=None)
    @given(st.floats(0, np.pi), st.floats(0, 2 * np.pi))
    def test_real_combinations_are_null(self, theta, phi):
        n = Direction.from_angles(theta, phi)
        psi = (np.sin(theta) * np.cos(phi) * KET_X + np.sin(theta) * np.sin(phi) * KET_Y
               + np.cos(theta) * KET_Z)
        assert np.linalg.norm(spin_along(SPIN1, n) @ psi) <= 1e-10

    def test_tetrahedral_null_state_is_shifted_alpha_state(self):
        # oracle: direct null-space solve for the axis at alpha = pi/4
        alpha = np.pi / 4
        psi = null_space_oracle(null_direction(alpha))
        assert equal_up_to_phase(psi, alpha_state("unpolarized", alpha + np.pi)).matches
        assert not equal_up_to_phase(psi, alpha_state("unpolarized", alpha)).matches

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError):
            null_state([0.0, 0.0, 2.0])


class TestNullBasis:
    def test_cartesian(self):
        b = cartesian_basis()
        assert b.is_orthonormal(1e-12)

    @settings(max_examples=50, deadline=None)
    @given(orthogonal_triples())
    def test_orthonormal(self, dirs):
        assert null_basis(dirs).is_orthonormal(1e-10)

    def test_unbiased_to_tetrahedral_eigenbasis(self):
        _, vecs = np.linalg.eigh(spin_along(SPIN1, TETRAHEDRAL_AXIS))
        rep = unbiasedness(cartesian_basis(), Basis(vecs), 1e-10)
        assert rep.passed

    @pytest.mark.parametrize("signs", [(1, 1), (1, -1), (-1, 1), (-1, -1)])
    def test_all_tetrahedral_axes(self, signs):
        axis = Direction.normalized([1, signs[0], signs[1]])
        _, vecs = np.linalg.eigh(momentum_operator(axis))
        assert unbiasedness(cartesian_basis(), Basis(vecs)).passed

    def test_non_orthogonal(self):
        with pytest.raises(ValueError):
            null_basis([X, Direction.normalized([1, 1, 0]), Z])

    def test_momentum_axis_validated(self):
        with pytest.raises(ValueError):
            momentum_operator(Z)

    def test_tetrahedral_angle(self):
        assert abs(np.arccos(TETRAHEDRAL_AXIS.vector @ [0, 0, -1]) - TETRAHEDRAL_ANGLE) < 1e-12
        assert abs(np.degrees(TETRAHEDRAL_ANGLE) - 54.7356) < 1e-4


class TestTwoAxis:
    def test_position_operator_eigenpairs(self):
        xop = position_operator()
        # S_i^2 = I - |i><i| for spin 1, so X = |y><y| - |x><x|
        hand = np.outer(KET_Y, KET_Y.conj()) - np.outer(KET_X, KET_X.conj())
        np.testing.assert_allclose(xop, hand, atol=1e-12)
        for ket, lam in ((KET_X, -1), (KET_Y, 1), (KET_Z, 0)):
            assert np.linalg.norm(xop @ ket - lam * ket) <= 1e-10
        np.testing.assert_allclose(np.linalg.eigvalsh(xop), [-1, 0, 1], atol=1e-10)

    def test_other_representation(self):
        np.testing.assert_allclose(np.linalg.eigvalsh(two_axis_operator(Y, Z)), [-1, 0, 1], atol=1e-10)
        assert is_eigenbasis(two_axis_operator(Y, Z), cartesian_basis())

    @settings(max_examples=30, deadline=None)
    @given(orthogonal_triples())
    def test_eigenvectors_are_null_states(self, dirs):
        op = two_axis_operator(dirs[0], dirs[1])
        assert is_eigenbasis(op, null_basis(dirs))
        np.testing.assert_allclose(np.linalg.eigvalsh(op), [-1, 0, 1], atol=1e-10)

    def test_non_orthogonal(self):
        with pytest.raises(ValueError):
            two_axis_operator(X, Direction.normalized([1, 1, 0]))


class TestUnbiasedness:
    def test_pairs(self):
        s = standard_mubs3()
        assert unbiasedness(s[0], s[1], 1e-12).passed
        assert unbiasedness(s[2], s[3], 1e-12).passed

    def test_self(self):
        s = standard_mubs3()
        rep = unbiasedness(s[1], s[1])
        assert not rep.passed
        assert abs(rep.max_deviation - 2 / 3) < 1e-12

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            unbiasedness(Basis(np.eye(2)), Basis(np.eye(3)))

    def test_twisted_fourier_set(self):
        f = Basis(fourier_matrix(3))
        t = np.diag([1, OMEGA, 1])
        c1 = f[0]
        # hand value |<c1|T c1>|^2 = |2 + w|^2 / 9
        assert abs(abs(np.vdot(c1, t @ c1)) ** 2 - abs(2 + OMEGA) ** 2 / 9) < 1e-15
        assert abs(abs(2 + OMEGA) ** 2 / 9 - 1 / 3) < 1e-15
        s = MubSet([Basis(np.eye(3)), f, f.transformed(t), f.transformed(t @ t)])
        assert mub_set_valid(s).passed

    def test_repeated_basis_fails(self):
        s = standard_mubs3()
        rep = mub_set_valid(MubSet([s[0], s[1], s[1]]))
        assert not rep.passed and rep.worst_pair == (1, 2)

    def test_non_orthonormal_member_fails(self):
        s = standard_mubs3()
        bad = Basis(np.column_stack([s[1][0], s[1][0], s[1][1]]))
        assert not mub_set_valid(MubSet([s[0], bad])).passed
