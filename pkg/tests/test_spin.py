import numpy as np
import pytest
from numpy.testing import assert_allclose

from spinchan.errors import CapacityError, ContractViolationError, InvalidParameterError
from spinchan.spin import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    SPIN_CAP_ENV,
    HalfInteger,
    scs_resolution_residual,
    spin_coherent_state,
    spin_operators,
    wigner_rotation,
)
from spinchan.sphere import SphereGrid

ALL_SPINS = [HalfInteger(t) for t in range(1, 51)]


class TestHalfInteger:
    def test_value_and_dim(self):
        s = HalfInteger(5)
        assert s.value == 2.5
        assert s.dim == 6
        assert str(s) == "5/2"
        assert str(HalfInteger(4)) == "2"

    @pytest.mark.parametrize("value,twice", [(0.5, 1), (1, 2), (2.5, 5), ("3", 6)])
    def test_from_value(self, value, twice):
        assert HalfInteger.from_value(value).twice == twice

    @pytest.mark.parametrize("bad", [0, -1, 1.5])
    def test_rejects_bad_twice(self, bad):
        with pytest.raises(InvalidParameterError):
            HalfInteger(bad)

    def test_from_value_rejects_non_half_integer(self):
        with pytest.raises(InvalidParameterError):
            HalfInteger.from_value(0.3)

    def test_ordering(self):
        assert HalfInteger(1) < HalfInteger(2) <= HalfInteger(2)


class TestSpinOperators:
    def test_half_spin_is_pauli_over_two(self):
        ops = spin_operators(HalfInteger(1))
        assert_allclose(ops.sx, PAULI_X / 2)
        assert_allclose(ops.sy, PAULI_Y / 2)
        assert_allclose(ops.sz, PAULI_Z / 2)

    def test_spin_one_matrices(self):
        ops = spin_operators(HalfInteger(2))
        assert_allclose(ops.sz, np.diag([1.0, 0.0, -1.0]))
        tri = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]]) / np.sqrt(2)
        assert_allclose(ops.sx, tri, atol=1e-15)

    def test_sx_squared_trace_spin_three_halves(self):
        ops = spin_operators(HalfInteger(3))
        assert_allclose(np.trace(ops.sx @ ops.sx).real, 5.0, atol=1e-12)

    @pytest.mark.parametrize("s", ALL_SPINS, ids=str)
    def test_commutators_and_casimir(self, s):
        sx, sy, sz = spin_operators(s).vector()
        assert np.max(np.abs(sx @ sy - sy @ sx - 1j * sz)) < 1e-12
        assert np.max(np.abs(sy @ sz - sz @ sy - 1j * sx)) < 1e-12
        assert np.max(np.abs(sz @ sx - sx @ sz - 1j * sy)) < 1e-12
        casimir = sx @ sx + sy @ sy + sz @ sz
        want = s.value * (s.value + 1) * np.eye(s.dim)
        assert np.max(np.abs(casimir - want)) < 1e-10

    @pytest.mark.parametrize("s", ALL_SPINS[::7], ids=str)
    def test_unit_spin_trace_orthogonality(self, s):
        unit = spin_operators(s).unit_vector()
        norm = (s.value + 1) * (2 * s.value + 1) / (3 * s.value)
        for i in range(3):
            for j in range(3):
                want = norm if i == j else 0.0
                assert abs(np.trace(unit[i] @ unit[j]).real - want) < 1e-10

    def test_capacity_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv(SPIN_CAP_ENV, "10")
        with pytest.raises(CapacityError):
            spin_operators(HalfInteger(12))
        spin_operators(HalfInteger(10))

    def test_default_capacity(self, monkeypatch):
        monkeypatch.delenv(SPIN_CAP_ENV, raising=False)
        with pytest.raises(CapacityError):
            spin_operators(HalfInteger(102))


class TestWignerRotation:
    def test_z_rotation_half_spin(self):
        got = wigner_rotation(HalfInteger(1), (0, 0, 1), np.pi)
        assert_allclose(got, np.diag([-1j, 1j]), atol=1e-14)

    def test_x_flip_conjugates_y_component(self):
        s = HalfInteger(4)
        u = wigner_rotation(s, (1, 0, 0), np.pi)
        sy = spin_operators(s).sy
        assert np.max(np.abs(u.conj().T @ sy @ u + sy)) < 1e-12

    def test_full_turn_is_minus_identity_for_half_spin(self):
        got = wigner_rotation(HalfInteger(1), (0, 1, 0), 2 * np.pi)
        assert_allclose(got, -np.eye(2), atol=1e-14)

    def test_conjugation_matches_vector_rotation(self):
        rng = np.random.default_rng(21)
        for s in (HalfInteger(1), HalfInteger(3), HalfInteger(6)):
            axis = rng.normal(size=3)
            axis /= np.linalg.norm(axis)
            angle = rng.uniform(0, 2 * np.pi)
            u = wigner_rotation(s, axis, angle)
            ops = spin_operators(s).vector()
            c, sn = np.cos(angle), np.sin(angle)
            cross = np.array(
                [[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]]
            )
            rot = c * np.eye(3) + sn * cross + (1 - c) * np.outer(axis, axis)
            for i in range(3):
                got = u.conj().T @ ops[i] @ u
                want = sum(rot[i, j] * ops[j] for j in range(3))
                assert np.max(np.abs(got - want)) < 1e-10

    def test_non_unit_axis_rejected(self):
        with pytest.raises(ContractViolationError):
            wigner_rotation(HalfInteger(2), (0, 0, 2), np.pi)


class TestSpinCoherentState:
    def test_north_pole_is_top_basis_state(self):
        scs = spin_coherent_state(HalfInteger(6), 0.0, 0.0)
        want = np.zeros(7)
        want[0] = 1.0
        assert_allclose(scs.amplitudes, want, atol=1e-14)

    def test_orthogonal_direction_overlap_half_spin(self):
        z = spin_coherent_state(HalfInteger(1), 0.0, 0.0)
        x = spin_coherent_state(HalfInteger(1), np.pi / 2, 0.0)
        assert abs(abs(np.vdot(z.amplitudes, x.amplitudes)) ** 2 - 0.5) < 1e-12

    def test_overlap_law_on_polar_grid_spin_two(self):
        s = HalfInteger(4)
        z = spin_coherent_state(s, 0.0, 0.0)
        for theta in np.linspace(0, np.pi, 20):
            n = spin_coherent_state(s, theta, 0.0)
            got = abs(np.vdot(z.amplitudes, n.amplitudes)) ** 2
            assert abs(got - ((1 + np.cos(theta)) / 2) ** 4) < 1e-12

    def test_overlap_law_random_pairs(self):
        rng = np.random.default_rng(22)
        for s in ALL_SPINS[::5]:
            t1, p1 = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
            t2, p2 = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
            a = spin_coherent_state(s, t1, p1)
            b = spin_coherent_state(s, t2, p2)
            got = abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2
            want = ((1 + a.direction @ b.direction) / 2) ** s.twice
            assert abs(got - want) < 1e-10

    def test_polarisation_points_along_the_direction(self):
        rng = np.random.default_rng(23)
        for s in (HalfInteger(1), HalfInteger(5), HalfInteger(16)):
            theta, phi = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
            scs = spin_coherent_state(s, theta, phi)
            unit = spin_operators(s).unit_vector()
            got = np.array(
                [np.vdot(scs.amplitudes, u @ scs.amplitudes).real for u in unit]
            )
            assert np.max(np.abs(got - scs.direction)) < 1e-10


class TestResolutionOfIdentity:
    def test_half_spin_small_grid(self):
        got = scs_resolution_residual(HalfInteger(1), SphereGrid.gauss_legendre(3, 6))
        assert got < 1e-12

    def test_spin_two_default_grid(self):
        got = scs_resolution_residual(HalfInteger(4), SphereGrid.for_spin(HalfInteger(4)))
        assert got < 1e-12

    def test_undersized_grid_fails_loudly(self):
        got = scs_resolution_residual(HalfInteger(4), SphereGrid.gauss_legendre(2, 4))
        assert got > 1e-3
