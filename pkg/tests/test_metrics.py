import numpy as np
import pytest

from spinchan.errors import DimensionMismatchError
from spinchan.linalg import tensor_product
from spinchan.metrics import (
    asymptotics_check,
    channel_distance_scale,
    disturbance_witness,
    fidelity,
    hs_distance,
    qubit_dephased,
    relative_distance,
)
from spinchan.spin import HalfInteger
from spinchan.states import (
    BlochVector,
    DensityMatrix,
    equivalent_qudit,
    equivalent_werner,
    maximally_mixed,
    qubit_state,
)

Z = BlochVector(0.0, 0.0, 1.0)


def diagonal_fidelity(s, a, b):
    """Closed form for two commuting twins polarised along z with weights a, b."""
    m = s.value - np.arange(s.dim)
    lam = (1 + a * m / s.value) / s.dim
    mu = (1 + b * m / s.value) / s.dim
    return float(np.sum(np.sqrt(lam * mu)) ** 2)


class TestFidelity:
    def test_identity(self):
        rho = equivalent_qudit(HalfInteger(5), BlochVector(0.2, 0.1, -0.4))
        assert abs(fidelity(rho, rho) - 1.0) < 1e-12

    def test_mixed_state_benchmark_spin_twenty(self):
        s = HalfInteger(40)
        f = fidelity(equivalent_qudit(s, Z), maximally_mixed(s.dim))
        assert abs(f - 0.876) <= 0.001

    @pytest.mark.parametrize("twice", [1, 2, 5, 9, 18])
    @pytest.mark.parametrize("alpha", [-0.3, 0.2, 0.5, 0.9])
    def test_commuting_closed_form(self, twice, alpha):
        s = HalfInteger(twice)
        got = fidelity(equivalent_qudit(s, Z), equivalent_qudit(s, Z.scaled(alpha)))
        assert abs(got - diagonal_fidelity(s, 1.0, alpha)) < 1e-10

    def test_symmetry(self):
        rng = np.random.default_rng(81)
        a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        rho1 = a @ a.conj().T
        rho1 = DensityMatrix(rho1 / np.trace(rho1).real, (6,))
        b = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        rho2 = b @ b.conj().T
        rho2 = DensityMatrix(rho2 / np.trace(rho2).real, (6,))
        assert abs(fidelity(rho1, rho2) - fidelity(rho2, rho1)) < 1e-12

    def test_in_unit_interval(self):
        rho1 = equivalent_qudit(HalfInteger(3), BlochVector(0, 0, 1))
        rho2 = equivalent_qudit(HalfInteger(3), BlochVector(0, 0, -1))
        f = fidelity(rho1, rho2)
        assert -1e-9 <= f <= 1 + 1e-9

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(DimensionMismatchError):
            fidelity(maximally_mixed(2), maximally_mixed(3))


class TestHsDistance:
    def test_identity(self):
        rho = equivalent_werner(0.4, HalfInteger(3))
        assert hs_distance(rho, rho) == 0.0

    @pytest.mark.parametrize("twice", [1, 2, 5, 9, 20])
    @pytest.mark.parametrize("alpha", [-0.3, 0.2, 0.5, 0.9])
    def test_twin_pair_closed_form(self, twice, alpha):
        s = HalfInteger(twice)
        got = hs_distance(equivalent_qudit(s, Z), equivalent_qudit(s, Z.scaled(alpha)))
        assert abs(got - abs(1 - alpha) * channel_distance_scale(s)) < 1e-10

    @pytest.mark.parametrize("twice", [1, 4, 9, 20])
    def test_distance_to_the_mixed_state(self, twice):
        s = HalfInteger(twice)
        got = hs_distance(equivalent_qudit(s, Z), maximally_mixed(s.dim))
        assert abs(got - channel_distance_scale(s)) < 1e-10

    def test_triangle_inequality_spot(self):
        s = HalfInteger(4)
        a = equivalent_qudit(s, BlochVector(0, 0, 1))
        b = equivalent_qudit(s, BlochVector(0, 0, -0.5))
        c = maximally_mixed(s.dim)
        assert hs_distance(a, b) <= hs_distance(a, c) + hs_distance(c, b) + 1e-12


class TestRelativeDistance:
    def test_zero_alpha(self):
        assert relative_distance(0.0, HalfInteger(5)) == 0.0

    def test_matches_numeric_difference(self):
        s = HalfInteger(18)
        alpha = 0.9
        ref = equivalent_qudit(s, Z)
        d = hs_distance(ref, equivalent_qudit(s, Z.scaled(alpha)))
        d0 = hs_distance(ref, maximally_mixed(s.dim))
        assert abs(relative_distance(alpha, s) - (d0 - d)) < 1e-12

    def test_strictly_decreasing_in_spin(self):
        values = [relative_distance(0.7, HalfInteger(t)) for t in range(1, 51)]
        assert all(b < a for a, b in zip(values, values[1:]))


class TestAsymptotics:
    def test_large_spin_limit_gap(self):
        rep = asymptotics_check(0.9, HalfInteger(100))
        assert rep.limit_gap < 0.02

    def test_branch_ratio_is_exact(self):
        for twice in (2, 9, 40):
            s = HalfInteger(twice)
            rep = asymptotics_check(0.5, s)
            assert abs(rep.branch_ratio - (s.value + 1) / s.value) < 1e-12

    def test_branch_gap_shrinks(self):
        g40 = asymptotics_check(0.9, HalfInteger(40)).branch_gap
        g100 = asymptotics_check(0.9, HalfInteger(100)).branch_gap
        assert g100 < g40

    def test_zero_alpha_all_zero(self):
        rep = asymptotics_check(0.0, HalfInteger(40))
        assert rep.relative_distance == 0.0
        assert rep.branch_plus_distance == 0.0
        assert rep.branch_minus_distance == 0.0
        assert rep.limit_gap == 0.0
        assert rep.branch_gap == 0.0


class TestDisturbanceWitness:
    def test_product_state_is_undisturbed(self):
        rng = np.random.default_rng(91)
        v = rng.normal(size=3)
        v /= np.linalg.norm(v) * 1.5
        rho = DensityMatrix(
            tensor_product(
                qubit_state(BlochVector.from_sequence(v)).matrix,
                equivalent_qudit(HalfInteger(4), BlochVector(0.1, 0.2, 0.3)).matrix,
            ),
            (2, 5),
        )
        value, _ = disturbance_witness(rho)
        assert value < 1e-8

    @pytest.mark.parametrize("alpha,twice", [(0.3, 2), (0.5, 4), (0.8, 8)])
    def test_channel_closed_form(self, alpha, twice):
        s = HalfInteger(twice)
        value, _ = disturbance_witness(equivalent_werner(alpha, s))
        assert abs(value - alpha * channel_distance_scale(s)) < 1e-6

    def test_direction_independence_on_the_channel(self):
        rng = np.random.default_rng(92)
        ch = equivalent_werner(0.6, HalfInteger(4))
        values = []
        for _ in range(8):
            m = rng.normal(size=3)
            m /= np.linalg.norm(m)
            values.append(float(np.linalg.norm(ch.matrix - qubit_dephased(ch, m))))
        assert max(values) - min(values) < 1e-8

    def test_positive_throughout_the_separable_range(self):
        for alpha in (-0.6, 0.2, 0.8):
            s = HalfInteger(8)  # separable for |alpha| <= 0.8
            value, _ = disturbance_witness(equivalent_werner(alpha, s))
            assert value > 1e-6

    def test_qubit_first_subsystem_required(self):
        from spinchan.linalg import permute_subsystems

        ch = equivalent_werner(0.5, HalfInteger(2))
        flipped = DensityMatrix(
            permute_subsystems(ch.matrix, (2, 3), (1, 0)), (3, 2)
        )
        with pytest.raises(DimensionMismatchError):
            disturbance_witness(flipped)
