import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from spinchan.measurement import BELL_LABELS, BELL_SIGNS
from spinchan.protocols import (
    BELL_CORRECTIONS,
    Correction,
    perpendicular_axis,
    protocol_discord_swap,
    protocol_known_qubit,
    protocol_unknown_qubit,
    protocol_unknown_qudit,
)
from spinchan.spin import HalfInteger, spin_operators
from spinchan.states import BlochVector, equivalent_qudit, maximally_mixed

SPINS = [HalfInteger(t) for t in range(1, 11)]


def twin_matrix(s, vec):
    """(1/(2S+1))(1 + sum_i v_i S_i / S) built directly from the operators."""
    unit = spin_operators(s).unit_vector()
    m = np.eye(s.dim, dtype=complex)
    for v, u in zip(vec, unit):
        m = m + v * u
    return m / s.dim


class TestUnknownQubitTransfer:
    @pytest.mark.parametrize("twice", [1, 3, 6, 10])
    @pytest.mark.parametrize("alpha", [-0.3, 0.2, 0.5, 0.8])
    def test_all_branches_reach_the_closed_form(self, twice, alpha):
        rng = np.random.default_rng(twice)
        s = HalfInteger(twice)
        for p in (BlochVector(0, 0, 1), BlochVector(0.6, 0, 0.8)):
            tr = protocol_unknown_qubit(p, alpha, s, seed=int(rng.integers(1 << 32)))
            assert tr.max_branch_residual < 1e-10
            for b in tr.branches:
                assert abs(b.probability - 0.25) < 1e-12
            want = twin_matrix(s, alpha * p.vec)
            assert np.max(np.abs(tr.expected.matrix - want)) < 1e-12

    def test_collapsed_states_before_correction(self):
        # each Bell outcome flips the transferred components opposite to its
        # correlator signs
        from spinchan.linalg import tensor_product
        from spinchan.measurement import bell_projectors, measure
        from spinchan.states import DensityMatrix, equivalent_werner, qubit_state

        s = HalfInteger(4)
        alpha = 0.7
        p = BlochVector(0.3, -0.5, 0.6)
        joint = DensityMatrix(
            tensor_product(qubit_state(p).matrix, equivalent_werner(alpha, s).matrix),
            (2, 2, s.dim),
        )
        records = measure(joint, bell_projectors().on(0, 1), keep=(2,))
        for rec in records:
            signs = np.array([-c for c in BELL_SIGNS[rec.label]])
            want = twin_matrix(s, alpha * signs * p.vec)
            assert np.max(np.abs(rec.post_state.matrix - want)) < 1e-12

    def test_noiseless_channel_erases_the_input(self):
        s = HalfInteger(4)
        tr = protocol_unknown_qubit(BlochVector(0, 0, 1), 0.0, s, seed=0)
        assert np.max(np.abs(tr.output_state.matrix - maximally_mixed(s.dim).matrix)) < 1e-12

    def test_output_polarisation_reads_back_rescaled(self):
        from spinchan.states import retrieval_observable

        rng = np.random.default_rng(51)
        s = HalfInteger(5)
        alpha = 0.6
        v = rng.normal(size=3)
        v /= np.linalg.norm(v) * 1.25
        p = BlochVector.from_sequence(v)
        tr = protocol_unknown_qubit(p, alpha, s, seed=4)
        axes = np.eye(3)
        got = [tr.output_state.expectation(retrieval_observable(s, ax)) for ax in axes]
        assert np.max(np.abs(np.asarray(got) - alpha * p.vec)) < 1e-10

    def test_corrupted_correction_table_is_caught(self):
        bad = dict(BELL_CORRECTIONS)
        bad["phi_minus"] = Correction((0.0, 0.0, 1.0), np.pi)  # wrong axis
        tr = protocol_unknown_qubit(
            BlochVector(0.4, 0.3, 0.2), 0.8, HalfInteger(2), seed=0, corrections=bad
        )
        assert tr.max_branch_residual > 1e-3

    def test_sampling_is_deterministic(self):
        p = BlochVector(0.1, 0.2, 0.3)
        a = protocol_unknown_qubit(p, 0.5, HalfInteger(2), seed=99)
        b = protocol_unknown_qubit(p, 0.5, HalfInteger(2), seed=99)
        assert a.outcome == b.outcome
        assert a.outcome in BELL_LABELS


class TestKnownQubitTransfer:
    def test_plus_branch_needs_no_correction(self):
        s = HalfInteger(2)
        tr = protocol_known_qubit((0, 0, 1.0), 0.5, s, seed=1)
        plus = next(b for b in tr.branches if b.outcome == "plus")
        assert plus.residual < 1e-12
        assert abs(plus.probability - 0.5) < 1e-12

    def test_frozen_diagonal_spin_one(self):
        tr = protocol_known_qubit((0, 0, 1.0), 0.5, HalfInteger(2), seed=1)
        assert_allclose(
            np.diag(tr.output_state.matrix).real, [1 / 6, 1 / 3, 1 / 2], atol=1e-12
        )

    @pytest.mark.parametrize("k", range(10))
    def test_random_directions(self, k):
        rng = np.random.default_rng(100 + k)
        m = rng.normal(size=3)
        m /= np.linalg.norm(m)
        tr = protocol_known_qubit(m, 0.65, HalfInteger(5), seed=k)
        assert tr.max_branch_residual < 1e-10
        for b in tr.branches:
            assert abs(b.probability - 0.5) < 1e-12
        want = twin_matrix(HalfInteger(5), -0.65 * m)
        assert np.max(np.abs(tr.expected.matrix - want)) < 1e-12

    def test_perpendicular_axis_is_perpendicular(self):
        rng = np.random.default_rng(61)
        for _ in range(20):
            m = rng.normal(size=3)
            m /= np.linalg.norm(m)
            axis = perpendicular_axis(m)
            assert abs(axis @ m) < 1e-9
            assert abs(np.linalg.norm(axis) - 1) < 1e-12

    def test_perpendicular_axis_x_fallback(self):
        assert_allclose(perpendicular_axis(np.array([1.0, 0, 0])), [0, 1, 0])
        assert_allclose(perpendicular_axis(np.array([-1.0, 0, 0])), [0, 1, 0])

    def test_non_unit_direction_rejected(self):
        from spinchan.errors import InvalidParameterError

        with pytest.raises(InvalidParameterError):
            protocol_known_qubit((0, 0, 0.5), 0.5, HalfInteger(2), seed=0)


class TestUnknownQuditTransfer:
    @pytest.mark.parametrize("s", SPINS, ids=str)
    def test_branch_states_and_probabilities(self, s):
        rng = np.random.default_rng(s.twice)
        v = rng.normal(size=3)
        v = v / np.linalg.norm(v) * 0.8
        p = BlochVector.from_sequence(v)
        alpha = 0.7
        tr = protocol_unknown_qudit(p, alpha, s, seed=0)
        spin = s.value
        probs = {b.outcome: b.probability for b in tr.branches}
        assert abs(probs["plus"] - (spin + 1) / (2 * spin + 1)) < 1e-12
        assert abs(probs["minus"] - spin / (2 * spin + 1)) < 1e-12
        assert tr.max_branch_residual < 1e-10

    def test_branch_closed_forms(self):
        s = HalfInteger(4)
        alpha = 0.6
        p = BlochVector(0.2, -0.1, 0.5)
        for seed in range(8):  # hit both branches
            tr = protocol_unknown_qudit(p, alpha, s, seed=seed)
            factor = -alpha / 3 if tr.outcome == "plus" else alpha * (s.value + 1) / (3 * s.value)
            want = twin_matrix(s, factor * p.vec)
            assert np.max(np.abs(tr.output_state.matrix - want)) < 1e-12

    def test_retrieval_recovers_the_scaled_input(self):
        rng = np.random.default_rng(71)
        for s in SPINS[:6]:
            v = rng.normal(size=3)
            v = v / np.linalg.norm(v) * rng.uniform(0.2, 1.0)
            p = BlochVector.from_sequence(v)
            alpha = 0.75
            for seed in (0, 3):
                tr = protocol_unknown_qudit(p, alpha, s, seed=seed)
                got = np.asarray(tr.retrieval["recovered"])
                assert np.max(np.abs(got - alpha * p.vec)) < 1e-10

    def test_noiseless_channel_gives_mixed_both_branches(self):
        s = HalfInteger(3)
        tr = protocol_unknown_qudit(BlochVector(0, 0, 0.9), 0.0, s, seed=1)
        assert tr.max_branch_residual < 1e-12
        assert np.max(np.abs(tr.output_state.matrix - maximally_mixed(s.dim).matrix)) < 1e-12


class TestDiscordSwap:
    @pytest.mark.parametrize("twice", [1, 2, 4, 6])
    def test_every_outcome_lands_on_the_swapped_state(self, twice):
        s = HalfInteger(twice)
        tr = protocol_discord_swap(0.8, 0.5, s, seed=2)
        assert tr.max_branch_residual < 1e-10
        for b in tr.branches:
            assert abs(b.probability - 0.25) < 1e-12

    def test_singlet_branch_needs_no_correction(self):
        tr = protocol_discord_swap(0.7, 0.6, HalfInteger(2), seed=0)
        singlet = next(b for b in tr.branches if b.outcome == "psi_minus")
        assert singlet.residual < 1e-12
        assert BELL_CORRECTIONS["psi_minus"] is None

    def test_collapsed_correlators_before_correction(self):
        # each outcome flips the qudit-qudit correlator components opposite
        # to its qubit correlator signs, as for the single-qubit transfer
        from spinchan.linalg import permute_subsystems, tensor_product
        from spinchan.measurement import bell_projectors, four_party_contract
        from spinchan.states import DensityMatrix, equivalent_werner

        s = HalfInteger(3)
        alpha, beta = 0.8, 0.5
        ab = equivalent_werner(alpha, s)
        cd = DensityMatrix(
            permute_subsystems(equivalent_werner(beta, s).matrix, (2, s.dim), (1, 0)),
            (s.dim, 2),
        )
        unit = spin_operators(s).unit_vector()
        for label, proj in bell_projectors().items():
            _, post = four_party_contract(ab, cd, proj)
            want = np.eye(s.dim**2, dtype=complex)
            for sign, u in zip(BELL_SIGNS[label], unit):
                want = want - alpha * beta * (-sign) * tensor_product(u, u)
            want /= s.dim**2
            assert np.max(np.abs(post.matrix - want)) < 1e-12

    def test_swapped_correlator_strength(self):
        s = HalfInteger(2)
        alpha, beta = 0.8, 0.5
        tr = protocol_discord_swap(alpha, beta, s, seed=5)
        unit = spin_operators(s).unit_vector()
        from spinchan.linalg import tensor_product

        corr = sum(tensor_product(u, u) for u in unit)
        got = tr.output_state.expectation(corr)
        want = -alpha * beta * np.trace(corr @ corr).real / s.dim**2
        assert abs(got - want) < 1e-10

    def test_uncorrelated_channels_swap_to_product_mixed(self):
        s = HalfInteger(2)
        tr = protocol_discord_swap(0.0, 0.0, s, seed=0)
        assert np.max(np.abs(tr.output_state.matrix - np.eye(s.dim**2) / s.dim**2)) < 1e-12

    def test_corrupted_correction_table_is_caught(self):
        bad = dict(BELL_CORRECTIONS)
        bad["psi_plus"] = None
        tr = protocol_discord_swap(0.9, 0.8, HalfInteger(2), seed=0, corrections=bad)
        assert tr.max_branch_residual > 1e-3


class TestTranscripts:
    def test_json_round_trip(self, tmp_path):
        p = BlochVector(0.6, 0.0, 0.8)
        tr = protocol_unknown_qubit(p, 0.8, HalfInteger(4), seed=7)
        path = tmp_path / "transcript.json"
        tr.write(path, include_state=True)
        doc = json.loads(path.read_text())
        assert doc["protocol"] == "A"
        assert doc["spin_twice"] == 4
        assert doc["seed"] == 7
        assert doc["rng"] == "pcg64"
        assert doc["bloch"] == [0.6, 0.0, 0.8]
        assert abs(doc["probability"] - 0.25) < 1e-12
        assert doc["residual"] < 1e-10
        assert len(doc["branches"]) == 4
        assert set(doc["metrics"]) == {"fidelity", "hs_distance", "relative_distance"}
        mat = np.array([[complex(re, im) for re, im in row] for row in doc["output_state"]])
        assert np.max(np.abs(mat - tr.output_state.matrix)) < 1e-15

    def test_beta_and_direction_only_when_meaningful(self, tmp_path):
        tr_b = protocol_known_qubit((0, 1.0, 0), 0.4, HalfInteger(2), seed=0)
        doc_b = tr_b.to_json_dict()
        assert "beta" not in doc_b and "bloch" not in doc_b
        assert doc_b["direction"] == [0.0, 1.0, 0.0]
        tr_d = protocol_discord_swap(0.4, 0.3, HalfInteger(2), seed=0)
        doc_d = tr_d.to_json_dict()
        assert doc_d["beta"] == 0.3
        assert "bloch" not in doc_d and "direction" not in doc_d

    def test_performance_metrics_close_to_ideal_for_strong_channel(self):
        p = BlochVector(0, 0, 1)
        s = HalfInteger(18)
        tr = protocol_unknown_qubit(p, 0.9, s, seed=3)
        ref = equivalent_qudit(s, p)
        from spinchan.metrics import fidelity, hs_distance

        assert abs(tr.metrics.fidelity - fidelity(tr.output_state, ref)) < 1e-12
        assert abs(tr.metrics.hs_distance - hs_distance(tr.output_state, ref)) < 1e-12
        assert tr.metrics.relative_distance > 0
