import itertools
import math

import numpy as np
import pytest

from squidchain.dynamics import pm_coordinates
from squidchain.hilbert import StateVector, fidelity
from squidchain.protocol import (
    ClusterSpec,
    StabilizerSpec,
    XBAR,
    ZBAR,
    amplitude_pairs,
    chain_stabilizers,
    entanglement_entropy,
    generate_cluster,
    ideal_cluster,
    initial_state,
    persistency_probe,
    stabilizer_expectations,
    state_from_amplitude_pairs,
)

from oracles import entropy_bits, reduced_density


class TestClusterSpec:
    def test_default_order_left_to_right(self):
        spec = ClusterSpec.chain(4)
        assert spec.pair_order == ((1, 2), (2, 3), (3, 4))

    def test_custom_order(self):
        spec = ClusterSpec.chain(3, [(2, 3), (1, 2)])
        assert spec.pair_order == ((2, 3), (1, 2))

    def test_rejects_missing_pair(self):
        with pytest.raises(ValueError, match="exactly once"):
            ClusterSpec(3, ((1, 2), (1, 2)))

    def test_rejects_non_chain_pair(self):
        with pytest.raises(ValueError, match="exactly once"):
            ClusterSpec(3, ((1, 3), (2, 3)))

    def test_rejects_out_of_range_n(self):
        with pytest.raises(ValueError):
            ClusterSpec(1)
        with pytest.raises(ValueError):
            ClusterSpec(13)


class TestInitialState:
    def test_single_qubit_is_zero_state(self):
        st = initial_state(1)
        assert np.array_equal(st.amplitudes, np.array([1.0, 0.0], dtype=complex))

    def test_two_qubits_computational(self):
        st = initial_state(2)
        assert np.array_equal(st.amplitudes, np.array([1, 0, 0, 0], dtype=complex))

    def test_two_qubits_pm_coordinates(self):
        assert pm_coordinates(initial_state(2)) == pytest.approx(
            np.full(4, 0.5), abs=1e-15
        )

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            initial_state(0)
        with pytest.raises(ValueError):
            initial_state(13)


class TestGenerateCluster:
    def test_two_qubit_state(self):
        st = generate_cluster(ClusterSpec.chain(2))
        assert pm_coordinates(st) == pytest.approx(
            np.array([1, 1, 1, -1]) / 2, abs=1e-15
        )

    def test_three_qubit_signs(self):
        # Sign rule: one flip per adjacent (-,-) pair, so the string signs on
        # (++ +, ++-, +-+, +--, -++, -+-, --+, ---) are + + + - + + - +.
        st = generate_cluster(ClusterSpec.chain(3))
        signs = np.array([1, 1, 1, -1, 1, 1, -1, 1], dtype=float)
        assert pm_coordinates(st) == pytest.approx(
            signs * 2.0 ** (-1.5), abs=1e-15
        )

    def test_all_orders_agree_bitwise(self):
        reference = None
        for order in itertools.permutations(((1, 2), (2, 3), (3, 4))):
            st = generate_cluster(ClusterSpec.chain(4, order))
            if reference is None:
                reference = st.amplitudes
            else:
                assert np.array_equal(st.amplitudes, reference)

    def test_norm_exactly_one(self):
        for n in range(2, 9):
            st = generate_cluster(ClusterSpec.chain(n))
            assert st.norm() == 1.0


class TestIdealCluster:
    def test_two_qubit(self):
        assert pm_coordinates(ideal_cluster(2)) == pytest.approx(
            np.array([1, 1, 1, -1]) / 2, abs=1e-15
        )

    def test_three_qubit_signs(self):
        signs = np.array([1, 1, 1, -1, 1, 1, -1, 1], dtype=float)
        assert pm_coordinates(ideal_cluster(3)) == pytest.approx(
            signs * 2.0 ** (-1.5), abs=1e-15
        )

    def test_matches_generated_up_to_ten(self):
        for n in range(2, 11):
            assert fidelity(ideal_cluster(n), generate_cluster(ClusterSpec.chain(n))) \
                >= 1.0 - 1e-12

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            ideal_cluster(1)


class TestStabilizers:
    def test_cluster_states_have_unit_expectations(self):
        for n in range(2, 11):
            st = generate_cluster(ClusterSpec.chain(n))
            values = stabilizer_expectations(st)
            assert len(values) == n
            assert all(abs(v - 1.0) <= 1e-12 for v in values)

    def test_initial_state_interior_zero(self):
        values = stabilizer_expectations(initial_state(4))
        for v in values[1:-1]:
            assert abs(v) < 1e-14

    def test_plus_product_interior_zero(self):
        n = 4
        plus = np.ones(2**n, dtype=complex) / 2.0**(n / 2)
        values = stabilizer_expectations(StateVector(n, plus))
        for v in values[1:-1]:
            assert abs(v) < 1e-14

    def test_verification_does_not_mutate(self):
        st = generate_cluster(ClusterSpec.chain(3))
        before = st.amplitudes.copy()
        stabilizer_expectations(st)
        assert np.array_equal(st.amplitudes, before)

    def test_operator_convention(self):
        # Zbar is diagonal in the |+->-basis; Xbar swaps + and -.
        assert np.array_equal(ZBAR, np.array([[0, 1], [1, 0]], dtype=complex))
        assert np.array_equal(XBAR, np.array([[1, 0], [0, -1]], dtype=complex))

    def test_stabilizer_operators_hermitian_unitary(self):
        for spec in chain_stabilizers(3):
            op = spec.to_operator()
            assert op.is_hermitian(atol=1e-14)
            assert op.is_unitary(atol=1e-14)

    def test_operator_string_labels(self):
        spec = StabilizerSpec(site=2, n_qubits=4)
        assert spec.operator_string() == ("Zbar", "Xbar", "Zbar", "I")
        edge = StabilizerSpec(site=1, n_qubits=4)
        assert edge.operator_string() == ("Xbar", "Zbar", "I", "I")

    def test_matrix_route_agrees_with_local_route(self):
        st = generate_cluster(ClusterSpec.chain(4))
        local = stabilizer_expectations(st)
        for spec, value in zip(chain_stabilizers(4), local):
            via_matrix = np.real(
                np.vdot(st.amplitudes, spec.to_operator().matrix @ st.amplitudes)
            )
            assert value == pytest.approx(via_matrix, abs=1e-14)

    def test_requires_two_qubits(self):
        with pytest.raises(ValueError):
            stabilizer_expectations(initial_state(1))


class TestPersistencyProbe:
    def test_two_qubit_zbar_plus_branch(self):
        st = generate_cluster(ClusterSpec.chain(2))
        prob, post = persistency_probe(st, 1, "zbar", +1)
        assert prob == pytest.approx(0.5, abs=1e-12)
        # Post state: measured qubit in |+>, partner back in (|-> + |+>)/sqrt2 = |0>.
        expected = np.kron(np.array([1, 1]) / math.sqrt(2), [1, 0])
        assert post.amplitudes == pytest.approx(expected, abs=1e-12)

    def test_outcome_probabilities_sum_to_one(self):
        st = generate_cluster(ClusterSpec.chain(3))
        for site in (1, 2, 3):
            for basis in ("zbar", "xbar"):
                total = 0.0
                for outcome in (+1, -1):
                    prob, _ = persistency_probe(st, site, basis, outcome)
                    total += prob
                assert total == pytest.approx(1.0, abs=1e-12)

    def test_measured_qubit_disconnects_chain(self):
        st = generate_cluster(ClusterSpec.chain(4))
        for outcome in (+1, -1):
            _, post = persistency_probe(st, 2, "zbar", outcome)
            # Cut through the measured site: qubit 1 is left in a product state.
            assert entanglement_entropy(post, [1]) < 1e-12
            # The far bond survives with a full bit of entanglement.
            assert entanglement_entropy(post, [4]) > 0.9

    def test_null_branch_raises(self):
        with pytest.raises(ValueError, match="null branch"):
            persistency_probe(initial_state(2), 1, "xbar", -1)

    def test_argument_validation(self):
        st = initial_state(2)
        with pytest.raises(ValueError, match="site"):
            persistency_probe(st, 3, "zbar", +1)
        with pytest.raises(ValueError, match="basis"):
            persistency_probe(st, 1, "ybar", +1)
        with pytest.raises(ValueError, match="outcome"):
            persistency_probe(st, 1, "zbar", 0)


class TestEntanglementEntropy:
    def test_product_state(self):
        assert entanglement_entropy(initial_state(4), [2]) == 0.0

    def test_two_qubit_cluster_is_maximal(self):
        st = generate_cluster(ClusterSpec.chain(2))
        assert entanglement_entropy(st, [1]) == pytest.approx(1.0, abs=1e-12)

    def test_matches_partial_trace_oracle(self):
        st = generate_cluster(ClusterSpec.chain(4))
        for cut in ([1], [1, 2], [1, 2, 3], [2, 3]):
            expected = entropy_bits(reduced_density(st.amplitudes, 4, cut))
            assert entanglement_entropy(st, cut) == pytest.approx(
                expected, abs=1e-12
            )

    def test_complementary_cuts_agree(self):
        st = generate_cluster(ClusterSpec.chain(4))
        assert entanglement_entropy(st, [1, 2]) == pytest.approx(
            entanglement_entropy(st, [3, 4]), abs=1e-12
        )

    def test_invalid_partitions(self):
        st = initial_state(3)
        with pytest.raises(ValueError):
            entanglement_entropy(st, [])
        with pytest.raises(ValueError):
            entanglement_entropy(st, [1, 2, 3])
        with pytest.raises(ValueError):
            entanglement_entropy(st, [4])


class TestAmplitudeExport:
    def test_round_trip_computational(self):
        st = generate_cluster(ClusterSpec.chain(3))
        pairs = amplitude_pairs(st, "computational")
        back = state_from_amplitude_pairs(pairs, "computational")
        assert back.amplitudes == pytest.approx(st.amplitudes, abs=1e-15)

    def test_round_trip_pm(self):
        st = generate_cluster(ClusterSpec.chain(3))
        pairs = amplitude_pairs(st, "pm")
        back = state_from_amplitude_pairs(pairs, "pm")
        assert back.amplitudes == pytest.approx(st.amplitudes, abs=1e-14)

    def test_rejects_unknown_basis(self):
        with pytest.raises(ValueError, match="basis"):
            amplitude_pairs(initial_state(2), "bell")
