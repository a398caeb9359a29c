"""Tests for entropies and the closed-form information measures."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sixstate.attack import AttackParameters, build_attack_operator, tau1_sq_from_concurrence
from sixstate.infotheory import (
    binary_entropy,
    eve_joint,
    i_ab,
    i_ae_branch,
    i_ae_dependent,
    i_ae_equal_concurrence,
    i_ae_general,
    i_ae_independent,
    mutual_information,
    split_information,
)
from sixstate.protocol import intercept, prepare_pair
from sixstate.qubits import Basis


class TestBinaryEntropy:
    def test_endpoints_and_midpoint(self):
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0
        assert binary_entropy(0.5) == 1.0

    def test_frozen_value(self):
        assert_allclose(binary_entropy(0.25), 0.8112781244591328, atol=1e-15)

    def test_symmetric(self):
        for p in (0.1, 0.3, 0.45):
            assert_allclose(binary_entropy(p), binary_entropy(1.0 - p), atol=1e-15)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            binary_entropy(-0.1)
        with pytest.raises(ValueError):
            binary_entropy(1.1)


class TestSplitInformation:
    def test_frozen_value(self):
        assert_allclose(
            split_information(0.3, 0.2), -0.4854752972273343, atol=1e-15
        )

    def test_equals_scaled_entropy(self):
        for a, b in [(0.3, 0.2), (0.1, 0.6), (0.25, 0.25)]:
            want = -(a + b) * binary_entropy(a / (a + b))
            assert_allclose(split_information(a, b), want, atol=1e-14)

    def test_zero_masses(self):
        assert split_information(0.0, 0.0) == 0.0
        assert split_information(0.4, 0.0) == 0.0

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            split_information(-0.1, 0.2)


class TestMutualInformation:
    def test_independent_joint_is_zero(self):
        joint = np.outer([0.3, 0.7], [0.6, 0.4])
        assert abs(mutual_information(joint)) < 1e-15

    def test_perfectly_correlated_is_one_bit(self):
        assert_allclose(
            mutual_information(np.array([[0.5, 0.0], [0.0, 0.5]])), 1.0, atol=1e-15
        )

    def test_binary_symmetric_channel_value(self):
        # uniform input through a crossover-0.2 channel: 1 - h(0.2)
        joint = np.array([[0.4, 0.1], [0.1, 0.4]])
        assert_allclose(mutual_information(joint), 0.2780719051126377, atol=1e-15)

    def test_validation(self):
        with pytest.raises(ValueError):
            mutual_information(np.array([[0.5, 0.5], [0.5, 0.5]]))
        with pytest.raises(ValueError):
            mutual_information(np.array([[0.9, 0.2], [-0.1, 0.0]]))
        with pytest.raises(ValueError):
            mutual_information(np.ones(4) / 4.0)


class TestLegitimateInformation:
    def test_matches_entropy_complement(self):
        for d in (0.0, 0.1, 0.25, 0.5):
            assert_allclose(i_ab(d), 1.0 - binary_entropy(d), atol=1e-15)

    def test_frozen_value(self):
        assert_allclose(i_ab(0.25), 0.1887218755408672, atol=1e-15)


class TestEveJoint:
    def test_sums_to_one_on_complementary_slice(self):
        for b0 in (0.2, 0.5, 0.8):
            joint = eve_joint(b0, 1.0 - b0, 0.5, 0.3)
            assert_allclose(joint.sum(), 1.0, atol=1e-14)

    def test_matches_simulated_probe_reduction(self):
        for d, tau1, b0 in [(0.2, 0.5, 0.3), (0.35, 1.0, 0.2)]:
            b1 = 1.0 - b0
            params = AttackParameters.solved(d, tau1, b0, b1)
            out = intercept(prepare_pair(Basis.B1), build_attack_operator(params))
            simulated = np.real(np.diag(out.rho_ae)).reshape(2, 2)
            assert_allclose(eve_joint(b0, b1, tau1, d), simulated, atol=1e-12)


class TestGeneralForm:
    def test_equals_definitional_mi_on_complementary_slice(self):
        for d in (0.05, 0.2, 0.45):
            for tau1 in (0.25, 0.5, 1.0):
                for b0 in (0.1, 0.35, 0.5, 0.9):
                    b1 = 1.0 - b0
                    want = mutual_information(eve_joint(b0, b1, tau1, d))
                    assert_allclose(
                        i_ae_general(b0, b1, tau1, d), want, atol=1e-12
                    )

    def test_off_slice_anomaly_frozen(self):
        # the verbatim expression is not an information measure off the
        # b0 + b1 = 1 slice; this pins its most extreme value
        assert_allclose(i_ae_general(1.0, 1.0, 0.0, 0.0), -2.0, atol=1e-15)

    def test_range_validation(self):
        with pytest.raises(ValueError):
            i_ae_general(1.2, 0.5, 0.5, 0.2)
        with pytest.raises(ValueError):
            i_ae_general(0.5, 0.5, 0.5, 0.6)


class TestBranchForms:
    def test_complementary_branches_agree_with_definition(self):
        # branches 2 and 3 put the weights on opposite roots, which is
        # exactly the complementary slice
        for c in (0.3, 0.6, 0.9):
            for d in (0.1, 0.3):
                for branch in (2, 3):
                    value = i_ae_branch(branch, c, c, 0.5, d)
                    b_low = (1.0 - np.sqrt(1.0 - c * c)) / 2.0
                    pair = (b_low, 1.0 - b_low) if branch == 2 else (1.0 - b_low, b_low)
                    want = mutual_information(eve_joint(*pair, 0.5, d))
                    assert_allclose(value, want, atol=1e-12)

    def test_branch_symmetry_only_at_maximal_flip_entanglement(self):
        # the flip weights eta and eta * tau1**2 attach asymmetrically
        # to the two columns, so swapping b0 and b1 is only harmless
        # when tau1 = 1
        for c in (0.4, 0.8):
            assert_allclose(
                i_ae_branch(2, c, c, 1.0, 0.2),
                i_ae_branch(3, c, c, 1.0, 0.2),
                atol=1e-14,
            )
            assert (
                abs(i_ae_branch(2, c, c, 0.5, 0.2) - i_ae_branch(3, c, c, 0.5, 0.2))
                > 1e-3
            )

    def test_independent_recomputation_branch_three(self):
        # direct evaluation without going through eve_joint
        c, tau1, d = 0.6, 0.5, 0.2
        s = np.sqrt(1.0 - c * c)
        b0, b1 = (1.0 + s) / 2.0, (1.0 - s) / 2.0
        f, eta = 1.0 - d, d / (1.0 + tau1**2)
        x0 = f * b0 + eta
        x1 = f * b1 + eta * tau1**2
        total = f * (b0 + b1) + d
        want = (
            total
            - total * np.log2(total)
            + x0 * np.log2(x0)
            + x1 * np.log2(x1)
            - (x0 + x1) * np.log2(x0 + x1)
        )
        assert_allclose(i_ae_branch(3, c, c, tau1, d), want, atol=1e-14)

    def test_invalid_branch(self):
        with pytest.raises(ValueError):
            i_ae_branch(5, 0.5, 0.5, 0.5, 0.2)


class TestDependentForm:
    def test_equals_general_form_under_substitution(self):
        for c_flip in (0.3, 0.7, 1.0):
            tau1 = np.sqrt(tau1_sq_from_concurrence(c_flip))
            for c_keep in (0.0, 0.4, 0.9):
                b0 = (1.0 - np.sqrt(1.0 - c_keep * c_keep)) / 2.0
                for d in (0.1, 0.3, 0.5):
                    assert_allclose(
                        i_ae_dependent(c_flip, c_keep, d),
                        i_ae_general(b0, 1.0 - b0, tau1, d),
                        atol=1e-12,
                    )

    def test_collapses_at_equal_concurrence(self):
        for c in (0.2, 0.5, 0.9):
            for d in (0.1, 0.3):
                assert_allclose(
                    i_ae_dependent(c, c, d),
                    i_ae_equal_concurrence(c, d),
                    atol=1e-12,
                )

    def test_validation(self):
        with pytest.raises(ValueError):
            i_ae_dependent(0.0, 0.5, 0.2)


class TestEqualConcurrenceForm:
    def test_zero_concurrence_copies_bob(self):
        for d in (0.1, 0.25, 0.4):
            assert i_ae_equal_concurrence(0.0, d) == i_ab(d)

    def test_maximal_concurrence_blinds_eve(self):
        for d in (0.1, 0.3):
            assert_allclose(i_ae_equal_concurrence(1.0, d), 0.0, atol=1e-15)

    def test_flip_bias_formula(self):
        c, d = 0.5, 0.3
        p = d + (1.0 - 2.0 * d) * (1.0 - np.sqrt(1.0 - c * c)) / 2.0
        assert_allclose(
            i_ae_equal_concurrence(c, d), 1.0 - binary_entropy(p), atol=1e-14
        )


class TestIndependentForm:
    def test_matches_direct_formula(self):
        for c in (0.3, 0.7266, 1.0):
            low = (1.0 - np.sqrt(1.0 - c * c)) / 2.0
            assert_allclose(
                i_ae_independent(c), 1.0 - binary_entropy(low), atol=1e-14
            )

    def test_maximal_concurrence_gives_zero(self):
        assert i_ae_independent(1.0) == 0.0

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            i_ae_independent(0.0)
