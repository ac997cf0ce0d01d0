"""Tests for the sparse-group soft-thresholding operator."""

import numpy as np
import pytest

from freqgraph.prox import group_objective, soft_threshold, sparse_group_prox

from oracles import penalty_objective, perturbation_beats, splitting_minimizer


class TestSoftThreshold:
    def test_zero_input(self):
        assert soft_threshold(0.0, 1.0) == 0.0

    def test_real_shrink(self):
        assert soft_threshold(3.0, 1.0) == pytest.approx(2.0)

    def test_phase_preserved(self):
        assert soft_threshold(4.0j, 1.0) == pytest.approx(3.0j)

    def test_below_threshold_is_exact_zero(self):
        out = soft_threshold(np.array([0.5 + 0.1j, 2.0]), 1.0)
        assert out[0] == 0.0 + 0.0j
        assert out[1] == pytest.approx(1.0)

    def test_zero_threshold_is_identity(self):
        rng = np.random.default_rng(0)
        a = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        assert np.array_equal(soft_threshold(a, 0.0), a)


class TestSparseGroupProx:
    def test_no_penalty_identity(self):
        rng = np.random.default_rng(1)
        a = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        assert np.array_equal(sparse_group_prox(a, 0.0, 0.0), a)

    def test_group_collapse_when_norm_below_group_penalty(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            a = rng.standard_normal(5) + 1j * rng.standard_normal(5)
            lam1 = rng.uniform(0.0, 1.0)
            survivor = np.linalg.norm(soft_threshold(a, lam1))
            lam2 = survivor * rng.uniform(1.0, 2.0) + 1e-12
            out = sparse_group_prox(a, lam1, lam2)
            assert np.all(out == 0.0)

    def test_worked_example(self):
        a = np.array([3.0, 4.0j])
        out = sparse_group_prox(a, 1.0, 2.0)
        factor = 1.0 - 2.0 / np.sqrt(13.0)
        assert out[0] == pytest.approx(2.0 * factor, abs=1e-12)
        assert out[1] == pytest.approx(3.0j * factor, abs=1e-12)
        # and the independent minimizer lands on the same objective value
        ref = splitting_minimizer(a, 1.0, 2.0)
        assert group_objective(out, a, 1.0, 2.0) == pytest.approx(
            penalty_objective(ref, a, 1.0, 2.0), abs=1e-8
        )

    def test_matches_splitting_minimizer(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            q = rng.integers(1, 7)
            a = rng.standard_normal(q) + 1j * rng.standard_normal(q)
            lam1 = rng.uniform(0.0, 1.5)
            lam2 = rng.uniform(0.0, 1.5)
            out = sparse_group_prox(a, lam1, lam2)
            ref = splitting_minimizer(a, lam1, lam2)
            assert np.linalg.norm(out - ref) <= 1e-7
            assert group_objective(out, a, lam1, lam2) <= (
                penalty_objective(ref, a, lam1, lam2) + 1e-9
            )

    def test_beats_local_perturbations(self):
        rng = np.random.default_rng(4)
        a = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        out = sparse_group_prox(a, 0.4, 0.7)
        ok, margin = perturbation_beats(out, a, 0.4, 0.7, rng, count=2000)
        assert ok, f"found lower objective nearby (margin {margin})"

    def test_phase_equivariance(self):
        rng = np.random.default_rng(5)
        a = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        for phi in (0.3, 1.2, -2.0):
            rotated = np.exp(1j * phi) * a
            lhs = sparse_group_prox(rotated, 0.5, 0.5)
            rhs = np.exp(1j * phi) * sparse_group_prox(a, 0.5, 0.5)
            assert np.allclose(lhs, rhs, atol=1e-12)

    def test_conjugate_equivariance(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            a = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            lhs = sparse_group_prox(np.conj(a), 0.3, 0.6)
            rhs = np.conj(sparse_group_prox(a, 0.3, 0.6))
            assert np.array_equal(lhs, rhs)

    def test_non_expansive(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            a = rng.standard_normal(5) + 1j * rng.standard_normal(5)
            b = rng.standard_normal(5) + 1j * rng.standard_normal(5)
            lam1, lam2 = rng.uniform(0, 1, 2)
            gap_out = np.linalg.norm(
                sparse_group_prox(a, lam1, lam2) - sparse_group_prox(b, lam1, lam2)
            )
            assert gap_out <= np.linalg.norm(a - b) + 1e-12

    def test_thresholded_entries_are_bit_exact_zero(self):
        a = np.array([0.1 + 0.05j, 3.0, 0.02j])
        out = sparse_group_prox(a, 0.5, 0.1)
        assert out[0] == 0.0 + 0.0j
        assert out[2] == 0.0 + 0.0j
        assert out[1] != 0.0

    def test_rejects_negative_penalties(self):
        with pytest.raises(ValueError):
            sparse_group_prox(np.array([1.0]), -0.1, 0.0)
