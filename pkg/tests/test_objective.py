"""Tests for the sampled objective: unbiasedness and exact gradients."""

from itertools import combinations

import numpy as np
import pytest

from src.embedding.inference import init_model
from src.models.activations import Sigma, Theta
from src.models.configs import LossKind
from src.models.dataset import LabelSet, SparseVector
from src.models.embedding import EmbeddingModel
from src.training.objective import (
    batch_gradients,
    batch_objective,
    cost_sensitive_loss,
    objective_and_gradients,
    sampled_instance_loss,
    stack_features,
)
from src.training.sampling import sample_negatives

LOSS_SIGMA = [
    (LossKind.CROSS_ENTROPY, Sigma.LOGISTIC),
    (LossKind.LEAST_SQUARES, Sigma.LOGISTIC),
    (LossKind.L2_HINGE, Sigma.IDENTITY),
]


def _random_problem(seed, theta, sigma, d=4, k=3, m=7, batch_size=3, alpha=1):
    rng = np.random.default_rng(seed)
    model = init_model(d, k, m, seed=seed, theta=theta, sigma=sigma)
    batch = []
    for _ in range(batch_size):
        x = SparseVector.from_dense(rng.normal(size=d) * (rng.random(d) < 0.7) + np.eye(d)[0] * 0.1)
        P = LabelSet.of(rng.choice(m, size=rng.integers(1, 3), replace=False).tolist())
        batch.append((x, P, sample_negatives(P, m, alpha, rng)))
    return model, batch


def _numeric_gradient(model, batch, lam, loss, matrix, index, step=1e-5):
    original = matrix[index]
    matrix[index] = original + step
    plus = batch_objective(model, batch, lam, loss)
    matrix[index] = original - step
    minus = batch_objective(model, batch, lam, loss)
    matrix[index] = original
    return (plus - minus) / (2 * step)


class TestSampledLoss:
    def test_negative_sampling_is_unbiased(self):
        # m = 10, |P| = 2, alpha = 2: all C(8, 4) = 70 negative sets are equally likely
        model = init_model(5, 3, 10, seed=1)
        x = SparseVector.from_pairs([(0, 1.0), (2, -0.5), (4, 2.0)], dim=5)
        P = LabelSet.of([3, 6])
        N = P.complement(10)
        sampled = [
            sampled_instance_loss(model, x, P, LabelSet.of(S))
            for S in combinations(N.labels, 4)
        ]
        assert len(sampled) == 70
        C = len(N) / (2 * len(P))
        assert np.mean(sampled) == pytest.approx(cost_sensitive_loss(model, x, P, N, C), abs=1e-10)

    def test_overlap_rejected(self):
        model = init_model(2, 2, 4, seed=0)
        x = SparseVector.from_pairs([(0, 1.0)], dim=2)
        with pytest.raises(ValueError, match="overlap"):
            sampled_instance_loss(model, x, LabelSet.of([1]), LabelSet.of([1, 2]))

    def test_empty_sets_have_zero_loss(self):
        model = init_model(2, 2, 4, seed=0)
        x = SparseVector.from_pairs([(0, 1.0)], dim=2)
        assert sampled_instance_loss(model, x, LabelSet(), LabelSet()) == 0.0

    def test_cost_must_be_positive(self):
        model = init_model(2, 2, 4, seed=0)
        x = SparseVector.from_pairs([(0, 1.0)], dim=2)
        with pytest.raises(ValueError):
            cost_sensitive_loss(model, x, LabelSet.of([0]), LabelSet.of([1]), 0.0)


class TestBatchObjective:
    def test_regularizes_only_touched_columns(self):
        model = EmbeddingModel(W=np.zeros((1, 1)), L=np.array([[1.0, 2.0, 3.0]]))
        x = SparseVector.from_pairs([(0, 1.0)], dim=1)
        batch = [(x, LabelSet.of([0]), LabelSet.of([2]))]
        # zero W gives raw scores 0, so each label costs ln 2
        expected = 2 * np.log(2.0) + 0.5 * (1.0 + 9.0)
        assert batch_objective(model, batch, 0.5) == pytest.approx(expected)

    def test_matrix_form_agrees(self):
        model, batch = _random_problem(3, Theta.TANH, Sigma.LOGISTIC)
        X = stack_features([x for x, _, _ in batch], model.d)
        objective, _ = objective_and_gradients(
            model, X, [P for _, P, _ in batch], [S for _, _, S in batch], 0.01, LossKind.CROSS_ENTROPY
        )
        assert objective == pytest.approx(batch_objective(model, batch, 0.01))

    def test_empty_batch_rejected(self):
        with pytest.raises(ValueError):
            batch_objective(init_model(2, 2, 2, seed=0), [], 0.1)


class TestBatchGradients:
    @pytest.mark.parametrize("loss, sigma", LOSS_SIGMA)
    @pytest.mark.parametrize("theta", [Theta.IDENTITY, Theta.TANH])
    def test_matches_finite_differences(self, loss, sigma, theta):
        lam = 0.01
        for seed in range(20):
            model, batch = _random_problem(seed, theta, sigma)
            grads = batch_gradients(model, batch, lam, loss)

            numeric_W = np.zeros_like(model.W)
            for index in np.ndindex(*model.W.shape):
                numeric_W[index] = _numeric_gradient(model, batch, lam, loss, model.W, index)
            numeric_L = np.zeros((model.k, grads.touched.size))
            for c, j in enumerate(grads.touched):
                for r in range(model.k):
                    numeric_L[r, c] = _numeric_gradient(model, batch, lam, loss, model.L, (r, j))

            analytic = np.concatenate([grads.grad_W.ravel(), grads.grad_L.ravel()])
            numeric = np.concatenate([numeric_W.ravel(), numeric_L.ravel()])
            error = np.linalg.norm(analytic - numeric) / max(np.linalg.norm(numeric), 1e-8)
            assert error < 1e-5, f"seed {seed}: relative error {error:.2e}"

    def test_touched_columns_are_batch_labels(self):
        model, batch = _random_problem(11, Theta.IDENTITY, Sigma.LOGISTIC, m=20)
        grads = batch_gradients(model, batch, 0.1)
        expected = sorted({j for _, P, S in batch for j in list(P) + list(S)})
        assert grads.touched.tolist() == expected
        assert grads.grad_L.shape == (model.k, len(expected))

    def test_untouched_columns_have_no_gradient(self):
        model, batch = _random_problem(5, Theta.IDENTITY, Sigma.LOGISTIC, m=20)
        grads = batch_gradients(model, batch, 0.1)
        untouched = [j for j in range(model.m) if j not in set(grads.touched.tolist())]
        for j in untouched[:3]:
            assert _numeric_gradient(model, batch, 0.1, LossKind.CROSS_ENTROPY, model.L, (0, j)) == 0.0
