"""Tests for model initialization, representation, scoring and prediction rules."""

import numpy as np
import pytest

from src.embedding.inference import init_model, predict_labels, predict_scores, represent, score
from src.errors import DimensionMismatchError
from src.models.activations import Sigma, Theta
from src.models.dataset import LabelSet, SparseVector
from src.models.embedding import EmbeddingModel
from src.models.prediction import PredictionRule, apply_rule


def _model_with_scores(raw_scores, sigma=Sigma.LOGISTIC):
    """One-feature model whose raw label scores for x = [1] are raw_scores."""
    raw = np.asarray(raw_scores, dtype=float)
    return EmbeddingModel(W=np.ones((1, 1)), L=raw.reshape(1, -1), sigma=sigma)


class TestInitModel:
    def test_shapes_and_parameter_count(self):
        model = init_model(7, 3, 5, seed=0)
        assert model.W.shape == (7, 3)
        assert model.L.shape == (3, 5)
        assert model.parameter_count == 7 * 3 + 3 * 5

    def test_entries_within_bound(self):
        model = init_model(20, 4, 30, seed=1, scale=2.0)
        bound = 2.0 / np.sqrt(4)
        assert np.abs(model.W).max() <= bound
        assert np.abs(model.L).max() <= bound

    def test_seed_determinism(self):
        assert init_model(5, 2, 3, seed=9) == init_model(5, 2, 3, seed=9)
        assert init_model(5, 2, 3, seed=9) != init_model(5, 2, 3, seed=10)

    @pytest.mark.parametrize("args", [(0, 2, 3), (2, 0, 3), (2, 2, 0)])
    def test_rejects_zero_dimensions(self, args):
        with pytest.raises(ValueError):
            init_model(*args, seed=0)


class TestRepresent:
    def test_sparse_product(self):
        W = np.arange(12, dtype=float).reshape(4, 3)
        model = EmbeddingModel(W=W, L=np.zeros((3, 2)))
        x = SparseVector.from_pairs([(1, 2.0), (3, -1.0)], dim=4)
        np.testing.assert_allclose(represent(model, x), 2.0 * W[1] - W[3])

    def test_tanh_activation(self):
        model = EmbeddingModel(W=np.array([[2.0, -3.0]]), L=np.zeros((2, 1)), theta=Theta.TANH)
        x = SparseVector.from_pairs([(0, 1.0)], dim=1)
        np.testing.assert_allclose(represent(model, x), np.tanh([2.0, -3.0]))

    def test_dimension_mismatch(self):
        model = init_model(4, 2, 3, seed=0)
        with pytest.raises(DimensionMismatchError):
            represent(model, SparseVector.from_pairs([(0, 1.0)], dim=5))


class TestScore:
    def test_logistic_of_inner_product(self):
        model = EmbeddingModel(W=np.eye(2), L=np.array([[1.0, 0.0], [1.0, 2.0]]))
        assert score(model, np.array([0.5, 0.5]), 0) == pytest.approx(1.0 / (1.0 + np.exp(-1.0)))

    def test_label_out_of_range(self):
        model = init_model(2, 2, 3, seed=0)
        with pytest.raises(IndexError):
            score(model, np.zeros(2), 3)

    def test_predict_scores_matches_score(self):
        model = init_model(6, 3, 4, seed=2)
        x = SparseVector.from_pairs([(0, 1.0), (5, 0.5)], dim=6)
        h = represent(model, x)
        expected = [score(model, h, j) for j in range(4)]
        np.testing.assert_allclose(predict_scores(model, x), expected)


class TestPredictLabels:
    x = SparseVector.from_pairs([(0, 1.0)], dim=1)

    def test_threshold(self):
        # logistic scores of raw (2.2, -2.2, 0.4) are about (0.9, 0.1, 0.6)
        model = _model_with_scores([2.2, -2.2, 0.4])
        assert predict_labels(model, self.x, PredictionRule.threshold(0.5)) == LabelSet.of([0, 2])

    def test_threshold_is_inclusive(self):
        model = _model_with_scores([0.0, -1.0])
        assert predict_labels(model, self.x, PredictionRule.threshold(0.5)) == LabelSet.of([0])

    def test_top_k_ties_go_to_smaller_index(self):
        model = _model_with_scores([1.0, 1.0, 1.0, 0.0])
        assert predict_labels(model, self.x, PredictionRule.top_k(2)) == LabelSet.of([0, 1])

    def test_all_scores_below_threshold_gives_empty_set(self):
        model = _model_with_scores([-3.0, -4.0])
        assert predict_labels(model, self.x) == LabelSet()

    def test_top_k_larger_than_m_rejected(self):
        with pytest.raises(ValueError):
            predict_labels(_model_with_scores([1.0, 2.0]), self.x, PredictionRule.top_k(3))

    def test_logistic_threshold_outside_unit_interval_rejected(self):
        with pytest.raises(ValueError):
            predict_labels(_model_with_scores([1.0]), self.x, PredictionRule.threshold(1.5))

    def test_identity_threshold_may_be_any_real(self):
        model = _model_with_scores([1.4, 1.6], sigma=Sigma.IDENTITY)
        assert predict_labels(model, self.x, PredictionRule.threshold(1.5)) == LabelSet.of([1])

    def test_batch_prediction_matches_per_instance(self, random_dataset):
        model = init_model(random_dataset.d, 3, random_dataset.m, seed=4)
        rule = PredictionRule.top_k(2)
        batch = model.predict_label_sets(random_dataset.feature_matrix(), rule)
        assert batch == [predict_labels(model, x, rule) for x in random_dataset.features]


class TestPredictionRule:
    @pytest.mark.parametrize(
        "text, expected",
        [("threshold:0.5", PredictionRule.threshold(0.5)), ("topk:3", PredictionRule.top_k(3))],
    )
    def test_parse(self, text, expected):
        assert PredictionRule.parse(text) == expected
        assert PredictionRule.parse(str(expected)) == expected

    @pytest.mark.parametrize("text", ["threshold", "median:2", "topk:x", "topk:0", "topk:1.5"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            PredictionRule.parse(text)

    def test_apply_rule_on_rows(self):
        scores = np.array([[0.2, 0.9], [0.7, 0.1]])
        assert apply_rule(scores, PredictionRule.top_k(1)) == [LabelSet.of([1]), LabelSet.of([0])]
