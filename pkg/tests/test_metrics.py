"""Tests for the example-based metrics."""

import numpy as np
import pytest

from src.evaluation.algorithms import BaselinePredictor
from src.evaluation.metrics import accuracy, evaluate, evaluate_label_sets, f_score, hamming_loss
from src.ingestion.profiling import compute_stats
from src.models.dataset import LabelSet


class TestPerInstance:
    def test_worked_example(self):
        pred, truth = LabelSet.of([1, 2]), LabelSet.of([2, 3])
        assert hamming_loss(pred, truth, 5) == pytest.approx(0.4)
        assert f_score(pred, truth) == pytest.approx(0.5)
        assert accuracy(pred, truth) == pytest.approx(1 / 3)

    def test_perfect_prediction(self):
        s = LabelSet.of([0, 4])
        assert (hamming_loss(s, s, 6), f_score(s, s), accuracy(s, s)) == (0.0, 1.0, 1.0)

    def test_both_empty(self):
        assert f_score(LabelSet(), LabelSet()) == 1.0
        assert accuracy(LabelSet(), LabelSet()) == 1.0
        assert hamming_loss(LabelSet(), LabelSet(), 3) == 0.0

    def test_empty_prediction_nonempty_truth(self):
        truth = LabelSet.of([0, 2])
        assert f_score(LabelSet(), truth) == 0.0
        assert accuracy(LabelSet(), truth) == 0.0
        assert hamming_loss(LabelSet(), truth, 4) == pytest.approx(0.5)

    def test_m_must_be_positive(self):
        with pytest.raises(ValueError):
            hamming_loss(LabelSet(), LabelSet(), 0)


class TestEvaluateLabelSets:
    def test_matches_per_instance_definitions(self):
        rng = np.random.default_rng(0)
        m = 8
        preds, truths = [], []
        for _ in range(10_000):
            preds.append(LabelSet.of(np.flatnonzero(rng.random(m) < 0.2).tolist()))
            truths.append(LabelSet.of(np.flatnonzero(rng.random(m) < 0.2).tolist()))
        result = evaluate_label_sets(preds, truths, m)
        assert result.hamming_loss == pytest.approx(np.mean([hamming_loss(p, t, m) for p, t in zip(preds, truths)]))
        assert result.f_score == pytest.approx(np.mean([f_score(p, t) for p, t in zip(preds, truths)]))
        assert result.accuracy == pytest.approx(np.mean([accuracy(p, t) for p, t in zip(preds, truths)]))
        assert result.num_instances == 10_000
        assert result.empty_convention_count == sum(1 for p, t in zip(preds, truths) if not len(p) and not len(t))

    def test_bounds(self):
        rng = np.random.default_rng(1)
        sets = [LabelSet.of(rng.choice(5, size=rng.integers(0, 6), replace=False).tolist()) for _ in range(200)]
        result = evaluate_label_sets(sets[:100], sets[100:], 5)
        assert all(0.0 <= v <= 1.0 for v in result.as_tuple())

    def test_accuracy_never_exceeds_f_score(self):
        rng = np.random.default_rng(2)
        m = 10
        for _ in range(10_000):
            density = rng.random()
            pred = LabelSet.of(np.flatnonzero(rng.random(m) < density).tolist())
            truth = LabelSet.of(np.flatnonzero(rng.random(m) < density).tolist())
            # Jaccard <= Dice
            assert accuracy(pred, truth) <= f_score(pred, truth) + 1e-15

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            evaluate_label_sets([LabelSet()], [], 3)

    def test_empty_input(self):
        with pytest.raises(ValueError):
            evaluate_label_sets([], [], 3)


def test_baseline_hamming_equals_label_density(random_dataset):
    result = evaluate(BaselinePredictor(m=random_dataset.m), random_dataset)
    assert result.hamming_loss == pytest.approx(compute_stats(random_dataset).label_density, rel=0, abs=1e-12)
    # every instance of the fixture has a relevant label
    assert result.f_score == 0.0
    assert result.accuracy == 0.0
