"""
Example-based multi-label metrics.

For a predicted set Z and a true set T over m labels:

    Hamming loss  |Z Δ T| / m
    F score       2|Z ∩ T| / (|Z| + |T|)     (harmonic mean of precision and recall)
    Accuracy      |Z ∩ T| / |Z ∪ T|           (Jaccard index)

Empty-set conventions: F and Accuracy are 1 when both sets are empty; F is 0
whenever the intersection is empty otherwise. Dataset-level values are
per-instance means.

Example:
    >>> from src.evaluation.metrics import hamming_loss, f_score, accuracy
    >>> pred, truth = LabelSet.of([1, 2]), LabelSet.of([2, 3])
    >>> hamming_loss(pred, truth, m=5), f_score(pred, truth), accuracy(pred, truth)
    (0.4, 0.5, 0.3333333333333333)
"""

import logging
from typing import Protocol

import numpy as np
from scipy.sparse import csr_matrix

from src.models.dataset import Dataset, LabelSet
from src.models.prediction import DEFAULT_RULE, PredictionRule
from src.models.report import EvaluationResult

logger = logging.getLogger(__name__)


class LabelSetPredictor(Protocol):
    """Anything that turns a feature matrix into one predicted LabelSet per row."""

    def predict_label_sets(self, X: csr_matrix, rule: PredictionRule) -> list[LabelSet]: ...


def hamming_loss(pred: LabelSet, truth: LabelSet, m: int) -> float:
    """
    Fraction of the m labels on which prediction and truth disagree.

    Raises:
        ValueError: If m < 1
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return len(set(pred.labels) ^ set(truth.labels)) / m


def f_score(pred: LabelSet, truth: LabelSet) -> float:
    """Per-instance F score; 1 when both sets are empty, 0 when they do not intersect."""
    if not len(pred) and not len(truth):
        return 1.0
    intersection = len(set(pred.labels) & set(truth.labels))
    return 2.0 * intersection / (len(pred) + len(truth))


def accuracy(pred: LabelSet, truth: LabelSet) -> float:
    """Per-instance Jaccard index; 1 when the union is empty."""
    union = len(set(pred.labels) | set(truth.labels))
    if union == 0:
        return 1.0
    return len(set(pred.labels) & set(truth.labels)) / union


def label_sets_to_matrix(label_sets: list[LabelSet], m: int) -> csr_matrix:
    """Stack label sets into an n×m CSR 0/1 indicator matrix."""
    indptr = np.zeros(len(label_sets) + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(s) for s in label_sets])
    indices = (
        np.concatenate([s.as_array() for s in label_sets])
        if label_sets else np.zeros(0, dtype=np.int64)
    )
    return csr_matrix((np.ones(indices.size), indices, indptr), shape=(len(label_sets), m))


def evaluate_label_sets(predictions: list[LabelSet], truths: list[LabelSet], m: int) -> EvaluationResult:
    """
    Dataset means of the three metrics for aligned prediction and truth lists.

    Raises:
        ValueError: If the lists are empty or of different length, or m < 1
    """
    if len(predictions) != len(truths):
        raise ValueError(f"{len(predictions)} predictions for {len(truths)} instances")
    if not truths:
        raise ValueError("cannot evaluate on an empty dataset")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")

    Z = label_sets_to_matrix(predictions, m)
    T = label_sets_to_matrix(truths, m)
    size_z = np.asarray(Z.sum(axis=1)).ravel()
    size_t = np.asarray(T.sum(axis=1)).ravel()
    inter = np.asarray(Z.multiply(T).sum(axis=1)).ravel()
    union = size_z + size_t - inter

    both_empty = union == 0
    denominator = np.where(both_empty, 1.0, size_z + size_t)
    f = np.where(both_empty, 1.0, 2.0 * inter / denominator)
    acc = np.where(both_empty, 1.0, inter / np.where(both_empty, 1.0, union))
    hamming = (union - inter) / m

    conventions = int(np.sum(both_empty))
    if conventions:
        logger.warning(f"{conventions} instances have empty predicted and true sets; scored 1 by convention")

    return EvaluationResult(
        hamming_loss=float(np.mean(hamming)),
        f_score=float(np.mean(f)),
        accuracy=float(np.mean(acc)),
        num_instances=len(truths),
        empty_convention_count=conventions,
    )


def evaluate(predictor: LabelSetPredictor, ds: Dataset, rule: PredictionRule = DEFAULT_RULE) -> EvaluationResult:
    """
    Evaluate a predictor on a dataset.

    Args:
        predictor: Model exposing predict_label_sets(X, rule)
        ds: Test data (n >= 1)
        rule: Prediction rule turning scores into label sets

    Returns:
        EvaluationResult with per-instance means of Hamming loss, F score and Accuracy
    """
    predictions = predictor.predict_label_sets(ds.feature_matrix(), rule)
    return evaluate_label_sets(predictions, ds.label_sets, ds.m)
