"""
Inference with the representation model.

    h     = theta(x W)          feature representation (length k)
    f^j   = sigma(h · l_j)      score of label j
    f(x)  = [f^1(x), ..., f^m(x)]

With theta = sigma = identity the whole predictor is the linear map x W L.
"""

import numpy as np

from src.errors import DimensionMismatchError
from src.models.activations import Sigma, Theta
from src.models.dataset import LabelSet, SparseVector
from src.models.embedding import EmbeddingModel
from src.models.prediction import DEFAULT_RULE, PredictionRule, apply_rule


def init_model(
    d: int,
    k: int,
    m: int,
    seed: int,
    scale: float = 1.0,
    theta: Theta = Theta.IDENTITY,
    sigma: Sigma = Sigma.LOGISTIC,
) -> EmbeddingModel:
    """
    Create a model with entries drawn i.i.d. uniform on [-scale/sqrt(k), scale/sqrt(k)].

    Args:
        d: Feature dimension
        k: Representation dimension
        m: Label count
        seed: Seed of the initialization stream (same seed, same model)
        scale: Positive width multiplier
        theta: Feature-map activation
        sigma: Output activation

    Returns:
        Freshly initialized EmbeddingModel (W drawn before L)
    """
    if min(d, k, m) < 1:
        raise ValueError(f"d, k and m must be >= 1, got d={d}, k={k}, m={m}")
    if scale <= 0:
        raise ValueError(f"scale must be > 0, got {scale}")

    rng = np.random.default_rng(seed)
    bound = scale / np.sqrt(k)
    W = rng.uniform(-bound, bound, size=(d, k))
    L = rng.uniform(-bound, bound, size=(k, m))
    return EmbeddingModel(W=W, L=L, theta=theta, sigma=sigma)


def represent(model: EmbeddingModel, x: SparseVector) -> np.ndarray:
    """Feature representation h = theta(xW) via a sparse row-matrix product."""
    if x.dim != model.d:
        raise DimensionMismatchError(f"instance has d={x.dim}, model expects d={model.d}")
    return model.theta.apply(x.values @ model.W[x.indices])


def score(model: EmbeddingModel, h: np.ndarray, j: int) -> float:
    """Score sigma(h · l_j) of label j for representation h."""
    if not 0 <= j < model.m:
        raise IndexError(f"label index {j} out of range [0, {model.m})")
    return float(model.sigma.apply(float(h @ model.L[:, j])))


def predict_scores(model: EmbeddingModel, x: SparseVector) -> np.ndarray:
    """All m label scores of one instance."""
    h = represent(model, x)
    return model.sigma.apply(h @ model.L)


def predict_labels(
    model: EmbeddingModel,
    x: SparseVector,
    rule: PredictionRule = DEFAULT_RULE,
) -> LabelSet:
    """
    Predicted label set of one instance.

    Args:
        model: Trained model
        x: Instance features
        rule: Threshold (inclusive cutoff on activated scores) or top-k
            (ties toward the smaller label index)

    Returns:
        Predicted LabelSet

    Example:
        >>> predict_labels(model, x, PredictionRule.threshold(0.5))  # scores (0.9, 0.1, 0.6)
        LabelSet(labels=(0, 2))
    """
    rule.validate_for(model.sigma, model.m)
    return apply_rule(predict_scores(model, x), rule)[0]
