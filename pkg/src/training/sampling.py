"""
Uniform negative sampling.

For an instance with relevant labels P, draw |S| = alpha·|P| distinct
irrelevant labels uniformly without replacement (clamped at |N|). Replacing
the full sum over irrelevant labels with the sample gives an unbiased
estimate of the cost-sensitive loss with weight 1/C, C = |N| / (alpha·|P|).
"""

import numpy as np

from src.models.dataset import LabelSet


def sample_negatives(P: LabelSet, m: int, alpha: int, rng: np.random.Generator) -> LabelSet:
    """
    Sample irrelevant labels for one instance.

    Args:
        P: Relevant labels, all < m
        m: Label count
        alpha: Sampling coefficient (negatives per relevant label)
        rng: Sampling stream

    Returns:
        S, a subset of the complement of P with min(alpha·|P|, m - |P|) elements;
        empty when P is empty

    Example:
        >>> len(sample_negatives(LabelSet.of([0, 1, 2]), 100, 5, rng))
        15
    """
    positives = P.as_array()
    num_negatives = m - positives.size
    count = min(alpha * positives.size, num_negatives)
    if count <= 0:
        return LabelSet()

    if 2 * count >= num_negatives:
        # dense regime: choose directly from the complement
        negatives = np.setdiff1d(np.arange(m), positives)
        return LabelSet.of(rng.choice(negatives, size=count, replace=False).tolist())

    # sparse regime: rejection sampling costs O(count) instead of O(m)
    excluded = set(P.labels)
    chosen: set[int] = set()
    while len(chosen) < count:
        for label in rng.integers(0, m, size=count - len(chosen)).tolist():
            if label not in excluded and label not in chosen:
                chosen.add(label)
    return LabelSet.of(chosen)
