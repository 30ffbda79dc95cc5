"""
Seeded k-fold cross-validation splits.

Instances are permuted once and cut into folds whose sizes differ by at most
one (the larger folds first). Splits are plain random; no stratification.
"""

import numpy as np

from src.models.dataset import Dataset


def kfold_indices(n: int, folds: int, seed: int) -> list[np.ndarray]:
    """Test-index arrays of each fold, in permuted order."""
    if not 2 <= folds <= n:
        raise ValueError(f"folds must be between 2 and n={n}, got {folds}")
    permutation = np.random.default_rng(seed).permutation(n)
    return np.array_split(permutation, folds)


def kfold_split(ds: Dataset, folds: int, seed: int) -> list[tuple[Dataset, Dataset]]:
    """
    Partition a dataset into train/test pairs for k-fold cross validation.

    Args:
        ds: Dataset to split
        folds: Number of folds, 2 <= folds <= n
        seed: Seed of the permutation; equal seeds give identical splits

    Returns:
        One (train, test) pair per fold; train is the complement of the test
        fold, kept in original instance order

    Raises:
        ValueError: If folds is out of range

    Example:
        >>> [len(test.instances) for _, test in kfold_split(ds7, folds=5, seed=0)]
        [2, 2, 1, 1, 1]
    """
    test_folds = kfold_indices(ds.n, folds, seed)
    pairs = []
    for test_idx in test_folds:
        train_mask = np.ones(ds.n, dtype=bool)
        train_mask[test_idx] = False
        train_idx = np.flatnonzero(train_mask)
        pairs.append((ds.subset(train_idx), ds.subset(test_idx)))
    return pairs
