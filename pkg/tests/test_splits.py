"""Tests for seeded k-fold splits."""

import numpy as np
import pytest

from src.ingestion.splits import kfold_indices, kfold_split
from tests.conftest import make_random_dataset


def test_folds_partition_the_instances():
    folds = kfold_indices(23, 5, seed=3)
    assert sorted(np.concatenate(folds).tolist()) == list(range(23))
    sizes = sorted(len(f) for f in folds)
    assert sizes[-1] - sizes[0] <= 1


def test_same_seed_same_split():
    a = kfold_indices(50, 5, seed=11)
    b = kfold_indices(50, 5, seed=11)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_different_seed_different_split():
    a = kfold_indices(50, 5, seed=1)
    b = kfold_indices(50, 5, seed=2)
    assert not all(np.array_equal(x, y) for x, y in zip(a, b))


def test_seven_instances_five_folds():
    ds = make_random_dataset(seed=0, n=7, d=3, m=3)
    pairs = kfold_split(ds, folds=5, seed=0)
    assert [test.n for _, test in pairs] == [2, 2, 1, 1, 1]
    assert all(train.n + test.n == 7 for train, test in pairs)


def test_train_is_complement_in_original_order():
    ds = make_random_dataset(seed=0, n=12, d=4, m=3)
    test_idx = kfold_indices(ds.n, 3, seed=5)
    pairs = kfold_split(ds, folds=3, seed=5)
    for idx, (train, test) in zip(test_idx, pairs):
        expected = [i for i in range(ds.n) if i not in set(idx.tolist())]
        assert train.label_sets == [ds.label_sets[i] for i in expected]
        assert test.label_sets == [ds.label_sets[i] for i in idx]


@pytest.mark.parametrize("folds", [1, 13])
def test_fold_count_out_of_range(folds):
    with pytest.raises(ValueError):
        kfold_indices(12, folds, seed=0)
