"""Shared fixtures: small hand-built datasets, random problem factories, Enron gating."""

import os
from pathlib import Path

import numpy as np
import pytest

from src.models.dataset import Dataset


def make_random_dataset(seed: int, n: int, d: int, m: int, density: float = 0.3, label_rate: float = 0.3) -> Dataset:
    """Random sparse features and labels; every instance gets at least one label."""
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, d)) * (rng.random((n, d)) < density)
    Y = (rng.random((n, m)) < label_rate).astype(float)
    for i in range(n):
        if not Y[i].any():
            Y[i, rng.integers(0, m)] = 1.0
        if not X[i].any():
            X[i, rng.integers(0, d)] = 1.0
    return Dataset.from_dense(X, Y)


def make_separable_dataset(seed: int = 0, n: int = 20, d: int = 5, m: int = 4) -> Dataset:
    """Each label is on exactly when its own feature is positive."""
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, d))
    Y = (X[:, :m] > 0).astype(float)
    for i in range(n):
        if not Y[i].any():
            j = int(np.argmax(X[i, :m]))
            X[i, j] = abs(X[i, j]) + 0.5
            Y[i, j] = 1.0
    return Dataset.from_dense(X, Y)


@pytest.fixture
def tiny_text():
    """Three instances, d=5, m=4, one with an empty label field."""
    return "#dims 3 5 4\n1,3 0:0.5 4:2.0\n0 1:1.0\n 2:1.0 3:-1.5\n"


@pytest.fixture
def tiny_dataset(tiny_text):
    from src.ingestion.loaders import parse_multilabel_file

    return parse_multilabel_file(tiny_text)


@pytest.fixture
def random_dataset():
    return make_random_dataset(seed=7, n=40, d=8, m=10)


@pytest.fixture
def separable_dataset():
    return make_separable_dataset()


@pytest.fixture
def enron_path():
    """Path to enron.txt under XMLC_DATA_DIR; skips the test when absent."""
    data_dir = os.getenv("XMLC_DATA_DIR")
    if not data_dir:
        pytest.skip("XMLC_DATA_DIR not set")
    path = Path(data_dir) / "enron.txt"
    if not path.exists():
        pytest.skip(f"Enron dataset not found: {path}")
    return path
