"""
Dataset models for multi-label learning.

Defines sparse feature vectors, relevant-label sets, the immutable Dataset
container and its profiling statistics. Numerical code works on the cached
CSR views (feature_matrix / label_matrix); the per-instance types exist for
parsing, splitting and the per-instance operations.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np
from scipy.sparse import csr_matrix

from src.errors import DimensionMismatchError


@dataclass(frozen=True, eq=False)
class SparseVector:
    """
    A feature vector stored as strictly increasing indices with values.

    Attributes:
        indices: int64 array of feature indices, strictly increasing, < dim
        values: float64 array aligned with indices
        dim: Feature dimension d
    """
    indices: np.ndarray
    values: np.ndarray
    dim: int

    def __post_init__(self):
        indices = np.asarray(self.indices, dtype=np.int64)
        values = np.asarray(self.values, dtype=np.float64)
        if indices.ndim != 1 or indices.shape != values.shape:
            raise ValueError("indices and values must be 1-d arrays of equal length")
        if indices.size:
            if indices[0] < 0 or indices[-1] >= self.dim:
                raise ValueError(f"feature index out of range [0, {self.dim})")
            if np.any(np.diff(indices) <= 0):
                raise ValueError("feature indices must be strictly increasing")
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, float]], dim: int) -> "SparseVector":
        """Build from (index, value) pairs in any order; duplicate indices are rejected."""
        pairs = sorted(pairs)
        indices = np.array([i for i, _ in pairs], dtype=np.int64)
        values = np.array([v for _, v in pairs], dtype=np.float64)
        return cls(indices=indices, values=values, dim=dim)

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> "SparseVector":
        dense = np.asarray(dense, dtype=np.float64)
        nz = np.flatnonzero(dense)
        return cls(indices=nz, values=dense[nz], dim=dense.shape[0])

    @property
    def entries(self) -> list[tuple[int, float]]:
        return list(zip(self.indices.tolist(), self.values.tolist()))

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.dim)
        dense[self.indices] = self.values
        return dense

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return (
            self.dim == other.dim
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.values, other.values)
        )


@dataclass(frozen=True)
class LabelSet:
    """
    Sorted, duplicate-free set of relevant label indices (P).

    Equivalent to a 0/1 vector y over m labels with y[j] = 1 iff j is in the set.
    The bound m is enforced by the owning Dataset, not by the set itself.
    """
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        labels = tuple(sorted(set(int(j) for j in self.labels)))
        if labels and labels[0] < 0:
            raise ValueError(f"label indices must be nonnegative, got {labels[0]}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def of(cls, labels: Iterable[int]) -> "LabelSet":
        return cls(tuple(labels))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[int]:
        return iter(self.labels)

    def __contains__(self, j: object) -> bool:
        return j in self.labels

    def as_array(self) -> np.ndarray:
        return np.array(self.labels, dtype=np.int64)

    def complement(self, m: int) -> "LabelSet":
        """Irrelevant labels N = {0..m-1} minus P."""
        return LabelSet(tuple(np.setdiff1d(np.arange(m), self.as_array()).tolist()))

    def to_indicator(self, m: int) -> np.ndarray:
        y = np.zeros(m)
        y[self.as_array()] = 1.0
        return y

    def max_label(self) -> int:
        """Largest label index, or -1 for the empty set."""
        return self.labels[-1] if self.labels else -1


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Immutable multi-label dataset of n instances over d features and m labels.

    Attributes:
        n: Instance count
        d: Feature dimension
        m: Label count
        instances: (features, relevant labels) per instance
    """
    n: int
    d: int
    m: int
    instances: tuple[tuple[SparseVector, LabelSet], ...] = field(repr=False)

    def __post_init__(self):
        instances = tuple(self.instances)
        object.__setattr__(self, "instances", instances)
        if len(instances) != self.n:
            raise ValueError(f"declared n={self.n} but got {len(instances)} instances")
        for i, (x, labels) in enumerate(instances):
            if x.dim != self.d:
                raise DimensionMismatchError(
                    f"instance {i} has feature dim {x.dim}, dataset declares d={self.d}"
                )
            if labels.max_label() >= self.m:
                raise ValueError(
                    f"instance {i} has label {labels.max_label()}, dataset declares m={self.m}"
                )

    @classmethod
    def from_instances(
        cls,
        instances: Iterable[tuple[SparseVector, LabelSet]],
        d: int,
        m: int,
    ) -> "Dataset":
        instances = tuple(instances)
        return cls(n=len(instances), d=d, m=m, instances=instances)

    @classmethod
    def from_dense(cls, X: np.ndarray, Y: np.ndarray) -> "Dataset":
        """Build from a dense n×d feature matrix and a dense n×m 0/1 label matrix."""
        X = np.asarray(X, dtype=np.float64)
        Y = np.asarray(Y)
        if X.shape[0] != Y.shape[0]:
            raise DimensionMismatchError(f"X has {X.shape[0]} rows, Y has {Y.shape[0]}")
        instances = [
            (SparseVector.from_dense(x), LabelSet.of(np.flatnonzero(y).tolist()))
            for x, y in zip(X, Y)
        ]
        return cls.from_instances(instances, d=X.shape[1], m=Y.shape[1])

    @property
    def features(self) -> list[SparseVector]:
        return [x for x, _ in self.instances]

    @property
    def label_sets(self) -> list[LabelSet]:
        return [labels for _, labels in self.instances]

    @cached_property
    def _feature_csr(self) -> csr_matrix:
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([x.nnz for x, _ in self.instances])
        if self.n:
            indices = np.concatenate([x.indices for x, _ in self.instances])
            data = np.concatenate([x.values for x, _ in self.instances])
        else:
            indices = np.zeros(0, dtype=np.int64)
            data = np.zeros(0)
        return csr_matrix((data, indices, indptr), shape=(self.n, self.d))

    @cached_property
    def _label_csr(self) -> csr_matrix:
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(labels) for _, labels in self.instances])
        if self.n:
            indices = np.concatenate([labels.as_array() for _, labels in self.instances])
        else:
            indices = np.zeros(0, dtype=np.int64)
        data = np.ones(indices.size)
        return csr_matrix((data, indices, indptr), shape=(self.n, self.m))

    def feature_matrix(self) -> csr_matrix:
        """n×d CSR feature matrix (cached, do not mutate)."""
        return self._feature_csr

    def label_matrix(self) -> csr_matrix:
        """n×m CSR 0/1 label matrix (cached, do not mutate)."""
        return self._label_csr

    def subset(self, indices: Iterable[int]) -> "Dataset":
        """Dataset view over the given instance indices, in the given order."""
        chosen = [self.instances[int(i)] for i in indices]
        return Dataset.from_instances(chosen, d=self.d, m=self.m)


@dataclass
class DatasetStats:
    """
    Label statistics of a dataset.

    imr_per_label[j] = (n - c_j) / c_j, the imbalance ratio of label j; it is NaN
    for labels without positives, which are listed in undefined_labels and
    excluded from imr_mean.
    """
    n: int
    d: int
    m: int
    per_label_positive_count: np.ndarray
    imr_per_label: np.ndarray
    imr_mean: float
    label_cardinality: float
    label_density: float
    undefined_labels: list[int]

    def to_dict(self) -> dict:
        """Convert DatasetStats to dictionary for JSON serialization (NaN → None)."""
        return {
            "n": self.n,
            "d": self.d,
            "m": self.m,
            "per_label_positive_count": self.per_label_positive_count.tolist(),
            "imr_per_label": [
                None if np.isnan(v) else float(v) for v in self.imr_per_label
            ],
            "imr_mean": None if np.isnan(self.imr_mean) else float(self.imr_mean),
            "label_cardinality": float(self.label_cardinality),
            "label_density": float(self.label_density),
            "undefined_labels": list(self.undefined_labels),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DatasetStats":
        """Create DatasetStats from dictionary (JSON deserialization)."""
        imr_mean = data.get("imr_mean")
        return cls(
            n=data["n"],
            d=data["d"],
            m=data["m"],
            per_label_positive_count=np.array(data["per_label_positive_count"], dtype=np.int64),
            imr_per_label=np.array(
                [np.nan if v is None else v for v in data["imr_per_label"]], dtype=np.float64
            ),
            imr_mean=np.nan if imr_mean is None else imr_mean,
            label_cardinality=data["label_cardinality"],
            label_density=data["label_density"],
            undefined_labels=list(data.get("undefined_labels", [])),
        )
