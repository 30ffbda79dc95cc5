"""
Evaluation result models.

EvaluationResult holds dataset-mean metrics of one predictor on one dataset;
MetricsReport aggregates one EvaluationResult per cross-validation fold into
mean ± sample standard deviation per metric.
"""

from dataclasses import dataclass, field

import numpy as np

METRIC_NAMES = ("hamming_loss", "f_score", "accuracy")


@dataclass(frozen=True)
class EvaluationResult:
    """
    Per-instance metrics averaged over a dataset.

    Attributes:
        hamming_loss: Mean normalized symmetric difference
        f_score: Mean per-instance F score (Dice)
        accuracy: Mean per-instance Jaccard index
        num_instances: Instances evaluated
        empty_convention_count: Instances where an empty-set convention decided F or Accuracy
    """
    hamming_loss: float
    f_score: float
    accuracy: float
    num_instances: int = 0
    empty_convention_count: int = 0

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.hamming_loss, self.f_score, self.accuracy)

    def to_dict(self) -> dict:
        return {
            "hamming_loss": self.hamming_loss,
            "f_score": self.f_score,
            "accuracy": self.accuracy,
            "num_instances": self.num_instances,
            "empty_convention_count": self.empty_convention_count,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EvaluationResult":
        return cls(
            hamming_loss=data["hamming_loss"],
            f_score=data["f_score"],
            accuracy=data["accuracy"],
            num_instances=data.get("num_instances", 0),
            empty_convention_count=data.get("empty_convention_count", 0),
        )


@dataclass(frozen=True)
class MetricSummary:
    """Mean and sample standard deviation of one metric across folds."""
    mean: float
    std: float

    @classmethod
    def of(cls, values: list[float]) -> "MetricSummary":
        values = np.asarray(values, dtype=np.float64)
        std = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
        return cls(mean=float(np.mean(values)), std=std)

    def format(self, digits: int = 3) -> str:
        return f"{self.mean:.{digits}f}±{self.std:.{digits}f}"


@dataclass(frozen=True)
class FoldResult:
    fold: int
    metrics: EvaluationResult
    train_seconds: float

    def to_dict(self) -> dict:
        return {
            "fold": self.fold,
            "metrics": self.metrics.to_dict(),
            "train_seconds": self.train_seconds,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FoldResult":
        return cls(
            fold=data["fold"],
            metrics=EvaluationResult.from_dict(data["metrics"]),
            train_seconds=data["train_seconds"],
        )


@dataclass
class MetricsReport:
    """
    Cross-validation report of one algorithm at one latent dimension.

    Attributes:
        algorithm: Algorithm tag (rmls, plst, ..., baseline)
        k: Latent/code dimension (None for the baseline)
        hamming_loss / f_score / accuracy: mean ± std across folds
        per_fold: Metric triple and training time of every fold, in fold order
        params: Hyperparameters the algorithm was run with
    """
    algorithm: str
    k: int | None
    hamming_loss: MetricSummary
    f_score: MetricSummary
    accuracy: MetricSummary
    per_fold: list[FoldResult]
    params: dict = field(default_factory=dict)

    @classmethod
    def from_folds(
        cls,
        algorithm: str,
        k: int | None,
        per_fold: list[FoldResult],
        params: dict | None = None,
    ) -> "MetricsReport":
        return cls(
            algorithm=algorithm,
            k=k,
            hamming_loss=MetricSummary.of([f.metrics.hamming_loss for f in per_fold]),
            f_score=MetricSummary.of([f.metrics.f_score for f in per_fold]),
            accuracy=MetricSummary.of([f.metrics.accuracy for f in per_fold]),
            per_fold=list(per_fold),
            params=dict(params or {}),
        )

    @property
    def wall_time_seconds(self) -> list[float]:
        return [f.train_seconds for f in self.per_fold]

    def summary(self, metric: str) -> MetricSummary:
        if metric not in METRIC_NAMES:
            raise ValueError(f"unknown metric '{metric}'")
        return getattr(self, metric)

    def to_dict(self) -> dict:
        """Convert MetricsReport to dictionary for JSON serialization."""
        return {
            "algorithm": self.algorithm,
            "k": self.k,
            **{
                name: {"mean": self.summary(name).mean, "std": self.summary(name).std}
                for name in METRIC_NAMES
            },
            "per_fold": [f.to_dict() for f in self.per_fold],
            "wall_time_seconds": self.wall_time_seconds,
            "params": self.params,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MetricsReport":
        """Create MetricsReport from dictionary (JSON deserialization)."""
        summaries = {
            name: MetricSummary(mean=data[name]["mean"], std=data[name]["std"])
            for name in METRIC_NAMES
        }
        return cls(
            algorithm=data["algorithm"],
            k=data.get("k"),
            per_fold=[FoldResult.from_dict(f) for f in data.get("per_fold", [])],
            params=data.get("params", {}),
            **summaries,
        )
