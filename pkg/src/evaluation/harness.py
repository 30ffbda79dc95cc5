"""
K-fold cross-validation harness.

Each fold trains the algorithm on the complement of its test split and
evaluates on the split. Folds are independent and may run on a thread pool;
results are merged back in fold order so the report does not depend on
scheduling.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor

from src.errors import FoldError
from src.evaluation.algorithms import AlgorithmSpec
from src.evaluation.metrics import evaluate
from src.ingestion.splits import kfold_split
from src.models.dataset import Dataset
from src.models.prediction import DEFAULT_RULE, PredictionRule
from src.models.report import FoldResult, MetricsReport
from src.training.random_streams import stream_seed

logger = logging.getLogger(__name__)


def _run_fold(
    fold: int,
    train_ds: Dataset,
    test_ds: Dataset,
    spec: AlgorithmSpec,
    rule: PredictionRule,
) -> FoldResult:
    logger.info(f"Fold {fold}: training {spec.algorithm.value} on {train_ds.n}, testing on {test_ds.n}")
    try:
        start = time.perf_counter()
        predictor = spec.fit(train_ds)
        train_seconds = time.perf_counter() - start
        metrics = evaluate(predictor, test_ds, rule)
    except Exception as e:
        raise FoldError(fold, f"{type(e).__name__}: {e}") from e

    logger.info(
        f"Fold {fold}: hamming={metrics.hamming_loss:.4f}, f={metrics.f_score:.4f}, "
        f"accuracy={metrics.accuracy:.4f} ({train_seconds:.2f}s)"
    )
    return FoldResult(fold=fold, metrics=metrics, train_seconds=train_seconds)


def cross_validate(
    ds: Dataset,
    spec: AlgorithmSpec,
    folds: int = 5,
    seed: int = 0,
    rule: PredictionRule = DEFAULT_RULE,
    jobs: int = 1,
) -> MetricsReport:
    """
    Cross-validate one algorithm.

    Args:
        ds: Full dataset
        spec: Algorithm and hyperparameters (trainer seeds live in the configs)
        folds: Number of folds (2 <= folds <= n)
        seed: Master seed; the fold permutation uses its "split" stream, so
            every algorithm run with the same seed sees identical folds
        rule: Prediction rule used for evaluation
        jobs: Folds trained concurrently

    Returns:
        MetricsReport with mean ± sample std of each metric and per-fold results

    Raises:
        ValueError: If folds is out of range or jobs < 1
        FoldError: If training or evaluation fails in a fold
    """
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    splits = kfold_split(ds, folds, stream_seed(seed, "split"))
    logger.info(
        f"Cross-validating {spec.algorithm.value} (k={spec.k}) with {folds} folds, rule {rule}, jobs={jobs}"
    )

    if jobs == 1:
        per_fold = [_run_fold(i, tr, te, spec, rule) for i, (tr, te) in enumerate(splits)]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            futures = [
                executor.submit(_run_fold, i, tr, te, spec, rule)
                for i, (tr, te) in enumerate(splits)
            ]
            per_fold = [future.result() for future in futures]

    params = {**spec.params(), "folds": folds, "seed": seed, "rule": str(rule)}
    report = MetricsReport.from_folds(spec.algorithm.value, spec.k, per_fold, params)
    logger.info(
        f"{spec.algorithm.value}: hamming {report.hamming_loss.format()}, "
        f"f {report.f_score.format()}, accuracy {report.accuracy.format()}"
    )
    return report
