"""
Mini-batch SGD trainer for the negative-sampling objective.

Each epoch reshuffles the instances, cuts them into batches, draws fresh
negatives for every instance of every batch, and takes one Adagrad step per
batch. Shuffling and sampling use separate seeded streams.
"""

import csv
import logging
import time
from dataclasses import dataclass
from typing import Callable, TextIO

import numpy as np

from src.errors import NumericalError
from src.embedding.inference import init_model
from src.models.configs import TrainConfig
from src.models.dataset import Dataset
from src.models.embedding import EmbeddingModel
from src.training.objective import objective_and_gradients
from src.training.optimizer import AdagradState, adagrad_update
from src.training.random_streams import stream_rng, stream_seed
from src.training.sampling import sample_negatives

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EpochProgress:
    """Progress record emitted once per epoch (or per half-sweep for LEML)."""
    epoch: int
    mean_objective: float
    elapsed_seconds: float


ProgressSink = Callable[[EpochProgress], None]


class CsvProgressSink:
    """
    Writes progress as CSV rows "epoch,mean_objective,elapsed_seconds".

    Usage:
        with open("progress.csv", "w", newline="") as f:
            model = train(ds, config, progress_sink=CsvProgressSink(f))
    """

    HEADER = ("epoch", "mean_objective", "elapsed_seconds")

    def __init__(self, stream: TextIO):
        self._writer = csv.writer(stream, lineterminator="\n")
        self._writer.writerow(self.HEADER)
        self.records: list[EpochProgress] = []

    def __call__(self, progress: EpochProgress) -> None:
        self.records.append(progress)
        self._writer.writerow(
            [progress.epoch, repr(progress.mean_objective), f"{progress.elapsed_seconds:.3f}"]
        )


def _check_finite(model: EmbeddingModel, objective: float, epoch: int, batch: int, eta: float) -> None:
    if np.isfinite(objective) and np.all(np.isfinite(model.W)) and np.all(np.isfinite(model.L)):
        return
    raise NumericalError(
        f"Non-finite objective or parameters at epoch {epoch}, batch {batch}. "
        f"The learning rate eta={eta} is likely too large; lower eta or init_scale and retry."
    )


def train(
    ds: Dataset,
    config: TrainConfig,
    progress_sink: ProgressSink | None = None,
) -> EmbeddingModel:
    """
    Train a representation model with uniform negative sampling and Adagrad.

    Args:
        ds: Training data (n >= 1)
        config: Hyperparameters; config.seed is expanded into init, shuffle and
            sampling streams
        progress_sink: Optional callable receiving one EpochProgress per epoch

    Returns:
        Trained EmbeddingModel

    Raises:
        ValueError: If the dataset is empty
        NumericalError: If the objective or the parameters become non-finite

    Example:
        >>> model = train(ds, TrainConfig(k=50, alpha=5, lam=0.001, epochs=30))
        >>> model.parameter_count == ds.d * 50 + 50 * ds.m
        True
    """
    if ds.n < 1:
        raise ValueError("cannot train on an empty dataset")

    model = init_model(
        ds.d, config.k, ds.m,
        seed=stream_seed(config.seed, "init"),
        scale=config.init_scale,
        theta=config.theta,
        sigma=config.sigma,
    )
    state = AdagradState.zeros_like(model)
    shuffle_rng = stream_rng(config.seed, "shuffle")
    sampling_rng = stream_rng(config.seed, "sampling")

    X = ds.feature_matrix()
    label_sets = ds.label_sets

    logger.info(
        f"Training RMLS: n={ds.n}, d={ds.d}, m={ds.m}, k={config.k}, alpha={config.alpha}, "
        f"lambda={config.lam}, loss={config.loss.value}, epochs={config.epochs}"
    )
    start = time.perf_counter()

    for epoch in range(1, config.epochs + 1):
        order = shuffle_rng.permutation(ds.n)
        objectives = []

        for batch_number, begin in enumerate(range(0, ds.n, config.batch_size)):
            idx = order[begin:begin + config.batch_size]
            positives = [label_sets[i] for i in idx]
            negatives = [sample_negatives(P, ds.m, config.alpha, sampling_rng) for P in positives]

            objective, grads = objective_and_gradients(
                model, X[idx], positives, negatives, config.lam, config.loss
            )
            _check_finite(model, objective, epoch, batch_number, config.eta)
            adagrad_update(state, model, grads, config.eta, config.epsilon)
            _check_finite(model, objective, epoch, batch_number, config.eta)
            objectives.append(objective)

        progress = EpochProgress(
            epoch=epoch,
            mean_objective=float(np.mean(objectives)),
            elapsed_seconds=time.perf_counter() - start,
        )
        logger.info(f"  Epoch {epoch}/{config.epochs}: mean objective {progress.mean_objective:.4f}")
        if progress_sink is not None:
            progress_sink(progress)

    logger.info(f"Training complete in {time.perf_counter() - start:.2f}s")
    return model
