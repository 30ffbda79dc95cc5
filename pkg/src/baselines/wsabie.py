"""
WSABIE: a representation model trained with the WARP loss.

Each step picks a random (instance, relevant label p) pair and samples
irrelevant labels uniformly until one violates the margin, i.e.
s_neg + margin > s_pos. The number of trials needed estimates the rank of p,
and the hinge step is weighted by a harmonic transform of that estimate.
Label vectors are projected back into the unit ball after every update.
"""

import logging
import time

import numpy as np

from src.errors import NumericalError
from src.embedding.inference import init_model
from src.models.activations import Sigma, Theta
from src.models.configs import WarpConfig
from src.models.dataset import Dataset
from src.models.embedding import EmbeddingModel
from src.training.random_streams import stream_rng, stream_seed
from src.training.trainer import EpochProgress, ProgressSink

logger = logging.getLogger(__name__)


def warp_rank_weight(trials: int, m_neg: int) -> float:
    """
    Rank weight of a violation found after `trials` draws among m_neg negatives.

    The rank estimate floor(m_neg / trials) is mapped through the harmonic
    sum 1 + 1/2 + ... + 1/rank.

    Example:
        >>> warp_rank_weight(1, 3)
        1.8333333333333333
    """
    if not 1 <= trials <= m_neg:
        raise ValueError(f"trials must lie in [1, {m_neg}], got {trials}")
    rank = m_neg // trials
    return float(np.sum(1.0 / np.arange(1, rank + 1)))


def _project_columns(L: np.ndarray, columns) -> None:
    norms = np.linalg.norm(L[:, columns], axis=0)
    scale = np.where(norms > 1.0, 1.0 / np.maximum(norms, 1e-300), 1.0)
    L[:, columns] *= scale


def _draw_negative(positives: set[int], m: int, rng: np.random.Generator) -> int:
    while True:
        j = int(rng.integers(0, m))
        if j not in positives:
            return j


def wsabie_train(
    ds: Dataset,
    config: WarpConfig,
    progress_sink: ProgressSink | None = None,
) -> EmbeddingModel:
    """
    Train a linear representation model with WARP-weighted SGD.

    One epoch has as many steps as there are (instance, relevant label)
    pairs. The learning rate is constant; lam is an L2 weight decay applied
    to the rows of W and the two label columns each step touches.

    Args:
        ds: Training data
        config: WARP hyperparameters (max_trials None means m - 1)
        progress_sink: Optional callable receiving one EpochProgress per epoch
            (mean weighted hinge over the epoch's steps)

    Returns:
        EmbeddingModel with identity activations and ||l_j|| <= 1

    Raises:
        NumericalError: If the parameters become non-finite
    """
    model = init_model(
        ds.d, config.k, ds.m,
        seed=stream_seed(config.seed, "init"),
        scale=config.init_scale,
        theta=Theta.IDENTITY,
        sigma=Sigma.IDENTITY,
    )
    _project_columns(model.L, np.arange(ds.m))

    X = ds.feature_matrix()
    label_sets = ds.label_sets
    eligible = [i for i, P in enumerate(label_sets) if 0 < len(P) < ds.m]
    if not eligible:
        logger.warning("No instance has both relevant and irrelevant labels; WSABIE returns its initialization")
        return model

    steps = sum(len(label_sets[i]) for i in eligible)
    max_trials = config.max_trials if config.max_trials is not None else max(ds.m - 1, 1)
    rng = stream_rng(config.seed, "sampling")
    W, L = model.W, model.L

    logger.info(
        f"Training WSABIE: n={ds.n}, m={ds.m}, k={config.k}, eta={config.eta}, "
        f"margin={config.margin}, max_trials={max_trials}, {steps} steps per epoch"
    )
    start = time.perf_counter()

    for epoch in range(1, config.epochs + 1):
        total_loss = 0.0
        violations = 0

        for _ in range(steps):
            i = eligible[int(rng.integers(0, len(eligible)))]
            P = label_sets[i]
            p = P.labels[int(rng.integers(0, len(P)))]
            rows = X.indices[X.indptr[i]:X.indptr[i + 1]]
            values = X.data[X.indptr[i]:X.indptr[i + 1]]

            h = values @ W[rows]
            s_pos = float(h @ L[:, p])
            positives = set(P.labels)
            m_neg = ds.m - len(P)

            for trials in range(1, max_trials + 1):
                j = _draw_negative(positives, ds.m, rng)
                hinge = config.margin - s_pos + float(h @ L[:, j])
                if hinge > 0:
                    break
            else:
                continue

            weight = warp_rank_weight(min(trials, m_neg), m_neg)
            total_loss += weight * hinge
            violations += 1

            grad_h = weight * (L[:, j] - L[:, p])
            grad_W = np.outer(values, grad_h) + 2.0 * config.lam * W[rows]
            grad_p = -weight * h + 2.0 * config.lam * L[:, p]
            grad_j = weight * h + 2.0 * config.lam * L[:, j]

            W[rows] -= config.eta * grad_W
            L[:, p] -= config.eta * grad_p
            L[:, j] -= config.eta * grad_j
            _project_columns(L, [p, j])

            if not (np.all(np.isfinite(W[rows])) and np.all(np.isfinite(L[:, [p, j]]))):
                raise NumericalError(
                    f"Non-finite WSABIE parameters in epoch {epoch}. "
                    f"The learning rate eta={config.eta} is likely too large; lower it and retry."
                )

        progress = EpochProgress(
            epoch=epoch,
            mean_objective=total_loss / steps,
            elapsed_seconds=time.perf_counter() - start,
        )
        logger.info(
            f"  Epoch {epoch}/{config.epochs}: mean WARP loss {progress.mean_objective:.4f}, "
            f"{violations}/{steps} violating steps"
        )
        if progress_sink is not None:
            progress_sink(progress)

    return model


def warp_violation_rate(model: EmbeddingModel, ds: Dataset, margin: float = 1.0) -> float:
    """
    Share of (instance, relevant label) pairs with at least one margin violation.

    A pair (i, p) is violated when some irrelevant label j scores
    s_j + margin > s_p. Instances whose label set is empty or complete have no
    pairs to check.
    """
    scores = model.represent_matrix(ds.feature_matrix()) @ model.L
    violated = 0
    total = 0
    for row, P in zip(scores, ds.label_sets):
        if not 0 < len(P) < ds.m:
            continue
        positives = P.as_array()
        mask = np.ones(ds.m, dtype=bool)
        mask[positives] = False
        hardest = float(np.max(row[mask]))
        violated += int(np.sum(row[positives] < hardest + margin))
        total += positives.size
    return violated / total if total else 0.0
