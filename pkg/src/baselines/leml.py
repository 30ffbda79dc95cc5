"""
LEML: low-rank empirical risk minimization with squared loss, solved by
alternating ridge regressions.

    minimize ||Y - XWL||_F^2 + lam (||W||_F^2 + ||L||_F^2)

With L fixed the W-step is exact: rotating W by the eigenbasis U of LLᵀ
(eigenvalues s_c) decouples the normal equations into one d×d system per code
dimension, (s_c XᵀX + lam I) w_c = (XᵀY Lᵀ U)_c. With W fixed the L-step is an
ordinary k×k ridge solve. Each half-sweep is an exact block minimization, so
the objective never increases.
"""

import logging
import time
import warnings

import numpy as np
from scipy import linalg

from src.embedding.inference import init_model
from src.models.activations import Sigma, Theta
from src.models.configs import LemlConfig
from src.models.dataset import Dataset
from src.models.embedding import EmbeddingModel
from src.training.random_streams import stream_seed
from src.training.trainer import EpochProgress, ProgressSink

logger = logging.getLogger(__name__)

JITTER = 1e-10


def _solve_normal_equations(gram: np.ndarray, rhs: np.ndarray, lam: float) -> np.ndarray:
    """Solve (gram + lam I) z = rhs, adding JITTER to the diagonal if the system is singular."""
    system = gram + lam * np.eye(gram.shape[0])
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error", linalg.LinAlgWarning)
            return linalg.solve(system, rhs, assume_a="pos")
    except (linalg.LinAlgError, linalg.LinAlgWarning):
        logger.warning(f"Singular normal equations; adding {JITTER} to the diagonal")
        return linalg.solve(system + JITTER * np.eye(gram.shape[0]), rhs, assume_a="sym")


def leml_objective(X, Y: np.ndarray, W: np.ndarray, L: np.ndarray, lam: float) -> float:
    """||Y - XWL||_F^2 + lam (||W||_F^2 + ||L||_F^2)."""
    residual = Y - np.asarray(X @ W) @ L
    return float(np.sum(residual * residual) + lam * (np.sum(W * W) + np.sum(L * L)))


def _solve_W(XtX: np.ndarray, XtY: np.ndarray, L: np.ndarray, lam: float) -> np.ndarray:
    s, U = linalg.eigh(L @ L.T)
    rhs = XtY @ L.T @ U
    rotated = np.empty_like(rhs)
    for c in range(L.shape[0]):
        rotated[:, c] = _solve_normal_equations(max(s[c], 0.0) * XtX, rhs[:, c], lam)
    return rotated @ U.T


def _solve_L(XW: np.ndarray, Y: np.ndarray, lam: float) -> np.ndarray:
    return _solve_normal_equations(XW.T @ XW, XW.T @ Y, lam)


def leml_train(
    ds: Dataset,
    config: LemlConfig,
    progress_sink: ProgressSink | None = None,
) -> EmbeddingModel:
    """
    Fit W (d×k) and L (k×m) by alternating exact ridge solves.

    Args:
        ds: Training data
        config: k, lam and the number of sweeps (each sweep is a W-step then an L-step)
        progress_sink: Optional callable receiving the objective after every
            half-sweep (numbered 1 .. 2·sweeps)

    Returns:
        EmbeddingModel with identity activations
    """
    model = init_model(
        ds.d, config.k, ds.m,
        seed=stream_seed(config.seed, "init"),
        theta=Theta.IDENTITY,
        sigma=Sigma.IDENTITY,
    )
    X = ds.feature_matrix()
    Y = ds.label_matrix().toarray()
    XtX = np.asarray((X.T @ X).toarray())
    XtY = np.asarray(X.T @ Y)
    W, L = model.W, model.L

    logger.info(f"Training LEML: n={ds.n}, d={ds.d}, m={ds.m}, k={config.k}, lambda={config.lam}")
    objective = leml_objective(X, Y, W, L, config.lam)
    logger.info(f"  Initial objective {objective:.6f}")
    start = time.perf_counter()

    half_sweep = 0
    for sweep in range(1, config.sweeps + 1):
        W = _solve_W(XtX, XtY, L, config.lam)
        half_sweep += 1
        _emit(progress_sink, half_sweep, leml_objective(X, Y, W, L, config.lam), start)

        L = _solve_L(np.asarray(X @ W), Y, config.lam)
        half_sweep += 1
        objective = leml_objective(X, Y, W, L, config.lam)
        _emit(progress_sink, half_sweep, objective, start)
        logger.info(f"  Sweep {sweep}/{config.sweeps}: objective {objective:.6f}")

    return EmbeddingModel(W=W, L=L, theta=Theta.IDENTITY, sigma=Sigma.IDENTITY)


def _emit(sink: ProgressSink | None, step: int, objective: float, start: float) -> None:
    if sink is not None:
        sink(EpochProgress(epoch=step, mean_objective=objective, elapsed_seconds=time.perf_counter() - start))
