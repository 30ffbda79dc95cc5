"""
Adagrad for the representation model.

Per coordinate: G <- G + g^2, param <- param - eta * g / (sqrt(G) + epsilon).
Label columns outside the batch's touched set keep both their parameters and
their accumulators.
"""

from dataclasses import dataclass

import numpy as np

from src.errors import DimensionMismatchError
from src.models.embedding import EmbeddingModel
from src.training.objective import BatchGradients


@dataclass
class AdagradState:
    """Squared-gradient accumulators shaped like W and L, zero-initialized."""
    G_W: np.ndarray
    G_L: np.ndarray

    @classmethod
    def zeros_like(cls, model: EmbeddingModel) -> "AdagradState":
        return cls(G_W=np.zeros_like(model.W), G_L=np.zeros_like(model.L))


def adagrad_update(
    state: AdagradState,
    model: EmbeddingModel,
    grads: BatchGradients,
    eta: float,
    epsilon: float,
) -> None:
    """
    Apply one Adagrad step in place.

    Args:
        state: Accumulators, updated in place
        model: Parameters, updated in place
        grads: Batch gradients (W dense, L restricted to touched columns)
        eta: Base learning rate
        epsilon: Stabilizer added to sqrt(G)

    Raises:
        DimensionMismatchError: If gradient shapes do not match the model
    """
    if grads.grad_W.shape != model.W.shape or state.G_W.shape != model.W.shape:
        raise DimensionMismatchError(f"W gradient shape {grads.grad_W.shape} != {model.W.shape}")
    if grads.grad_L.shape != (model.k, grads.touched.size):
        raise DimensionMismatchError(
            f"L gradient shape {grads.grad_L.shape} != {(model.k, grads.touched.size)}"
        )

    state.G_W += grads.grad_W * grads.grad_W
    model.W -= eta * grads.grad_W / (np.sqrt(state.G_W) + epsilon)

    if grads.touched.size:
        cols = grads.touched
        G_cols = state.G_L[:, cols] + grads.grad_L * grads.grad_L
        state.G_L[:, cols] = G_cols
        model.L[:, cols] -= eta * grads.grad_L / (np.sqrt(G_cols) + epsilon)
