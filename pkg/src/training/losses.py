"""
Per-label classification losses and their derivatives w.r.t. the raw score.

For a raw score z = h·l_j, activated score a = sigma(z) and target y in {0, 1}:

    cross_entropy   -[y ln a + (1-y) ln(1-a)]      d/dz = a - y            (logistic sigma)
    least_squares   (a - y)^2                       d/dz = 2 (a - y) sigma'(z)
    l2_hinge        max(0, 1 - s z)^2, s = 2y - 1   d/dz = -2 s max(0, 1 - s z)  (identity sigma)

All functions accept scalars or equally shaped arrays.
"""

import logging

import numpy as np

from src.models.activations import Sigma
from src.models.configs import LossKind

logger = logging.getLogger(__name__)

PROBABILITY_FLOOR = 1e-12


def point_loss(
    kind: LossKind,
    raw,
    activated,
    y,
    sigma: Sigma = Sigma.LOGISTIC,
):
    """
    Loss and derivative of one (or many) label predictions.

    Args:
        kind: Loss function
        raw: Raw score(s) h·l_j
        activated: sigma(raw), as computed by the model
        y: Target(s), 1 for relevant and 0 for irrelevant
        sigma: Output activation, needed for the least-squares chain rule

    Returns:
        (loss, dloss/draw), floats for scalar input, arrays otherwise

    Example:
        >>> point_loss(LossKind.CROSS_ENTROPY, 0.0, 0.5, 1)
        (0.6931471805599453, -0.5)
    """
    scalar = np.ndim(raw) == 0 and np.ndim(activated) == 0 and np.ndim(y) == 0
    raw = np.asarray(raw, dtype=np.float64)
    a = np.asarray(activated, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)

    if kind is LossKind.CROSS_ENTROPY:
        clamped = np.clip(a, PROBABILITY_FLOOR, 1.0 - PROBABILITY_FLOOR)
        if np.any(clamped != a):
            logger.debug(f"cross entropy clamped {int(np.sum(clamped != a))} probabilities")
        loss = -(y * np.log(clamped) + (1.0 - y) * np.log1p(-clamped))
        grad = a - y
    elif kind is LossKind.LEAST_SQUARES:
        residual = a - y
        loss = residual * residual
        grad = 2.0 * residual * sigma.derivative(raw, a)
    elif kind is LossKind.L2_HINGE:
        s = 2.0 * y - 1.0
        margin = np.maximum(0.0, 1.0 - s * raw)
        loss = margin * margin
        grad = -2.0 * s * margin
    else:
        raise ValueError(f"unknown loss {kind}")

    if scalar:
        return float(loss), float(grad)
    return loss, grad
