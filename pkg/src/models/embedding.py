"""
Representation model shared by RMLS, WSABIE and LEML.

An instance x is mapped to h = theta(xW) and label j is scored with
sigma(h · l_j), where l_j is column j of L. The model is also the target
form of LSDR models (W = regressor, L = decoder) with identity activations.
"""

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix

from src.errors import DimensionMismatchError
from src.models.activations import Sigma, Theta
from src.models.dataset import LabelSet
from src.models.prediction import PredictionRule, apply_rule


@dataclass(eq=False)
class EmbeddingModel:
    """
    Feature mapping W (d×k), label matrix L (k×m) and activation tags.

    The trainer mutates W and L in place; everything else treats the model
    as read-only.
    """
    W: np.ndarray
    L: np.ndarray
    theta: Theta = Theta.IDENTITY
    sigma: Sigma = Sigma.LOGISTIC

    def __post_init__(self):
        self.W = np.ascontiguousarray(self.W, dtype=np.float64)
        self.L = np.ascontiguousarray(self.L, dtype=np.float64)
        if self.W.ndim != 2 or self.L.ndim != 2:
            raise ValueError("W and L must be 2-d matrices")
        if self.W.shape[1] != self.L.shape[0]:
            raise DimensionMismatchError(
                f"W is {self.W.shape[0]}x{self.W.shape[1]} but L is "
                f"{self.L.shape[0]}x{self.L.shape[1]}; inner dimensions must agree"
            )
        if not (np.all(np.isfinite(self.W)) and np.all(np.isfinite(self.L))):
            raise ValueError("model parameters must be finite")

    @property
    def d(self) -> int:
        return self.W.shape[0]

    @property
    def k(self) -> int:
        return self.W.shape[1]

    @property
    def m(self) -> int:
        return self.L.shape[1]

    @property
    def parameter_count(self) -> int:
        """d·k + k·m."""
        return self.W.size + self.L.size

    def copy(self) -> "EmbeddingModel":
        return EmbeddingModel(self.W.copy(), self.L.copy(), self.theta, self.sigma)

    def represent_matrix(self, X: csr_matrix) -> np.ndarray:
        """n×k representations theta(XW) for an n×d feature matrix."""
        if X.shape[1] != self.d:
            raise DimensionMismatchError(f"features have d={X.shape[1]}, model expects d={self.d}")
        return self.theta.apply(np.asarray(X @ self.W))

    def score_matrix(self, X: csr_matrix) -> np.ndarray:
        """n×m activated scores sigma(theta(XW) L)."""
        return self.sigma.apply(self.represent_matrix(X) @ self.L)

    def predict_label_sets(self, X: csr_matrix, rule: PredictionRule) -> list[LabelSet]:
        rule.validate_for(self.sigma, self.m)
        return apply_rule(self.score_matrix(X), rule)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EmbeddingModel):
            return NotImplemented
        return (
            self.theta is other.theta
            and self.sigma is other.sigma
            and np.array_equal(self.W, other.W)
            and np.array_equal(self.L, other.L)
        )
