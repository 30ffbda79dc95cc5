"""
Fitted label-space dimension reduction model.

All LSDR methods share one architecture: a ridge regressor G (d×k) maps
features to codes and a decoder R (k×m) maps codes back to label scores,
p = x G R. Scores are raw (identity output), so the default 0.5 threshold
acts as rounding of the recovered 0/1 labels.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.sparse import csr_matrix

from src.errors import DimensionMismatchError
from src.models.activations import Sigma, Theta
from src.models.dataset import LabelSet
from src.models.embedding import EmbeddingModel
from src.models.prediction import PredictionRule, apply_rule


class LsdrMethod(Enum):
    PLST = "plst"
    CPLST = "cplst"
    FAIE = "faie"
    CSSML = "cssml"

    @property
    def code(self) -> int:
        return list(LsdrMethod).index(self)

    @classmethod
    def from_code(cls, code: int) -> "LsdrMethod":
        methods = list(LsdrMethod)
        if not 0 <= code < len(methods):
            raise ValueError(f"unknown LSDR method code {code}")
        return methods[code]


@dataclass(eq=False)
class LsdrModel:
    """
    Attributes:
        method: Which LSDR method produced the model
        regressor: d×k ridge coefficients mapping features to codes
        decode: k×m matrix mapping codes to label scores
        selected_labels: The k representative labels (CSS_ML only)
        diagnostics: Fit-time numbers (trace objective, rank flags, predictability)
    """
    method: LsdrMethod
    regressor: np.ndarray
    decode: np.ndarray
    selected_labels: list[int] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        self.regressor = np.ascontiguousarray(self.regressor, dtype=np.float64)
        self.decode = np.ascontiguousarray(self.decode, dtype=np.float64)
        if self.regressor.shape[1] != self.decode.shape[0]:
            raise DimensionMismatchError(
                f"regressor has {self.regressor.shape[1]} code columns, "
                f"decoder has {self.decode.shape[0]} code rows"
            )
        if self.method is LsdrMethod.CSSML:
            if len(set(self.selected_labels)) != self.k or len(self.selected_labels) != self.k:
                raise ValueError(f"CSS_ML needs exactly k={self.k} distinct selected labels")

    @property
    def d(self) -> int:
        return self.regressor.shape[0]

    @property
    def k(self) -> int:
        return self.regressor.shape[1]

    @property
    def m(self) -> int:
        return self.decode.shape[1]

    @property
    def parameter_count(self) -> int:
        """d·k + k·m, identical to an EmbeddingModel of the same shape."""
        return self.regressor.size + self.decode.size

    def score_matrix(self, X: csr_matrix) -> np.ndarray:
        if X.shape[1] != self.d:
            raise DimensionMismatchError(f"features have d={X.shape[1]}, model expects d={self.d}")
        return np.asarray(X @ self.regressor) @ self.decode

    def predict_label_sets(self, X: csr_matrix, rule: PredictionRule) -> list[LabelSet]:
        rule.validate_for(Sigma.IDENTITY, self.m)
        return apply_rule(self.score_matrix(X), rule)

    def as_embedding_model(self) -> EmbeddingModel:
        """The same predictor as an identity-activation representation model."""
        return EmbeddingModel(
            W=self.regressor.copy(),
            L=self.decode.copy(),
            theta=Theta.IDENTITY,
            sigma=Sigma.IDENTITY,
        )
