"""
Activation tags for the representation model.

theta maps xW to the feature representation h; sigma maps the inner product
h·l_j to the label score. Each tag has a stable one-byte code used by the
model file format.
"""

from enum import Enum

import numpy as np
from scipy.special import expit


class Theta(Enum):
    """Feature-map activation applied elementwise to xW."""
    IDENTITY = "identity"
    TANH = "tanh"
    RECTIFIER = "rectifier"

    @property
    def code(self) -> int:
        return _THETA_CODES[self]

    @classmethod
    def from_code(cls, code: int) -> "Theta":
        for theta, value in _THETA_CODES.items():
            if value == code:
                return theta
        raise ValueError(f"unknown theta code {code}")

    def apply(self, pre: np.ndarray) -> np.ndarray:
        if self is Theta.IDENTITY:
            return pre
        if self is Theta.TANH:
            return np.tanh(pre)
        return np.maximum(pre, 0.0)

    def derivative(self, pre: np.ndarray, activated: np.ndarray) -> np.ndarray:
        """d theta / d pre, given both the input and the activated output."""
        if self is Theta.IDENTITY:
            return np.ones_like(pre)
        if self is Theta.TANH:
            return 1.0 - activated * activated
        return (pre > 0).astype(np.float64)


class Sigma(Enum):
    """Output activation applied to raw scores h·l_j."""
    LOGISTIC = "logistic"
    IDENTITY = "identity"

    @property
    def code(self) -> int:
        return _SIGMA_CODES[self]

    @classmethod
    def from_code(cls, code: int) -> "Sigma":
        for sigma, value in _SIGMA_CODES.items():
            if value == code:
                return sigma
        raise ValueError(f"unknown sigma code {code}")

    def apply(self, raw):
        if self is Sigma.LOGISTIC:
            return expit(raw)
        return raw

    def derivative(self, raw, activated):
        """d sigma / d raw."""
        if self is Sigma.LOGISTIC:
            return activated * (1.0 - activated)
        return np.ones_like(raw)


_THETA_CODES = {Theta.IDENTITY: 0, Theta.TANH: 1, Theta.RECTIFIER: 2}
_SIGMA_CODES = {Sigma.LOGISTIC: 0, Sigma.IDENTITY: 1}
