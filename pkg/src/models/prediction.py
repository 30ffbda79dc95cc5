"""
Prediction rules turning real-valued label scores into label sets.

Two rules are supported: a cutoff on the activated score (inclusive) and a
fixed number of top-scoring labels. Ties always go to the smaller label index.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.models.activations import Sigma
from src.models.dataset import LabelSet


class RuleKind(Enum):
    THRESHOLD = "threshold"
    TOP_K = "topk"


@dataclass(frozen=True)
class PredictionRule:
    """
    How scores become a predicted LabelSet.

    Attributes:
        kind: THRESHOLD (value is the cutoff) or TOP_K (value is the label count)
        value: Cutoff on the activated score, or positive label count
    """
    kind: RuleKind
    value: float

    def __post_init__(self):
        if self.kind is RuleKind.TOP_K:
            if int(self.value) != self.value or self.value < 1:
                raise ValueError(f"top-k rule needs a positive integer, got {self.value}")
            object.__setattr__(self, "value", int(self.value))

    @classmethod
    def threshold(cls, cutoff: float = 0.5) -> "PredictionRule":
        return cls(RuleKind.THRESHOLD, float(cutoff))

    @classmethod
    def top_k(cls, k: int) -> "PredictionRule":
        return cls(RuleKind.TOP_K, k)

    @classmethod
    def parse(cls, text: str) -> "PredictionRule":
        """
        Parse the command-line form of a rule.

        Args:
            text: "threshold:<cutoff>" or "topk:<K>"

        Returns:
            The parsed PredictionRule

        Raises:
            ValueError: If the text does not match either form

        Example:
            >>> PredictionRule.parse("topk:3")
            PredictionRule(kind=<RuleKind.TOP_K: 'topk'>, value=3)
        """
        name, sep, value = text.partition(":")
        if not sep:
            raise ValueError(f"rule must look like threshold:0.5 or topk:K, got '{text}'")
        try:
            kind = RuleKind(name.strip().lower())
        except ValueError:
            raise ValueError(f"unknown rule '{name}' (expected threshold or topk)") from None
        try:
            number = float(value)
        except ValueError:
            raise ValueError(f"rule value must be numeric, got '{value}'") from None
        return cls(kind, number)

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.value}"

    def validate_for(self, sigma: Sigma, m: int) -> None:
        """Check the rule makes sense for a model's output activation and label count."""
        if self.kind is RuleKind.THRESHOLD:
            if sigma is Sigma.LOGISTIC and not 0.0 < self.value < 1.0:
                raise ValueError(
                    f"threshold must lie in (0, 1) for logistic scores, got {self.value}"
                )
        elif self.value > m:
            raise ValueError(f"top-k rule asks for {self.value} labels but m={m}")


DEFAULT_RULE = PredictionRule.threshold(0.5)


def apply_rule(scores: np.ndarray, rule: PredictionRule) -> list[LabelSet]:
    """
    Apply a prediction rule row by row.

    Args:
        scores: n×m activated scores (a 1-d vector is treated as one row)
        rule: Threshold (score >= cutoff) or top-k (ties toward smaller index)

    Returns:
        One LabelSet per row
    """
    scores = np.atleast_2d(scores)
    if rule.kind is RuleKind.THRESHOLD:
        return [LabelSet.of(np.flatnonzero(row >= rule.value).tolist()) for row in scores]

    # stable sort of negated scores keeps the smaller index first among ties
    order = np.argsort(-scores, axis=1, kind="stable")[:, : rule.value]
    return [LabelSet.of(row.tolist()) for row in order]
