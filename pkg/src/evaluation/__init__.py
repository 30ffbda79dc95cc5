"""Evaluation of multi-label predictors.

Handles:
- Hamming loss, F score and Accuracy (per-instance means)
- The algorithm registry and the all-irrelevant baseline
- K-fold cross validation and report artifacts
"""
from .algorithms import Algorithm, AlgorithmSpec, BaselinePredictor
from .harness import cross_validate
from .metrics import accuracy, evaluate, f_score, hamming_loss
from .reporting import compare_tables, format_report, markdown_row, sweep_frame, write_report_artifacts

__all__ = [
    "hamming_loss",
    "f_score",
    "accuracy",
    "evaluate",
    "Algorithm",
    "AlgorithmSpec",
    "BaselinePredictor",
    "cross_validate",
    "format_report",
    "markdown_row",
    "write_report_artifacts",
    "compare_tables",
    "sweep_frame",
]
