"""Representation model inference and persistence.

Handles:
- Initialization, feature representation, label scores and predictions
- Binary model files for representation and LSDR models
"""
from .inference import init_model, predict_labels, predict_scores, represent, score
from .persistence import load_any_model, load_model, save_lsdr_model, save_model

__all__ = [
    "init_model",
    "represent",
    "score",
    "predict_scores",
    "predict_labels",
    "save_model",
    "load_model",
    "save_lsdr_model",
    "load_any_model",
]
