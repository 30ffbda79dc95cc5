"""RMLS training.

Handles:
- Per-label losses and their derivatives
- Uniform negative sampling
- The sampled batch objective and its gradients
- Adagrad updates and the mini-batch training loop
"""
from .losses import point_loss
from .objective import batch_gradients, batch_objective, cost_sensitive_loss, sampled_instance_loss
from .optimizer import AdagradState, adagrad_update
from .random_streams import stream_seed
from .sampling import sample_negatives
from .trainer import CsvProgressSink, EpochProgress, train

__all__ = [
    "point_loss",
    "sample_negatives",
    "sampled_instance_loss",
    "cost_sensitive_loss",
    "batch_objective",
    "batch_gradients",
    "AdagradState",
    "adagrad_update",
    "stream_seed",
    "EpochProgress",
    "CsvProgressSink",
    "train",
]
