"""
Dataset ingestion.

Parses sparse multi-label files, profiles label imbalance, filters rare
labels and produces reproducible cross-validation splits.
"""

from .loaders import load_dataset, parse_multilabel_file, write_multilabel_file
from .profiling import compute_stats, filter_min_label_frequency, format_stats
from .splits import kfold_split

__all__ = [
    "load_dataset",
    "parse_multilabel_file",
    "write_multilabel_file",
    "compute_stats",
    "filter_min_label_frequency",
    "format_stats",
    "kfold_split",
]
