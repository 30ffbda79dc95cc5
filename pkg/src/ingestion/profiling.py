"""
Label-imbalance profiling and label filtering.

The imbalance ratio of label j is ImR_j = (n - c_j) / c_j, the number of
instances the label is irrelevant to over the number it is relevant to; the
dataset ImR is the mean over labels with at least one positive.
"""

import logging

import numpy as np
import pandas as pd

from src.models.dataset import Dataset, DatasetStats, LabelSet

logger = logging.getLogger(__name__)


def compute_stats(ds: Dataset) -> DatasetStats:
    """
    Compute per-label positive counts, imbalance ratios and label cardinality.

    Args:
        ds: Dataset with n >= 1

    Returns:
        DatasetStats; labels without positives get NaN ImR, are listed in
        undefined_labels and are excluded from imr_mean

    Raises:
        ValueError: If the dataset is empty

    Example:
        >>> stats = compute_stats(ds)  # 3 instances, label 0 relevant to one
        >>> stats.imr_per_label[0]
        2.0
    """
    if ds.n < 1:
        raise ValueError("cannot profile an empty dataset")

    counts = np.asarray(ds.label_matrix().sum(axis=0)).ravel().astype(np.int64)
    imr = np.full(ds.m, np.nan)
    defined = counts > 0
    imr[defined] = (ds.n - counts[defined]) / counts[defined]

    undefined = np.flatnonzero(~defined).tolist()
    if undefined:
        logger.warning(f"{len(undefined)} labels have no relevant instances; ImR undefined for them")

    imr_mean = float(np.mean(imr[defined])) if defined.any() else float("nan")
    cardinality = float(counts.sum()) / ds.n
    density = cardinality / ds.m if ds.m else 0.0

    return DatasetStats(
        n=ds.n,
        d=ds.d,
        m=ds.m,
        per_label_positive_count=counts,
        imr_per_label=imr,
        imr_mean=imr_mean,
        label_cardinality=cardinality,
        label_density=density,
        undefined_labels=undefined,
    )


def filter_min_label_frequency(ds: Dataset, t: int) -> tuple[Dataset, dict[int, int]]:
    """
    Drop labels with fewer than t relevant instances and compact label indices.

    Instances left without labels are kept.

    Args:
        ds: Dataset to filter
        t: Minimum positive count a label needs to survive (t >= 1)

    Returns:
        (filtered dataset, old→new label index map of the surviving labels)

    Raises:
        ValueError: If t < 1
    """
    if t < 1:
        raise ValueError(f"minimum label frequency must be >= 1, got {t}")

    counts = np.asarray(ds.label_matrix().sum(axis=0)).ravel()
    kept = np.flatnonzero(counts >= t)
    index_map = {int(old): new for new, old in enumerate(kept)}
    if not index_map:
        logger.warning(f"No label has at least {t} relevant instances; result has m=0")

    instances = [
        (x, LabelSet.of(index_map[j] for j in labels if j in index_map))
        for x, labels in ds.instances
    ]
    logger.info(f"Kept {len(index_map)}/{ds.m} labels with >= {t} relevant instances")
    return Dataset(n=ds.n, d=ds.d, m=len(index_map), instances=tuple(instances)), index_map


def imr_histogram(stats: DatasetStats, bins: int = 20) -> pd.DataFrame:
    """
    Histogram of the defined per-label imbalance ratios, for plotting.

    Returns:
        DataFrame with columns bin_left, bin_right, count
    """
    values = stats.imr_per_label[~np.isnan(stats.imr_per_label)]
    if values.size == 0:
        return pd.DataFrame({"bin_left": [], "bin_right": [], "count": []})
    counts, edges = np.histogram(values, bins=bins)
    return pd.DataFrame({"bin_left": edges[:-1], "bin_right": edges[1:], "count": counts})


def format_stats(stats: DatasetStats) -> str:
    """
    Format dataset statistics for human-readable display.

    Example:
        >>> print(format_stats(compute_stats(ds)))
        ============================================================
        DATASET PROFILE
        ...
    """
    defined = stats.imr_per_label[~np.isnan(stats.imr_per_label)]
    output_lines = []

    output_lines.append("=" * 60)
    output_lines.append("DATASET PROFILE")
    output_lines.append("=" * 60)
    output_lines.append("")
    output_lines.append(f"  Instances (n): {stats.n}")
    output_lines.append(f"  Features (d): {stats.d}")
    output_lines.append(f"  Labels (m): {stats.m}")
    output_lines.append(f"  Label cardinality: {stats.label_cardinality:.3f}")
    output_lines.append(f"  Label density: {stats.label_density:.4f}")
    output_lines.append("")
    output_lines.append("Imbalance ratio (ImR):")
    if defined.size:
        output_lines.append(f"  Mean: {stats.imr_mean:.2f}")
        output_lines.append(f"  Median: {float(np.median(defined)):.2f}")
        output_lines.append(f"  Max: {float(np.max(defined)):.2f}")
    else:
        output_lines.append("  undefined (no label has relevant instances)")
    output_lines.append(f"  Labels without positives: {len(stats.undefined_labels)}")
    output_lines.append("")
    output_lines.append("=" * 60)

    return "\n".join(output_lines)
