"""
Command implementations behind app.py.

Every command prints a human-readable summary and writes machine-readable
artifacts to the run's output directory. Files are written atomically.
"""

import io
import json
import logging
from pathlib import Path

import pandas as pd

from src.cli.run_spec import RunSpec
from src.embedding.persistence import load_any_model, model_to_bytes
from src.errors import DimensionMismatchError
from src.evaluation.harness import cross_validate
from src.evaluation.metrics import evaluate
from src.evaluation.reporting import (
    compare_tables,
    format_compare,
    format_report,
    metrics_frame,
    sweep_frame,
    timing_frame,
    write_atomic,
    write_report_artifacts,
)
from src.ingestion.loaders import load_dataset, write_multilabel_file
from src.ingestion.profiling import compute_stats, filter_min_label_frequency, format_stats, imr_histogram
from src.models.dataset import DatasetStats
from src.models.report import MetricsReport
from src.training.trainer import CsvProgressSink

logger = logging.getLogger(__name__)


def _load(spec: RunSpec):
    return load_dataset(spec.dataset, one_based=spec.one_based)


def _write_bytes_atomic(path: Path, payload: bytes) -> None:
    tmp = path.with_name(f".{path.name}.tmp")
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp.write_bytes(payload)
    tmp.replace(path)


def cmd_profile(spec: RunSpec) -> DatasetStats:
    """
    Profile a dataset: sizes, label cardinality and imbalance ratios.

    Writes profile.json and imr_histogram.csv. With min_label_frequency set,
    rare labels are dropped first and the filtered dataset (filtered_dataset.txt)
    and the old→new label map (label_map.json) are written as well.
    """
    ds = _load(spec)
    out_dir = Path(spec.out_dir)

    if spec.min_label_frequency is not None:
        ds, index_map = filter_min_label_frequency(ds, spec.min_label_frequency)
        filtered_path = out_dir / "filtered_dataset.txt"
        buffer = io.StringIO()
        write_multilabel_file(ds, buffer, one_based=spec.one_based)
        write_atomic(filtered_path, buffer.getvalue())
        write_atomic(
            out_dir / "label_map.json",
            json.dumps({str(old): new for old, new in index_map.items()}, indent=2) + "\n",
        )
        logger.info(f"Filtered dataset written to {filtered_path}")

    stats = compute_stats(ds)
    write_atomic(out_dir / "profile.json", json.dumps(stats.to_dict(), indent=2) + "\n")
    write_atomic(
        out_dir / "imr_histogram.csv",
        imr_histogram(stats).to_csv(index=False, lineterminator="\n"),
    )
    print(format_stats(stats))
    return stats


def cmd_train(spec: RunSpec):
    """
    Fit the selected algorithm on the full dataset and save model.bin.

    Iterative trainers also write progress.csv; the resolved hyperparameters
    go to train_config.json.
    """
    ds = _load(spec)
    algorithm_spec = spec.algorithm_spec()
    out_dir = Path(spec.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    progress_path = out_dir / "progress.csv"
    with open(progress_path, "w", encoding="utf-8", newline="") as f:
        model = algorithm_spec.fit(ds, progress_sink=CsvProgressSink(f))
    if algorithm_spec.algorithm.is_lsdr:
        progress_path.unlink(missing_ok=True)

    model_path = out_dir / "model.bin"
    _write_bytes_atomic(model_path, model_to_bytes(model))
    write_atomic(
        out_dir / "train_config.json",
        json.dumps({"algorithm": algorithm_spec.algorithm.value, **algorithm_spec.params()}, indent=2) + "\n",
    )
    print(f"Trained {algorithm_spec.algorithm.value} (k={algorithm_spec.k}) on n={ds.n}; model saved to {model_path}")
    return model


def cmd_predict(spec: RunSpec) -> list:
    """
    Predict label sets with a saved model.

    Writes predictions.txt with one line of comma-separated labels per
    instance (an empty line when no label is predicted).

    Raises:
        DimensionMismatchError: If the dataset's feature dimension differs from the model's
    """
    model = load_any_model(spec.model_path)
    ds = _load(spec)
    if ds.d != model.d:
        raise DimensionMismatchError(f"dataset has d={ds.d}, model expects d={model.d}")

    predictions = model.predict_label_sets(ds.feature_matrix(), spec.rule)
    lines = [",".join(str(j) for j in labels) for labels in predictions]
    out_path = Path(spec.out_dir) / "predictions.txt"
    write_atomic(out_path, "\n".join(lines) + "\n" if lines else "")

    if ds.m == model.m:
        result = evaluate(model, ds, spec.rule)
        print(
            f"hamming {result.hamming_loss:.4f}, f {result.f_score:.4f}, "
            f"accuracy {result.accuracy:.4f} on {ds.n} instances"
        )
    print(f"Predictions written to {out_path}")
    return predictions


def _stem(report: MetricsReport, prefix: str = "cv") -> str:
    k = "" if report.k is None else f"_k{report.k}"
    return f"{prefix}_{report.algorithm}{k}"


def cmd_cv(spec: RunSpec) -> MetricsReport:
    """Cross-validate one algorithm and write JSON, metrics/timing CSV and a Markdown row."""
    ds = _load(spec)
    report = cross_validate(ds, spec.algorithm_spec(), spec.folds, spec.seed, spec.rule, spec.jobs)
    paths = write_report_artifacts(report, spec.out_dir, _stem(report))
    print(format_report(report))
    logger.info(f"Report written to {paths['json']}")
    return report


def cmd_sweep_alpha(spec: RunSpec, alphas: list[int] | None = None) -> pd.DataFrame:
    """
    Cross-validate RMLS once per sampling coefficient.

    Writes sweep_alpha.csv with tidy rows "alpha,metric,mean,std" plus the
    per-alpha report artifacts.
    """
    alphas = list(alphas if alphas is not None else spec.alphas)
    ds = _load(spec)
    base = spec.algorithm_spec()
    reports = {}
    for alpha in alphas:
        logger.info(f"Sweep: alpha={alpha}")
        report = cross_validate(ds, base.with_alpha(alpha), spec.folds, spec.seed, spec.rule, spec.jobs)
        write_report_artifacts(report, spec.out_dir, f"{_stem(report, 'sweep')}_alpha{alpha}")
        reports[alpha] = report

    frame = sweep_frame(reports)
    write_atomic(Path(spec.out_dir) / "sweep_alpha.csv", frame.to_csv(index=False, lineterminator="\n"))
    print(frame.to_string(index=False))
    return frame


def cmd_compare(spec: RunSpec) -> list[MetricsReport]:
    """
    Cross-validate several algorithms on identical folds.

    Algorithms run one after another; --jobs parallelizes the folds inside each algorithm.

    Writes per-algorithm artifacts, compare.md (one table per metric plus
    training time) and the concatenated compare_metrics.csv / compare_timing.csv.
    """
    ds = _load(spec)
    reports = []
    for algorithm in spec.algorithms:
        report = cross_validate(
            ds, spec.algorithm_spec(algorithm), spec.folds, spec.seed, spec.rule, spec.jobs
        )
        write_report_artifacts(report, spec.out_dir, _stem(report))
        reports.append(report)

    out_dir = Path(spec.out_dir)
    text = format_compare(compare_tables(reports))
    write_atomic(out_dir / "compare.md", text)
    write_atomic(
        out_dir / "compare_metrics.csv",
        pd.concat([metrics_frame(r) for r in reports]).to_csv(index=False, lineterminator="\n"),
    )
    write_atomic(
        out_dir / "compare_timing.csv",
        pd.concat([timing_frame(r) for r in reports]).to_csv(index=False, lineterminator="\n"),
    )
    print(text)
    return reports


COMMANDS = {
    "profile": cmd_profile,
    "train": cmd_train,
    "predict": cmd_predict,
    "cv": cmd_cv,
    "sweep-alpha": cmd_sweep_alpha,
    "compare": cmd_compare,
}
