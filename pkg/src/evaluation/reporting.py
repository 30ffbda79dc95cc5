"""
Report rendering: human tables, JSON, CSV and Markdown artifacts.

Metric CSVs hold only deterministic numbers; training times go to a separate
timing CSV so that re-running the same seeds reproduces the metric files
byte for byte.
"""

import json
import os
import tempfile
from pathlib import Path

import pandas as pd

from src.models.report import METRIC_NAMES, MetricsReport

METRIC_TITLES = {
    "hamming_loss": "Hamming loss",
    "f_score": "F score",
    "accuracy": "Accuracy",
}


def write_atomic(path: str | Path, text: str) -> None:
    """Write text to path via a temporary file in the same directory and a rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise


def _k_label(k: int | None) -> str:
    return "-" if k is None else str(k)


def metrics_frame(report: MetricsReport) -> pd.DataFrame:
    """One row per fold: algorithm, k, fold and the three metrics."""
    return pd.DataFrame(
        [
            {
                "algorithm": report.algorithm,
                "k": _k_label(report.k),
                "fold": f.fold,
                **{name: getattr(f.metrics, name) for name in METRIC_NAMES},
            }
            for f in report.per_fold
        ],
        columns=["algorithm", "k", "fold", *METRIC_NAMES],
    )


def timing_frame(report: MetricsReport) -> pd.DataFrame:
    """One row per fold with the training wall time in seconds."""
    return pd.DataFrame(
        [
            {"algorithm": report.algorithm, "k": _k_label(report.k), "fold": f.fold, "train_seconds": f.train_seconds}
            for f in report.per_fold
        ],
        columns=["algorithm", "k", "fold", "train_seconds"],
    )


def report_to_json(report: MetricsReport) -> str:
    return json.dumps(report.to_dict(), indent=2)


def markdown_table(frame: pd.DataFrame) -> str:
    """Render a DataFrame (index included) as a GitHub-style Markdown table."""
    header = [str(frame.index.name or "")] + [str(c) for c in frame.columns]
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join("---" for _ in header) + "|",
    ]
    for index, row in frame.iterrows():
        lines.append("| " + " | ".join([str(index)] + [str(v) for v in row.tolist()]) + " |")
    return "\n".join(lines)


def markdown_row(report: MetricsReport) -> str:
    """
    Markdown row "| algorithm | k | hamming | f | accuracy |" with mean±std cells.

    Example:
        >>> markdown_row(report)
        '| rmls | 50 | 0.052±0.002 | 0.587±0.011 | 0.456±0.013 |'
    """
    cells = [report.algorithm, _k_label(report.k)]
    cells += [report.summary(name).format() for name in METRIC_NAMES]
    return "| " + " | ".join(cells) + " |"


MARKDOWN_HEADER = (
    "| algorithm | k | Hamming loss | F score | Accuracy |\n"
    "|---|---|---|---|---|"
)


def write_report_artifacts(report: MetricsReport, out_dir: str | Path, stem: str) -> dict[str, Path]:
    """
    Write <stem>.json, <stem>_metrics.csv, <stem>_timing.csv and <stem>.md.

    Returns:
        Mapping of artifact kind to written path
    """
    out_dir = Path(out_dir)
    paths = {
        "json": out_dir / f"{stem}.json",
        "metrics_csv": out_dir / f"{stem}_metrics.csv",
        "timing_csv": out_dir / f"{stem}_timing.csv",
        "markdown": out_dir / f"{stem}.md",
    }
    write_atomic(paths["json"], report_to_json(report) + "\n")
    write_atomic(paths["metrics_csv"], metrics_frame(report).to_csv(index=False, lineterminator="\n"))
    write_atomic(paths["timing_csv"], timing_frame(report).to_csv(index=False, lineterminator="\n"))
    write_atomic(paths["markdown"], MARKDOWN_HEADER + "\n" + markdown_row(report) + "\n")
    return paths


def format_report(report: MetricsReport) -> str:
    """
    Format a cross-validation report for human-readable display.

    Example:
        >>> print(format_report(report))
        ============================================================
        CROSS-VALIDATION RESULTS: rmls (k=50)
        ...
    """
    output_lines = []

    output_lines.append("=" * 60)
    output_lines.append(f"CROSS-VALIDATION RESULTS: {report.algorithm} (k={_k_label(report.k)})")
    output_lines.append("=" * 60)
    output_lines.append("")
    output_lines.append("Metrics (mean±std over folds):")
    for name in METRIC_NAMES:
        output_lines.append(f"  {METRIC_TITLES[name]}: {report.summary(name).format()}")
    output_lines.append("")
    output_lines.append("Per fold:")
    output_lines.append("-" * 60)
    for f in report.per_fold:
        output_lines.append(
            f"  Fold {f.fold}: hamming {f.metrics.hamming_loss:.4f}, f {f.metrics.f_score:.4f}, "
            f"accuracy {f.metrics.accuracy:.4f}, train {f.train_seconds:.2f}s"
        )
    conventions = sum(f.metrics.empty_convention_count for f in report.per_fold)
    if conventions:
        output_lines.append("")
        output_lines.append(f"  Empty-set convention applied to {conventions} test instances")
    output_lines.append("")
    output_lines.append("=" * 60)

    return "\n".join(output_lines)


def compare_tables(reports: list[MetricsReport]) -> dict[str, pd.DataFrame]:
    """
    Consolidated comparison tables, one per metric plus training time.

    Rows are algorithms (in the order given), columns are "k=<k>" and cells
    are "mean±std". The "train_seconds" table holds the mean per-fold
    training time.
    """
    tables = {}
    for name in METRIC_NAMES:
        frame = pd.DataFrame(
            [
                {"algorithm": r.algorithm, "column": f"k={_k_label(r.k)}", "value": r.summary(name).format()}
                for r in reports
            ]
        )
        tables[name] = _pivot(frame, reports)

    timing = pd.DataFrame(
        [
            {
                "algorithm": r.algorithm,
                "column": f"k={_k_label(r.k)}",
                "value": f"{sum(r.wall_time_seconds) / max(len(r.wall_time_seconds), 1):.2f}",
            }
            for r in reports
        ]
    )
    tables["train_seconds"] = _pivot(timing, reports)
    return tables


def _pivot(frame: pd.DataFrame, reports: list[MetricsReport]) -> pd.DataFrame:
    algorithms = list(dict.fromkeys(r.algorithm for r in reports))
    columns = list(dict.fromkeys(f"k={_k_label(r.k)}" for r in reports))
    frame = frame.drop_duplicates(subset=["algorithm", "column"], keep="last")
    table = frame.pivot(index="algorithm", columns="column", values="value")
    table = table.reindex(index=algorithms, columns=columns).fillna("")
    table.columns.name = None
    return table


def format_compare(tables: dict[str, pd.DataFrame]) -> str:
    """Render compare_tables output as titled Markdown sections."""
    sections = []
    for name, table in tables.items():
        title = METRIC_TITLES.get(name, "Training time (seconds)")
        sections.append(f"## {title}\n\n{markdown_table(table)}")
    return "\n\n".join(sections) + "\n"


def sweep_frame(reports: dict[int, MetricsReport]) -> pd.DataFrame:
    """Tidy per-alpha curves: columns alpha, metric, mean, std (alpha ascending)."""
    rows = [
        {"alpha": alpha, "metric": name, "mean": report.summary(name).mean, "std": report.summary(name).std}
        for alpha, report in sorted(reports.items())
        for name in METRIC_NAMES
    ]
    return pd.DataFrame(rows, columns=["alpha", "metric", "mean", "std"])
