"""
Loader for sparse multi-label dataset files.

Format (UTF-8 text, one instance per line):

    LABELS FEAT FEAT ...

LABELS is a comma-separated list of label indices (possibly empty) and each
FEAT is "index:value". An optional first line "#dims n d m" declares the
dimensions; the extreme-classification repository header (a first line of
exactly three integers "n d m") is accepted too. Other lines starting with
"#" and blank lines are ignored.
"""

import io
import logging
import math
import re
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator, TextIO

from src.config import settings
from src.errors import DatasetFormatError
from src.models.dataset import Dataset, LabelSet, SparseVector

logger = logging.getLogger(__name__)

_DIMS_COMMENT = re.compile(r"^#\s*dims\s+(\d+)\s+(\d+)\s+(\d+)\s*$")
_BARE_HEADER = re.compile(r"^\s*(\d+)\s+(\d+)\s+(\d+)\s*$")


def _decode_lines(stream: BinaryIO) -> Iterator[str]:
    for line_number, raw in enumerate(stream, start=1):
        try:
            yield raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DatasetFormatError(f"invalid UTF-8: {exc.reason}", line_number) from exc


def _iter_lines(text: bytes | str | BinaryIO | TextIO) -> Iterable[str]:
    if isinstance(text, bytes):
        return _decode_lines(io.BytesIO(text))
    if isinstance(text, str):
        return io.StringIO(text)
    # file object: binary streams are decoded line by line, text streams pass through
    sample = text.read(0)
    if isinstance(sample, bytes):
        return _decode_lines(text)
    return text


def _parse_labels(token: str, shift: int, line_number: int) -> list[int]:
    labels = []
    for part in token.split(","):
        if not part:
            continue
        try:
            label = int(part) - shift
        except ValueError:
            raise DatasetFormatError(f"label '{part}' is not an integer", line_number) from None
        if label < 0:
            raise DatasetFormatError(f"label index {part} is out of range", line_number)
        labels.append(label)
    return labels


def _parse_features(tokens: list[str], shift: int, line_number: int) -> list[tuple[int, float]]:
    pairs = []
    seen = set()
    for token in tokens:
        index_text, sep, value_text = token.partition(":")
        if not sep:
            raise DatasetFormatError(f"feature '{token}' is not of the form index:value", line_number)
        try:
            index = int(index_text) - shift
        except ValueError:
            raise DatasetFormatError(f"feature index '{index_text}' is not an integer", line_number) from None
        try:
            value = float(value_text)
        except ValueError:
            raise DatasetFormatError(f"feature value '{value_text}' is not numeric", line_number) from None
        if not math.isfinite(value):
            raise DatasetFormatError(f"feature value '{value_text}' is not finite", line_number)
        if index < 0:
            raise DatasetFormatError(f"feature index {index_text} is out of range", line_number)
        if index in seen:
            raise DatasetFormatError(f"duplicate feature index {index_text}", line_number)
        seen.add(index)
        pairs.append((index, value))
    return pairs


def parse_multilabel_file(
    text: bytes | str | BinaryIO | TextIO,
    declared_dims: tuple[int, int, int] | None = None,
    one_based: bool = False,
) -> Dataset:
    """
    Parse a sparse multi-label dataset.

    Args:
        text: File contents (bytes or str) or an open file object
        declared_dims: (n, d, m) to enforce; overrides a header in the file
        one_based: Shift every feature and label index by -1 on read

    Returns:
        Dataset whose dimensions are the declared ones, or inferred as
        (record count, max feature index + 1, max label index + 1)

    Raises:
        DatasetFormatError: On a malformed line (with its line number), an index
            beyond a declared dimension, a non-numeric value, or a record count
            that disagrees with the declared n

    Example:
        >>> ds = parse_multilabel_file("1,3 0:0.5 4:2.0\\n", declared_dims=(1, 5, 4))
        >>> ds.instances[0][0].entries, ds.instances[0][1].labels
        ([(0, 0.5), (4, 2.0)], (1, 3))
    """
    shift = 1 if one_based else 0
    header_dims = None
    records: list[tuple[int, list[int], list[tuple[int, float]]]] = []
    seen_content = False

    for line_number, raw_line in enumerate(_iter_lines(text), start=1):
        line = raw_line.rstrip("\r\n")
        stripped = line.strip()
        if not stripped:
            continue

        if stripped.startswith("#"):
            match = _DIMS_COMMENT.match(stripped)
            if match and not seen_content:
                header_dims = tuple(int(g) for g in match.groups())
            continue

        if not seen_content and header_dims is None:
            match = _BARE_HEADER.match(line)
            if match:
                header_dims = tuple(int(g) for g in match.groups())
                seen_content = True
                continue
        seen_content = True

        tokens = stripped.split()
        label_token = ""
        if ":" not in tokens[0] and not line[0].isspace():
            label_token = tokens.pop(0)
        labels = _parse_labels(label_token, shift, line_number)
        pairs = _parse_features(tokens, shift, line_number)
        records.append((line_number, labels, pairs))

    dims = declared_dims if declared_dims is not None else header_dims
    if dims is not None:
        n, d, m = dims
        if len(records) != n:
            raise DatasetFormatError(f"declared n={n} but found {len(records)} instances")
        for line_number, labels, pairs in records:
            for index, _ in pairs:
                if index >= d:
                    raise DatasetFormatError(
                        f"feature index {index + shift} exceeds declared d={d}", line_number
                    )
            for label in labels:
                if label >= m:
                    raise DatasetFormatError(
                        f"label index {label + shift} exceeds declared m={m}", line_number
                    )
    else:
        n = len(records)
        d = max((index for _, _, pairs in records for index, _ in pairs), default=-1) + 1
        m = max((label for _, labels, _ in records for label in labels), default=-1) + 1

    instances = [
        (SparseVector.from_pairs(pairs, d), LabelSet.of(labels))
        for _, labels, pairs in records
    ]
    logger.info(f"Parsed {n} instances (d={d}, m={m})")
    return Dataset(n=n, d=d, m=m, instances=tuple(instances))


def load_dataset(
    path: str | Path,
    declared_dims: tuple[int, int, int] | None = None,
    one_based: bool = False,
) -> Dataset:
    """
    Load a dataset file from disk.

    Args:
        path: File path; relative paths missing from the working directory
            are looked up under XMLC_DATA_DIR
        declared_dims: Optional (n, d, m) to enforce
        one_based: Input indices start at 1

    Returns:
        Parsed Dataset
    """
    path = settings.resolve_dataset(path)
    logger.info(f"Loading dataset from {path}")
    with open(path, "rb") as f:
        return parse_multilabel_file(f, declared_dims=declared_dims, one_based=one_based)


def write_multilabel_file(ds: Dataset, sink: str | Path | TextIO, one_based: bool = False) -> None:
    """
    Write a dataset in the same format, with a "#dims n d m" header line.

    Args:
        ds: Dataset to write
        sink: Path or writable text stream
        one_based: Write indices shifted by +1
    """
    shift = 1 if one_based else 0
    lines = [f"#dims {ds.n} {ds.d} {ds.m}"]
    for x, labels in ds.instances:
        label_field = ",".join(str(j + shift) for j in labels)
        feats = " ".join(f"{i + shift}:{v!r}" for i, v in x.entries)
        # a leading space marks an empty label field
        lines.append(f"{label_field} {feats}".rstrip() if label_field else f" {feats}")
    payload = "\n".join(lines) + "\n"

    if isinstance(sink, (str, Path)):
        Path(sink).write_text(payload, encoding="utf-8")
    else:
        sink.write(payload)
