"""
Binary model container.

Layout (all integers and floats little-endian):

    magic      4 bytes   b"RMLS" (representation model) or b"LSDR"
    version    uint32
    d, k, m    uint64 each
    theta      1 byte    activation code
    sigma      1 byte    activation code
    [LSDR only] method 1 byte, selected-label count uint64, selected labels uint64 each
    W          d*k float64, row-major      (LSDR: regressor)
    L          k*m float64, column-major   (LSDR: decoder)

A representation model file is therefore exactly HEADER_SIZE + 8*(d*k + k*m) bytes.
"""

import io
import logging
import struct
from pathlib import Path
from typing import BinaryIO

import numpy as np

from src.errors import ModelFormatError
from src.models.activations import Sigma, Theta
from src.models.embedding import EmbeddingModel
from src.models.lsdr import LsdrMethod, LsdrModel

logger = logging.getLogger(__name__)

EMBEDDING_MAGIC = b"RMLS"
LSDR_MAGIC = b"LSDR"
FORMAT_VERSION = 1

_HEADER = struct.Struct("<4sIQQQBB")
HEADER_SIZE = _HEADER.size
_U64 = struct.Struct("<Q")
_BYTE = struct.Struct("<B")


def _open_sink(sink: str | Path | BinaryIO):
    if isinstance(sink, (str, Path)):
        return open(sink, "wb"), True
    return sink, False


def _read_all(source: str | Path | BinaryIO | bytes) -> bytes:
    if isinstance(source, bytes):
        return source
    if isinstance(source, (str, Path)):
        return Path(source).read_bytes()
    return source.read()


def _matrices_payload(first: np.ndarray, second: np.ndarray) -> bytes:
    return (
        np.asarray(first, dtype="<f8").tobytes(order="C")
        + np.asarray(second, dtype="<f8").tobytes(order="F")
    )


def _read_header(buffer: memoryview, expected_magic: bytes) -> tuple[int, int, int, Theta, Sigma]:
    if len(buffer) < HEADER_SIZE:
        raise ModelFormatError(f"truncated header: {len(buffer)} bytes, need {HEADER_SIZE}")
    magic, version, d, k, m, theta_code, sigma_code = _HEADER.unpack_from(buffer, 0)
    if magic != expected_magic:
        raise ModelFormatError(
            f"bad magic {magic!r}: expected {expected_magic!r} (wrong file type or corrupt file)"
        )
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported format version {version} (expected {FORMAT_VERSION})")
    try:
        theta, sigma = Theta.from_code(theta_code), Sigma.from_code(sigma_code)
    except ValueError as e:
        raise ModelFormatError(str(e)) from None
    return d, k, m, theta, sigma


def _read_matrices(buffer: memoryview, offset: int, d: int, k: int, m: int):
    expected = offset + 8 * (d * k + k * m)
    if len(buffer) < expected:
        raise ModelFormatError(f"truncated payload: {len(buffer)} bytes, expected {expected}")
    if len(buffer) > expected:
        raise ModelFormatError(f"{len(buffer) - expected} unexpected trailing bytes")

    first = np.frombuffer(buffer, dtype="<f8", count=d * k, offset=offset)
    second = np.frombuffer(buffer, dtype="<f8", count=k * m, offset=offset + 8 * d * k)
    first = first.reshape((d, k), order="C").astype(np.float64)
    second = second.reshape((k, m), order="F").astype(np.float64)
    if not (np.all(np.isfinite(first)) and np.all(np.isfinite(second))):
        raise ModelFormatError("model file contains non-finite parameters")
    return first, second


def save_model(model: EmbeddingModel, sink: str | Path | BinaryIO) -> None:
    """
    Persist a representation model.

    Args:
        model: Model to save
        sink: Path or writable binary stream
    """
    header = _HEADER.pack(
        EMBEDDING_MAGIC, FORMAT_VERSION, model.d, model.k, model.m,
        model.theta.code, model.sigma.code,
    )
    f, owned = _open_sink(sink)
    try:
        f.write(header)
        f.write(_matrices_payload(model.W, model.L))
    finally:
        if owned:
            f.close()
    logger.debug(f"Saved model d={model.d} k={model.k} m={model.m}")


def load_model(source: str | Path | BinaryIO | bytes) -> EmbeddingModel:
    """
    Load a representation model saved by save_model.

    Raises:
        ModelFormatError: On a magic or version mismatch, a truncated payload
            or non-finite entries
    """
    buffer = memoryview(_read_all(source))
    d, k, m, theta, sigma = _read_header(buffer, EMBEDDING_MAGIC)
    W, L = _read_matrices(buffer, HEADER_SIZE, d, k, m)
    return EmbeddingModel(W=W, L=L, theta=theta, sigma=sigma)


def save_lsdr_model(model: LsdrModel, sink: str | Path | BinaryIO) -> None:
    """Persist an LSDR model: the shared header, method tag and selected labels, then matrices."""
    header = _HEADER.pack(
        LSDR_MAGIC, FORMAT_VERSION, model.d, model.k, model.m,
        Theta.IDENTITY.code, Sigma.IDENTITY.code,
    )
    extra = _BYTE.pack(model.method.code) + _U64.pack(len(model.selected_labels))
    extra += b"".join(_U64.pack(j) for j in model.selected_labels)
    f, owned = _open_sink(sink)
    try:
        f.write(header)
        f.write(extra)
        f.write(_matrices_payload(model.regressor, model.decode))
    finally:
        if owned:
            f.close()


def load_lsdr_model(source: str | Path | BinaryIO | bytes) -> LsdrModel:
    """Load an LSDR model saved by save_lsdr_model."""
    buffer = memoryview(_read_all(source))
    d, k, m, _, _ = _read_header(buffer, LSDR_MAGIC)
    offset = HEADER_SIZE
    if len(buffer) < offset + _BYTE.size + _U64.size:
        raise ModelFormatError("truncated LSDR method block")
    (method_code,) = _BYTE.unpack_from(buffer, offset)
    (count,) = _U64.unpack_from(buffer, offset + _BYTE.size)
    offset += _BYTE.size + _U64.size
    if len(buffer) < offset + count * _U64.size:
        raise ModelFormatError("truncated selected-label list")
    selected = [_U64.unpack_from(buffer, offset + i * _U64.size)[0] for i in range(count)]
    offset += count * _U64.size

    try:
        method = LsdrMethod.from_code(method_code)
    except ValueError as e:
        raise ModelFormatError(str(e)) from None
    if any(j >= m for j in selected):
        raise ModelFormatError(f"selected label out of range for m={m}: {selected}")
    regressor, decode = _read_matrices(buffer, offset, d, k, m)
    try:
        return LsdrModel(method=method, regressor=regressor, decode=decode, selected_labels=selected)
    except ValueError as e:
        raise ModelFormatError(f"invalid LSDR model: {e}") from e


def load_any_model(source: str | Path | BinaryIO | bytes) -> EmbeddingModel | LsdrModel:
    """Load either container, dispatching on the magic bytes."""
    payload = _read_all(source)
    if payload[:4] == LSDR_MAGIC:
        return load_lsdr_model(payload)
    return load_model(payload)


def model_to_bytes(model: EmbeddingModel | LsdrModel) -> bytes:
    buffer = io.BytesIO()
    if isinstance(model, LsdrModel):
        save_lsdr_model(model, buffer)
    else:
        save_model(model, buffer)
    return buffer.getvalue()
