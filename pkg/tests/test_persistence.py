"""Tests for the binary model container."""

import io
import struct

import numpy as np
import pytest

from src.embedding.inference import init_model
from src.embedding.persistence import (
    FORMAT_VERSION,
    HEADER_SIZE,
    load_any_model,
    load_lsdr_model,
    load_model,
    model_to_bytes,
    save_lsdr_model,
    save_model,
)
from src.errors import ModelFormatError
from src.models.activations import Sigma, Theta
from src.models.lsdr import LsdrMethod, LsdrModel


@pytest.fixture
def model():
    return init_model(6, 3, 4, seed=5, theta=Theta.TANH, sigma=Sigma.LOGISTIC)


@pytest.fixture
def lsdr_model():
    rng = np.random.default_rng(0)
    return LsdrModel(
        method=LsdrMethod.CSSML,
        regressor=rng.normal(size=(5, 2)),
        decode=rng.normal(size=(2, 4)),
        selected_labels=[3, 1],
    )


class TestRepresentationModel:
    def test_file_size(self, model, tmp_path):
        path = tmp_path / "model.bin"
        save_model(model, path)
        assert path.stat().st_size == HEADER_SIZE + 8 * (6 * 3 + 3 * 4)

    def test_save_then_load_is_exact(self, model, tmp_path):
        path = tmp_path / "model.bin"
        save_model(model, path)
        loaded = load_model(path)
        assert loaded == model
        assert loaded.theta is Theta.TANH

    def test_stream_sink(self, model):
        buffer = io.BytesIO()
        save_model(model, buffer)
        assert load_model(buffer.getvalue()) == model

    def test_header_fields(self, model):
        payload = model_to_bytes(model)
        magic, version, d, k, m = struct.unpack_from("<4sIQQQ", payload, 0)
        assert magic == b"RMLS"
        assert version == FORMAT_VERSION
        assert (d, k, m) == (6, 3, 4)

    def test_label_matrix_is_column_major(self):
        L = np.arange(6, dtype=float).reshape(2, 3)
        model = init_model(1, 2, 3, seed=0)
        model.L[:] = L
        payload = model_to_bytes(model)
        tail = np.frombuffer(payload[-8 * 6:], dtype="<f8")
        np.testing.assert_array_equal(tail, L.flatten(order="F"))


class TestCorruptFiles:
    def test_bad_magic(self, model):
        payload = bytearray(model_to_bytes(model))
        payload[:4] = b"XXXX"
        with pytest.raises(ModelFormatError, match="bad magic"):
            load_model(bytes(payload))

    def test_unknown_version(self, model):
        payload = bytearray(model_to_bytes(model))
        struct.pack_into("<I", payload, 4, FORMAT_VERSION + 1)
        with pytest.raises(ModelFormatError, match="version"):
            load_model(bytes(payload))

    def test_truncated_header(self):
        with pytest.raises(ModelFormatError, match="truncated header"):
            load_model(b"RMLS\x01")

    def test_truncated_payload(self, model):
        payload = model_to_bytes(model)
        with pytest.raises(ModelFormatError, match="truncated payload"):
            load_model(payload[:-8])

    def test_trailing_bytes(self, model):
        with pytest.raises(ModelFormatError, match="trailing"):
            load_model(model_to_bytes(model) + b"\x00")

    def test_non_finite_entry(self, model):
        payload = bytearray(model_to_bytes(model))
        struct.pack_into("<d", payload, HEADER_SIZE, float("nan"))
        with pytest.raises(ModelFormatError, match="non-finite"):
            load_model(bytes(payload))

    def test_lsdr_file_is_not_a_representation_model(self, lsdr_model):
        with pytest.raises(ModelFormatError):
            load_model(model_to_bytes(lsdr_model))


class TestLsdrModel:
    def test_save_then_load(self, lsdr_model, tmp_path):
        path = tmp_path / "lsdr.bin"
        save_lsdr_model(lsdr_model, path)
        loaded = load_lsdr_model(path)
        assert loaded.method is LsdrMethod.CSSML
        assert loaded.selected_labels == [3, 1]
        np.testing.assert_array_equal(loaded.regressor, lsdr_model.regressor)
        np.testing.assert_array_equal(loaded.decode, lsdr_model.decode)

    @pytest.mark.parametrize("second_label, message", [(3, "invalid LSDR model"), (99, "out of range")])
    def test_bad_selected_labels(self, lsdr_model, second_label, message):
        payload = bytearray(model_to_bytes(lsdr_model))
        # header, method byte, count, then the selected labels
        offset = HEADER_SIZE + 1 + 8 + 8
        struct.pack_into("<Q", payload, offset, second_label)
        with pytest.raises(ModelFormatError, match=message):
            load_lsdr_model(bytes(payload))

    def test_load_any_dispatches_on_magic(self, model, lsdr_model):
        assert isinstance(load_any_model(model_to_bytes(lsdr_model)), LsdrModel)
        assert load_any_model(model_to_bytes(model)) == model
