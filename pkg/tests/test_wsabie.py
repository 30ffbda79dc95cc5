"""Tests for the WARP-trained WSABIE baseline."""

import numpy as np
import pytest

from src.baselines.wsabie import _project_columns, warp_rank_weight, warp_violation_rate, wsabie_train
from src.embedding.inference import init_model
from src.models.activations import Sigma, Theta
from src.models.configs import WarpConfig
from src.models.dataset import Dataset
from src.training.random_streams import stream_seed


def _initial_model(ds, config):
    model = init_model(
        ds.d, config.k, ds.m,
        seed=stream_seed(config.seed, "init"),
        scale=config.init_scale,
        theta=Theta.IDENTITY,
        sigma=Sigma.IDENTITY,
    )
    _project_columns(model.L, np.arange(ds.m))
    return model


class TestRankWeight:
    @pytest.mark.parametrize(
        "trials, m_neg, expected",
        [(1, 1, 1.0), (1, 3, 1.0 + 1 / 2 + 1 / 3), (2, 5, 1.5), (3, 3, 1.0), (4, 9, 1.5)],
    )
    def test_harmonic_weight(self, trials, m_neg, expected):
        assert warp_rank_weight(trials, m_neg) == pytest.approx(expected)

    def test_weight_falls_with_trials(self):
        weights = [warp_rank_weight(t, 20) for t in range(1, 21)]
        assert all(b <= a for a, b in zip(weights, weights[1:]))

    @pytest.mark.parametrize("trials", [0, 4])
    def test_trials_out_of_range(self, trials):
        with pytest.raises(ValueError):
            warp_rank_weight(trials, 3)


class TestWsabieTrain:
    def test_label_columns_stay_in_unit_ball(self, random_dataset):
        model = wsabie_train(random_dataset, WarpConfig(k=4, eta=0.5, epochs=3))
        assert np.all(np.linalg.norm(model.L, axis=0) <= 1.0 + 1e-12)
        assert model.sigma is Sigma.IDENTITY

    def test_one_step_touches_one_positive_and_one_negative(self):
        # one instance with one relevant label gives exactly one step per epoch
        ds = Dataset.from_dense(np.array([[0.01, 0.0]]), np.array([[1, 0, 0, 0]]))
        config = WarpConfig(k=2, eta=0.1, epochs=1, seed=3)
        before = _initial_model(ds, config)
        after = wsabie_train(ds, config)
        changed = np.flatnonzero(np.any(after.L != before.L, axis=0)).tolist()
        assert len(changed) == 2
        assert 0 in changed
        np.testing.assert_array_equal(after.W[1], before.W[1])

    def test_same_seed_same_model(self, random_dataset):
        config = WarpConfig(k=3, epochs=2, seed=4)
        assert wsabie_train(random_dataset, config) == wsabie_train(random_dataset, config)

    def test_violation_rate_drops(self, separable_dataset):
        config = WarpConfig(k=4, eta=0.05, epochs=20, seed=0)
        before = warp_violation_rate(_initial_model(separable_dataset, config), separable_dataset)
        after = warp_violation_rate(wsabie_train(separable_dataset, config), separable_dataset)
        assert after < before

    def test_progress_per_epoch(self, random_dataset):
        records = []
        wsabie_train(random_dataset, WarpConfig(k=3, epochs=3), progress_sink=records.append)
        assert [r.epoch for r in records] == [1, 2, 3]
        assert all(r.mean_objective >= 0 for r in records)

    def test_no_eligible_instances_returns_initialization(self):
        ds = Dataset.from_dense(np.eye(2), np.array([[1, 1], [0, 0]]))
        config = WarpConfig(k=2, epochs=2)
        assert wsabie_train(ds, config) == _initial_model(ds, config)


def test_violation_rate_counts_pairs():
    ds = Dataset.from_dense(np.eye(2), np.array([[1, 0, 0], [0, 1, 1]]))
    model = init_model(2, 3, 3, seed=0, sigma=Sigma.IDENTITY)
    model.W[:] = np.eye(2, 3)
    model.L[:] = np.diag([5.0, 5.0, 0.0])
    # instance 0 scores (5, 0, 0): label 0 clears the margin
    # instance 1 scores (0, 5, 0): label 1 clears it, label 2 is beaten by label 0's score + margin
    assert warp_violation_rate(model, ds) == pytest.approx(1 / 3)
