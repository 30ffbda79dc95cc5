"""Tests for environment settings, config files and hyperparameter dataclasses."""

from pathlib import Path

import pytest

from src.cli.run_spec import Command, RunSpec
from src.config import Settings, load_config_file
from src.evaluation.algorithms import Algorithm
from src.models.activations import Sigma
from src.models.configs import LemlConfig, LossKind, LsdrConfig, TrainConfig, WarpConfig


class TestSettings:
    def test_defaults(self, monkeypatch):
        for name in ("XMLC_DATA_DIR", "XMLC_OUTPUT_DIR", "XMLC_LOG_LEVEL", "XMLC_SEED", "XMLC_JOBS"):
            monkeypatch.delenv(name, raising=False)
        settings = Settings()
        assert settings.data_dir is None
        assert settings.output_dir == Path("./runs")
        assert settings.log_level == "INFO"
        assert (settings.seed, settings.jobs) == (0, 1)
        settings.validate()

    def test_environment_overrides(self, monkeypatch, tmp_path):
        monkeypatch.setenv("XMLC_DATA_DIR", str(tmp_path))
        monkeypatch.setenv("XMLC_SEED", "17")
        monkeypatch.setenv("XMLC_LOG_LEVEL", "debug")
        settings = Settings()
        assert settings.data_dir == tmp_path
        assert settings.seed == 17
        assert settings.log_level == "DEBUG"

    def test_bad_jobs(self, monkeypatch):
        monkeypatch.setenv("XMLC_JOBS", "0")
        with pytest.raises(ValueError, match="XMLC_JOBS"):
            Settings().validate()

    def test_bad_log_level(self, monkeypatch):
        monkeypatch.setenv("XMLC_LOG_LEVEL", "chatty")
        with pytest.raises(ValueError, match="XMLC_LOG_LEVEL"):
            Settings().validate()

    def test_resolve_dataset_missing(self, monkeypatch, tmp_path):
        monkeypatch.setenv("XMLC_DATA_DIR", str(tmp_path))
        with pytest.raises(FileNotFoundError, match="XMLC_DATA_DIR"):
            Settings().resolve_dataset("absent.txt")


class TestLoadConfigFile:
    def test_sections(self, tmp_path):
        path = tmp_path / "enron.cfg"
        path.write_text("# RMLS\nk=50\nalpha=5\nlambda=0.001\nwsabie.margin=1\nlsdr.ridge=0.1\n")
        sections = load_config_file(path)
        assert sections["train"] == {"k": "50", "alpha": "5", "lambda": "0.001"}
        assert sections["wsabie"] == {"margin": "1"}
        assert sections["lsdr"] == {"ridge": "0.1"}
        assert sections["leml"] == {}

    def test_unknown_section(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("svm.c=1\n")
        with pytest.raises(ValueError, match="unknown section 'svm'"):
            load_config_file(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_config_file(tmp_path / "none.cfg")


class TestConfigDataclasses:
    def test_string_values_are_converted(self):
        config = TrainConfig.from_dict({"k": "25", "lambda": "0.01", "loss": "least_squares", "epochs": "3.0"})
        assert (config.k, config.lam, config.loss, config.epochs) == (25, 0.01, LossKind.LEAST_SQUARES, 3)

    def test_sigma_follows_hinge_loss(self):
        assert TrainConfig.from_dict({"loss": "l2_hinge"}).sigma is Sigma.IDENTITY
        assert TrainConfig.from_dict({"loss": LossKind.LEAST_SQUARES}).sigma is Sigma.LOGISTIC
        with pytest.raises(ValueError, match="requires sigma=identity"):
            TrainConfig.from_dict({"loss": "l2_hinge", "sigma": "logistic"})

    def test_round_trip(self):
        config = WarpConfig(k=8, margin=0.5, max_trials=4)
        assert WarpConfig.from_dict(config.to_dict()) == config

    def test_optional_none(self):
        assert WarpConfig.from_dict({"max_trials": "none"}).max_trials is None

    def test_unknown_key(self):
        with pytest.raises(ValueError, match="unknown TrainConfig key 'gamma'"):
            TrainConfig.from_dict({"gamma": "1"})

    def test_non_integer_rejected(self):
        with pytest.raises(ValueError, match="TrainConfig.k"):
            TrainConfig.from_dict({"k": "2.5"})

    @pytest.mark.parametrize(
        "make",
        [
            lambda: TrainConfig(k=0),
            lambda: TrainConfig(alpha=0),
            lambda: TrainConfig(eta=0.0),
            lambda: TrainConfig(lam=-1.0),
            lambda: TrainConfig(loss=LossKind.CROSS_ENTROPY, sigma=Sigma.IDENTITY),
            lambda: TrainConfig(loss=LossKind.L2_HINGE),
            lambda: WarpConfig(margin=0.0),
            lambda: LemlConfig(sweeps=0),
            lambda: LsdrConfig(solver="lapack"),
        ],
    )
    def test_invalid_values(self, make):
        with pytest.raises(ValueError):
            make()


class TestRunSpecLayering:
    def test_cli_overrides_config_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("k=10\nalpha=3\nwsabie.margin=2\nleml.sweeps=4\n")
        spec = RunSpec(command=Command.CV, config_path=path, seed=9, overrides={"k": 5, "eta": None})
        algorithm_spec = spec.algorithm_spec()
        assert algorithm_spec.train.k == 5
        assert algorithm_spec.train.alpha == 3
        assert algorithm_spec.lsdr.k == 5
        assert algorithm_spec.wsabie.margin == 2.0
        assert algorithm_spec.leml.sweeps == 4
        assert algorithm_spec.train.seed == 9

    def test_config_file_seed_wins_over_master_seed(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("seed=3\n")
        spec = RunSpec(command=Command.CV, config_path=path, seed=9)
        assert spec.algorithm_spec().train.seed == 3
        assert spec.algorithm_spec().wsabie.seed == 9

    def test_algorithm_override(self):
        spec = RunSpec(command=Command.COMPARE)
        assert spec.algorithm_spec(Algorithm.FAIE).algorithm is Algorithm.FAIE
