"""
Algorithm registry: one tag per method, and a spec that fits any of them.

AlgorithmSpec bundles the algorithm tag with the hyperparameters of every
trainer so the harness and the CLI can treat all methods alike.
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum

from scipy.sparse import csr_matrix

from src.baselines.leml import leml_train
from src.baselines.lsdr import lsdr_fit
from src.baselines.wsabie import wsabie_train
from src.models.configs import LemlConfig, LsdrConfig, TrainConfig, WarpConfig
from src.models.dataset import Dataset, LabelSet
from src.models.embedding import EmbeddingModel
from src.models.lsdr import LsdrMethod, LsdrModel
from src.models.prediction import PredictionRule
from src.training.trainer import ProgressSink, train

logger = logging.getLogger(__name__)


class Algorithm(Enum):
    RMLS = "rmls"
    PLST = "plst"
    CPLST = "cplst"
    FAIE = "faie"
    CSSML = "cssml"
    WSABIE = "wsabie"
    LEML = "leml"
    BASELINE = "baseline"

    @property
    def is_lsdr(self) -> bool:
        return self in _LSDR_METHODS

    @classmethod
    def parse(cls, tag: str) -> "Algorithm":
        try:
            return cls(tag.strip().lower())
        except ValueError:
            names = ", ".join(a.value for a in cls)
            raise ValueError(f"unknown algorithm '{tag}' (expected one of {names})") from None


_LSDR_METHODS = {
    Algorithm.PLST: LsdrMethod.PLST,
    Algorithm.CPLST: LsdrMethod.CPLST,
    Algorithm.FAIE: LsdrMethod.FAIE,
    Algorithm.CSSML: LsdrMethod.CSSML,
}


@dataclass(frozen=True)
class BaselinePredictor:
    """Predicts every label irrelevant for every instance."""
    m: int

    def predict_label_sets(self, X: csr_matrix, rule: PredictionRule) -> list[LabelSet]:
        return [LabelSet() for _ in range(X.shape[0])]


Predictor = EmbeddingModel | LsdrModel | BaselinePredictor


@dataclass(frozen=True)
class AlgorithmSpec:
    """
    An algorithm plus the hyperparameters of all trainers.

    Only the config belonging to the algorithm is used by fit; the others are
    carried along so one spec can be re-targeted with with_algorithm.
    """
    algorithm: Algorithm
    train: TrainConfig = field(default_factory=TrainConfig)
    wsabie: WarpConfig = field(default_factory=WarpConfig)
    leml: LemlConfig = field(default_factory=LemlConfig)
    lsdr: LsdrConfig = field(default_factory=LsdrConfig)

    @property
    def k(self) -> int | None:
        """Latent dimension of the selected algorithm (None for the baseline)."""
        if self.algorithm is Algorithm.RMLS:
            return self.train.k
        if self.algorithm is Algorithm.WSABIE:
            return self.wsabie.k
        if self.algorithm is Algorithm.LEML:
            return self.leml.k
        if self.algorithm.is_lsdr:
            return self.lsdr.k
        return None

    def params(self) -> dict:
        """Hyperparameters of the selected algorithm, for reports."""
        if self.algorithm is Algorithm.RMLS:
            return self.train.to_dict()
        if self.algorithm is Algorithm.WSABIE:
            return self.wsabie.to_dict()
        if self.algorithm is Algorithm.LEML:
            return self.leml.to_dict()
        if self.algorithm.is_lsdr:
            return self.lsdr.to_dict()
        return {}

    def with_algorithm(self, algorithm: Algorithm) -> "AlgorithmSpec":
        return replace(self, algorithm=algorithm)

    def with_k(self, k: int) -> "AlgorithmSpec":
        """Same spec with every trainer's latent dimension set to k."""
        return replace(
            self,
            train=replace(self.train, k=k),
            wsabie=replace(self.wsabie, k=k),
            leml=replace(self.leml, k=k),
            lsdr=replace(self.lsdr, k=k),
        )

    def with_alpha(self, alpha: int) -> "AlgorithmSpec":
        return replace(self, train=replace(self.train, alpha=alpha))

    def fit(self, ds: Dataset, progress_sink: ProgressSink | None = None) -> Predictor:
        """
        Train the selected algorithm on a dataset.

        Args:
            ds: Training data
            progress_sink: Receives per-epoch (RMLS, WSABIE) or per-half-sweep
                (LEML) progress; ignored by the closed-form methods

        Returns:
            A predictor exposing predict_label_sets
        """
        logger.info(f"Fitting {self.algorithm.value} on n={ds.n}, m={ds.m}")
        if self.algorithm is Algorithm.RMLS:
            return train(ds, self.train, progress_sink)
        if self.algorithm is Algorithm.WSABIE:
            return wsabie_train(ds, self.wsabie, progress_sink)
        if self.algorithm is Algorithm.LEML:
            return leml_train(ds, self.leml, progress_sink)
        if self.algorithm.is_lsdr:
            return lsdr_fit(ds, _LSDR_METHODS[self.algorithm], self.lsdr)
        return BaselinePredictor(m=ds.m)
