"""
Hyperparameter configurations for the trainers.

Each config is a dataclass validated on construction. from_dict accepts the
string values read from flat key-value config files as well as native types,
so the same path serves config files, CLI flags and tests.
"""

import types
from dataclasses import asdict, dataclass, fields
from enum import Enum
from typing import Union, get_args, get_origin

from src.models.activations import Sigma, Theta


class LossKind(Enum):
    """Per-label classification loss."""
    CROSS_ENTROPY = "cross_entropy"
    LEAST_SQUARES = "least_squares"
    L2_HINGE = "l2_hinge"


# Keys people write in config files that differ from the field names
_ALIASES = {"lambda": "lam"}


def _coerce(value, annotation):
    """Convert a config value (often a string) to the annotated field type."""
    if get_origin(annotation) in (Union, types.UnionType):
        if value is None or (isinstance(value, str) and value.strip().lower() in ("", "none")):
            return None
        inner = [arg for arg in get_args(annotation) if arg is not type(None)]
        return _coerce(value, inner[0])
    if isinstance(annotation, type) and issubclass(annotation, Enum):
        return value if isinstance(value, annotation) else annotation(str(value).strip().lower())
    if annotation is int:
        if isinstance(value, str):
            value = value.strip()
            number = float(value)
            if number != int(number):
                raise ValueError(f"expected an integer, got '{value}'")
            return int(number)
        return int(value)
    if annotation is float:
        return float(value)
    return value


def _from_dict(cls, data: dict):
    known = {f.name: f for f in fields(cls)}
    kwargs = {}
    for key, value in data.items():
        name = _ALIASES.get(key, key)
        if name not in known:
            raise ValueError(
                f"unknown {cls.__name__} key '{key}' (expected one of {', '.join(known)})"
            )
        try:
            kwargs[name] = _coerce(value, known[name].type)
        except ValueError as e:
            raise ValueError(f"{cls.__name__}.{name}: {e}") from None
    return cls(**kwargs)


def _to_dict(config) -> dict:
    return {
        key: value.value if isinstance(value, Enum) else value
        for key, value in asdict(config).items()
    }


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


@dataclass(frozen=True)
class TrainConfig:
    """
    RMLS trainer hyperparameters.

    Defaults follow the evaluation settings where they exist (alpha=5,
    lam=0.001); eta, epsilon, batch_size, epochs and init_scale are free knobs.
    """
    k: int = 50
    alpha: int = 5
    lam: float = 0.001
    eta: float = 0.1
    epsilon: float = 1e-8
    batch_size: int = 32
    epochs: int = 30
    loss: LossKind = LossKind.CROSS_ENTROPY
    seed: int = 0
    init_scale: float = 1.0
    theta: Theta = Theta.IDENTITY
    sigma: Sigma = Sigma.LOGISTIC

    def __post_init__(self):
        _require(self.k >= 1, f"k must be >= 1, got {self.k}")
        _require(self.alpha >= 1, f"alpha must be a positive integer, got {self.alpha}")
        _require(self.lam >= 0, f"lambda must be >= 0, got {self.lam}")
        _require(self.eta > 0, f"eta must be > 0, got {self.eta}")
        _require(self.epsilon > 0, f"epsilon must be > 0, got {self.epsilon}")
        _require(self.batch_size >= 1, f"batch_size must be >= 1, got {self.batch_size}")
        _require(self.epochs >= 1, f"epochs must be >= 1, got {self.epochs}")
        _require(self.init_scale > 0, f"init_scale must be > 0, got {self.init_scale}")
        check_loss_sigma(self.loss, self.sigma)

    @classmethod
    def from_dict(cls, data: dict) -> "TrainConfig":
        """
        Create TrainConfig from a dict of field values (strings allowed).

        When sigma is absent it follows the loss: identity for l2_hinge,
        logistic otherwise.
        """
        if "sigma" not in data and data.get("loss") is not None:
            if _coerce(data["loss"], LossKind) is LossKind.L2_HINGE:
                data = {**data, "sigma": Sigma.IDENTITY}
        return _from_dict(cls, data)

    def to_dict(self) -> dict:
        """Convert TrainConfig to dictionary for JSON serialization."""
        return _to_dict(self)


def check_loss_sigma(loss: LossKind, sigma: Sigma) -> None:
    """Cross entropy needs logistic scores; the L2 hinge needs raw scores."""
    if loss is LossKind.CROSS_ENTROPY and sigma is not Sigma.LOGISTIC:
        raise ValueError("cross_entropy loss requires sigma=logistic")
    if loss is LossKind.L2_HINGE and sigma is not Sigma.IDENTITY:
        raise ValueError("l2_hinge loss requires sigma=identity")


@dataclass(frozen=True)
class WarpConfig:
    """
    WSABIE hyperparameters.

    max_trials=None means m-1 negatives may be tried per step.
    """
    k: int = 50
    eta: float = 0.01
    epochs: int = 10
    margin: float = 1.0
    max_trials: int | None = None
    lam: float = 0.001
    seed: int = 0
    init_scale: float = 1.0

    def __post_init__(self):
        _require(self.k >= 1, f"k must be >= 1, got {self.k}")
        _require(self.eta > 0, f"eta must be > 0, got {self.eta}")
        _require(self.epochs >= 1, f"epochs must be >= 1, got {self.epochs}")
        _require(self.margin > 0, f"margin must be > 0, got {self.margin}")
        _require(
            self.max_trials is None or self.max_trials >= 1,
            f"max_trials must be >= 1, got {self.max_trials}",
        )
        _require(self.lam >= 0, f"lambda must be >= 0, got {self.lam}")
        _require(self.init_scale > 0, f"init_scale must be > 0, got {self.init_scale}")

    @classmethod
    def from_dict(cls, data: dict) -> "WarpConfig":
        return _from_dict(cls, data)

    def to_dict(self) -> dict:
        return _to_dict(self)


@dataclass(frozen=True)
class LemlConfig:
    """LEML alternating least squares hyperparameters."""
    k: int = 50
    lam: float = 0.001
    sweeps: int = 10
    seed: int = 0

    def __post_init__(self):
        _require(self.k >= 1, f"k must be >= 1, got {self.k}")
        _require(self.lam >= 0, f"lambda must be >= 0, got {self.lam}")
        _require(self.sweeps >= 1, f"sweeps must be >= 1, got {self.sweeps}")

    @classmethod
    def from_dict(cls, data: dict) -> "LemlConfig":
        return _from_dict(cls, data)

    def to_dict(self) -> dict:
        return _to_dict(self)


@dataclass(frozen=True)
class LsdrConfig:
    """
    Settings shared by the LSDR baselines.

    solver="dense" uses a full symmetric eigendecomposition; "arpack" computes
    only the top-k pairs and is meant for large label counts.
    """
    k: int = 50
    ridge: float = 0.01
    faie_alpha: float = 1.0
    solver: str = "dense"

    def __post_init__(self):
        _require(self.k >= 1, f"k must be >= 1, got {self.k}")
        _require(self.ridge >= 0, f"ridge must be >= 0, got {self.ridge}")
        _require(self.faie_alpha >= 0, f"faie_alpha must be >= 0, got {self.faie_alpha}")
        _require(self.solver in ("dense", "arpack"), f"unknown solver '{self.solver}'")

    @classmethod
    def from_dict(cls, data: dict) -> "LsdrConfig":
        return _from_dict(cls, data)

    def to_dict(self) -> dict:
        return _to_dict(self)
