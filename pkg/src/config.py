"""Application configuration loaded from environment variables and config files.

This module provides centralized configuration management with:
- Environment settings (dataset root, output directory, log level, seed, jobs)
- Type conversion for int/Path settings
- Sensible defaults for optional settings
- Flat key-value config files for trainer hyperparameters

Usage:
    from src.config import settings, load_config_file

    # Validate configuration on startup
    settings.validate()

    # Access settings
    data_dir = settings.data_dir
    sections = load_config_file("configs/enron.cfg")
    sections["train"]   # {"k": "50", "alpha": "5", ...}
    sections["wsabie"]  # keys given as "wsabie.<field>"
"""

import logging
import os
from pathlib import Path

from dotenv import dotenv_values, load_dotenv

# Load .env file from project root
load_dotenv()

logger = logging.getLogger(__name__)

# Un-prefixed keys go to the RMLS trainer; these prefixes select a baseline
CONFIG_SECTIONS = ("wsabie", "leml", "lsdr")
TRAIN_SECTION = "train"


class Settings:
    """Application settings loaded from environment variables."""

    @property
    def data_dir(self) -> Path | None:
        """Optional: dataset root used when a dataset path does not exist as given.

        Default: unset
        """
        value = os.getenv("XMLC_DATA_DIR")
        return Path(value) if value else None

    @property
    def output_dir(self) -> Path:
        """Directory for run artifacts when --out is not given.

        Default: ./runs
        """
        return Path(os.getenv("XMLC_OUTPUT_DIR", "./runs"))

    @property
    def log_level(self) -> str:
        """Logging level name.

        Default: INFO
        """
        return os.getenv("XMLC_LOG_LEVEL", "INFO").upper()

    @property
    def seed(self) -> int:
        """Master seed when --seed is not given.

        Default: 0
        """
        return int(os.getenv("XMLC_SEED", "0"))

    @property
    def jobs(self) -> int:
        """Concurrent folds/algorithms when --jobs is not given.

        Default: 1
        """
        return int(os.getenv("XMLC_JOBS", "1"))

    def resolve_dataset(self, path: str | Path) -> Path:
        """Resolve a dataset path, falling back to XMLC_DATA_DIR.

        Args:
            path: Path as given on the command line

        Returns:
            The path itself if it exists, else data_dir / path if that exists

        Raises:
            FileNotFoundError: If neither location holds the file
        """
        candidate = Path(path)
        if candidate.exists():
            return candidate
        if self.data_dir is not None and (self.data_dir / candidate).exists():
            return self.data_dir / candidate
        hint = f" (also looked in XMLC_DATA_DIR={self.data_dir})" if self.data_dir else ""
        raise FileNotFoundError(f"Dataset not found: {path}{hint}")

    def validate(self) -> None:
        """Validate all settings.

        Raises:
            ValueError: If a numeric setting is malformed or out of range
        """
        if self.jobs < 1:
            raise ValueError(f"XMLC_JOBS must be >= 1, got {self.jobs}")
        _ = self.seed
        if logging.getLevelName(self.log_level) == f"Level {self.log_level}":
            raise ValueError(f"XMLC_LOG_LEVEL is not a logging level: {self.log_level}")

        logger.info("Configuration loaded")
        logger.info(f"  Data dir: {self.data_dir}")
        logger.info(f"  Output dir: {self.output_dir}")
        logger.info(f"  Jobs: {self.jobs}")


def load_config_file(path: str | Path) -> dict[str, dict[str, str]]:
    """
    Read a flat key=value config file into per-section dictionaries.

    Keys without a prefix configure the RMLS trainer and must match TrainConfig
    field names. Keys written as "wsabie.<field>", "leml.<field>" or
    "lsdr.<field>" configure the corresponding baseline. Values stay strings;
    the config dataclasses convert them.

    Args:
        path: Config file in dotenv syntax (comments with #, KEY=VALUE lines)

    Returns:
        {"train": {...}, "wsabie": {...}, "leml": {...}, "lsdr": {...}}

    Raises:
        FileNotFoundError: If the file does not exist
        ValueError: If a key has an unknown prefix or no value

    Example:
        >>> sections = load_config_file("enron.cfg")  # k=50, wsabie.margin=1
        >>> sections["train"]["k"], sections["wsabie"]["margin"]
        ('50', '1')
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {path}")

    sections: dict[str, dict[str, str]] = {TRAIN_SECTION: {}}
    for section in CONFIG_SECTIONS:
        sections[section] = {}

    for key, value in dotenv_values(path).items():
        if value is None:
            raise ValueError(f"{path}: key '{key}' has no value")
        if "." in key:
            prefix, field = key.split(".", 1)
            if prefix not in CONFIG_SECTIONS:
                raise ValueError(
                    f"{path}: unknown section '{prefix}' in key '{key}' "
                    f"(expected one of {', '.join(CONFIG_SECTIONS)})"
                )
            sections[prefix][field] = value
        else:
            sections[TRAIN_SECTION][key] = value

    return sections


# Singleton instance
settings = Settings()
