"""
Command-line entry point for multi-label learning with negative sampling.

Commands:
- profile      dataset sizes, label cardinality and imbalance ratios
- train        fit one algorithm on a full dataset and save model.bin
- predict      predict label sets with a saved model
- cv           k-fold cross validation of one algorithm
- sweep-alpha  cross validation of RMLS over several sampling coefficients
- compare      cross validation of several algorithms on identical folds

Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.

Run: python app.py cv --dataset enron.txt --algo rmls --k 50 --alpha 5
"""

import argparse
import logging
import sys
from pathlib import Path

from src.cli.commands import COMMANDS
from src.cli.run_spec import Command, RunSpec
from src.config import settings
from src.errors import DatasetFormatError, DimensionMismatchError, FoldError, ModelFormatError, NumericalError
from src.evaluation.algorithms import Algorithm
from src.models.activations import Sigma
from src.models.configs import LossKind
from src.models.prediction import PredictionRule

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'") from None


def _algo_list(text: str) -> list[Algorithm]:
    try:
        return [Algorithm.parse(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _rule(text: str) -> PredictionRule:
    try:
        return PredictionRule.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="app.py",
        description="Multi-label classification with negative sampling, LSDR and RBL baselines",
    )
    parser.add_argument("command", choices=[c.value for c in Command])
    parser.add_argument("--dataset", type=Path, help="dataset file (falls back to XMLC_DATA_DIR)")
    parser.add_argument("--algo", type=Algorithm.parse, default=Algorithm.RMLS,
                        help="rmls | plst | cplst | faie | cssml | wsabie | leml | baseline")
    parser.add_argument("--algos", type=_algo_list, help="comma-separated algorithms for compare")
    parser.add_argument("--config", type=Path, help="flat key=value hyperparameter file")
    parser.add_argument("--out", type=Path, help="artifact directory (default XMLC_OUTPUT_DIR)")
    parser.add_argument("--model", type=Path, help="saved model for predict")
    parser.add_argument("--seed", type=int, help="master seed (default XMLC_SEED)")
    parser.add_argument("--jobs", type=int,
                        help="folds trained concurrently (default XMLC_JOBS); compare runs algorithms one at a time")
    parser.add_argument("--folds", type=int, default=5)
    parser.add_argument("--rule", type=_rule, default=PredictionRule.threshold(0.5),
                        help="threshold:<cutoff> or topk:<K>")
    parser.add_argument("--one-based", action="store_true", help="dataset indices start at 1")
    parser.add_argument("--alphas", type=_int_list, help="comma-separated sampling coefficients for sweep-alpha")
    parser.add_argument("--min-label-frequency", type=int, help="profile: drop labels with fewer positives")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")

    hyper = parser.add_argument_group("hyperparameters (override the config file)")
    hyper.add_argument("--k", type=int)
    hyper.add_argument("--alpha", type=int)
    hyper.add_argument("--lambda", dest="lam", type=float)
    hyper.add_argument("--eta", type=float)
    hyper.add_argument("--epochs", type=int)
    hyper.add_argument("--batch-size", type=int)
    hyper.add_argument("--loss", type=LossKind, choices=list(LossKind))
    hyper.add_argument("--sigma", type=Sigma, choices=list(Sigma),
                       help="score activation (default follows --loss)")
    hyper.add_argument("--ridge", type=float)
    hyper.add_argument("--faie-alpha", type=float)
    hyper.add_argument("--margin", type=float)
    hyper.add_argument("--max-trials", type=int)
    hyper.add_argument("--sweeps", type=int)
    return parser


def spec_from_args(args: argparse.Namespace) -> RunSpec:
    seed = args.seed if args.seed is not None else settings.seed
    overrides = {
        name: getattr(args, name)
        for name in ("k", "alpha", "lam", "eta", "epochs", "batch_size", "loss", "sigma",
                     "ridge", "faie_alpha", "margin", "max_trials", "sweeps")
    }
    if args.seed is not None:
        overrides["seed"] = args.seed
    spec = RunSpec(
        command=Command(args.command),
        dataset=args.dataset,
        algorithm=args.algo,
        config_path=args.config,
        out_dir=args.out or settings.output_dir,
        seed=seed,
        folds=args.folds,
        jobs=args.jobs if args.jobs is not None else settings.jobs,
        rule=args.rule,
        one_based=args.one_based,
        model_path=args.model,
        min_label_frequency=args.min_label_frequency,
        overrides=overrides,
    )
    if args.algos:
        spec.algorithms = args.algos
    if args.alphas:
        spec.alphas = args.alphas
    return spec


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the CLI exit code."""
    if isinstance(error, FoldError):
        cause = exit_code_for(error.__cause__) if error.__cause__ is not None else 1
        return cause if cause != 1 else EXIT_NUMERICAL
    if isinstance(error, NumericalError):
        return EXIT_NUMERICAL
    if isinstance(error, (DatasetFormatError, DimensionMismatchError, ModelFormatError, FileNotFoundError)):
        return EXIT_DATA
    if isinstance(error, ValueError):
        return EXIT_USAGE
    return 1


def main(argv: list[str] | None = None) -> int:
    """Parse arguments, run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    level = "DEBUG" if args.verbose else settings.log_level
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format='%(asctime)s - %(levelname)s - %(message)s',
    )

    try:
        settings.validate()
        spec = spec_from_args(args)
        spec.validate()
        COMMANDS[spec.command.value](spec)
    except Exception as e:
        code = exit_code_for(e)
        if code == 1:
            raise
        logger.error(f"{args.command} failed: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
