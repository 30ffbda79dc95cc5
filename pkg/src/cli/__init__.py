"""Command-line front end.

Handles:
- RunSpec: one validated CLI invocation with layered hyperparameters
- profile, train, predict, cv, sweep-alpha and compare commands
"""
from .commands import COMMANDS, cmd_compare, cmd_cv, cmd_predict, cmd_profile, cmd_sweep_alpha, cmd_train
from .run_spec import Command, RunSpec

__all__ = [
    "Command",
    "RunSpec",
    "COMMANDS",
    "cmd_profile",
    "cmd_train",
    "cmd_predict",
    "cmd_cv",
    "cmd_sweep_alpha",
    "cmd_compare",
]
