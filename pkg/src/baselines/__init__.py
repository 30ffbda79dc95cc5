"""Baselines the negative-sampling trainer is compared against.

Handles:
- Label-space dimension reduction: PLST, CPLST, FaIE, CSS_ML
- Representation learning: WSABIE (WARP loss) and LEML (alternating least squares)
"""
from .leml import leml_train
from .lsdr import cplst_fit, cssml_fit, faie_fit, lsdr_fit, lsdr_predict, plst_fit
from .wsabie import warp_rank_weight, warp_violation_rate, wsabie_train

__all__ = [
    "plst_fit",
    "cplst_fit",
    "faie_fit",
    "cssml_fit",
    "lsdr_fit",
    "lsdr_predict",
    "warp_rank_weight",
    "wsabie_train",
    "warp_violation_rate",
    "leml_train",
]
