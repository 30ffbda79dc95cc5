"""Multi-label learning with many labels.

Modules:
- ingestion: Dataset parsing, imbalance profiling, label filtering, CV splits
- embedding: Representation model inference and persistence
- training: Negative-sampling objective, Adagrad, mini-batch trainer
- baselines: LSDR (PLST, CPLST, FaIE, CSS_ML) and RBL (WSABIE, LEML)
- evaluation: Example-based metrics, cross-validation harness, reports
- cli: Command implementations behind app.py
"""

__version__ = "0.1.0"
