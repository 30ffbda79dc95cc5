"""
Label-space dimension reduction baselines.

Every method follows the same pipeline: encode the n×m label matrix Y into
k-dimensional codes, fit a ridge regressor from features to codes, and keep a
decoder that maps codes back to label scores.

    PLST    codes = Y V, V = top-k eigenvectors of YᵀY
    CPLST   as PLST on YᵀHY, H = XX⁺ the hat matrix of the features
    FaIE    codes = top-k eigenvectors of YYᵀ + alpha·H, scaled by sqrt(eigenvalue)
    CSS_ML  codes = k selected label columns of Y (greedy pivoted QR)

Y is used as raw 0/1 values without centering.
"""

import logging

import numpy as np
from scipy import linalg
from scipy.sparse import csr_matrix
from scipy.sparse.linalg import eigsh

from src.errors import DimensionMismatchError
from src.models.configs import LsdrConfig
from src.models.dataset import Dataset, SparseVector
from src.models.lsdr import LsdrMethod, LsdrModel

logger = logging.getLogger(__name__)

# relative cutoff below which eigenvalues, R diagonals and residual norms count as zero
RANK_TOLERANCE = 1e-10


def ridge_regression(X: csr_matrix, targets: np.ndarray, ridge: float) -> np.ndarray:
    """
    Coefficients G minimizing ||XG - T||² + ridge·||G||².

    ridge = 0 falls back to the minimum-norm least-squares solution.
    """
    if ridge > 0:
        gram = np.asarray((X.T @ X).toarray()) + ridge * np.eye(X.shape[1])
        rhs = np.asarray(X.T @ targets)
        return linalg.solve(gram, rhs, assume_a="pos")
    coefficients, *_ = linalg.lstsq(X.toarray(), targets)
    return coefficients


def top_eigenpairs(matrix: np.ndarray, k: int, solver: str = "dense") -> tuple[np.ndarray, np.ndarray]:
    """
    Largest k eigenpairs of a symmetric matrix, in descending eigenvalue order.

    Eigenvector signs are fixed so the entry of largest magnitude is positive.

    Args:
        matrix: Symmetric matrix
        k: Number of pairs (<= size)
        solver: "dense" (full decomposition) or "arpack" (top-k only)

    Returns:
        (eigenvalues of length k, eigenvectors as columns)
    """
    size = matrix.shape[0]
    if not 1 <= k <= size:
        raise ValueError(f"k must be between 1 and {size}, got {k}")

    if solver == "arpack" and k < size - 1:
        values, vectors = eigsh(matrix, k=k, which="LA")
    else:
        if solver == "arpack":
            logger.debug(f"k={k} too close to size {size} for ARPACK; using the dense solver")
        values, vectors = linalg.eigh(matrix)
    order = np.argsort(-values, kind="stable")[:k]
    values, vectors = values[order], vectors[:, order]

    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return values, vectors * signs


def numerical_rank(values: np.ndarray, reference: float) -> int:
    """Count of entries above the relative tolerance of the reference magnitude."""
    if reference <= 0:
        return 0
    return int(np.sum(np.abs(values) > RANK_TOLERANCE * reference))


def hat_basis(X: csr_matrix) -> np.ndarray:
    """
    Orthonormal basis Q of the column space of X, so the hat matrix is H = QQᵀ.

    Uses economic QR with column pivoting, which tolerates rank-deficient X.
    """
    dense = X.toarray()
    if dense.size == 0:
        return np.zeros((X.shape[0], 0))
    Q, R, _ = linalg.qr(dense, mode="economic", pivoting=True)
    diagonal = np.abs(np.diag(R))
    rank = numerical_rank(diagonal, diagonal[0] if diagonal.size else 0.0)
    if rank < min(dense.shape):
        logger.info(f"Feature matrix is rank deficient: rank {rank} of {min(dense.shape)}")
    return Q[:, :rank]


def _check_k(k: int, limit: int, what: str) -> None:
    if not 1 <= k <= limit:
        raise ValueError(f"k must be between 1 and {what}={limit}, got {k}")


def _flag_rank(values: np.ndarray, k: int, diagnostics: dict, method: str) -> None:
    rank = numerical_rank(values, float(np.max(np.abs(values))) if values.size else 0.0)
    diagnostics["rank"] = rank
    diagnostics["rank_deficient"] = k > rank
    if k > rank:
        logger.warning(
            f"{method}: k={k} exceeds the rank {rank} of the label matrix; "
            f"trailing {k - rank} directions carry no label information"
        )


def _label_space_fit(
    method: LsdrMethod,
    ds: Dataset,
    gram: np.ndarray,
    config: LsdrConfig,
    diagnostics: dict,
) -> LsdrModel:
    """Shared PLST/CPLST path: project Y onto top eigenvectors of an m×m Gram matrix."""
    values, V = top_eigenpairs(gram, config.k, config.solver)
    _flag_rank(values, config.k, diagnostics, method.value)
    diagnostics["eigenvalues"] = values.tolist()
    diagnostics["trace_objective"] = float(np.trace(V.T @ gram @ V))

    Y = ds.label_matrix()
    codes = np.asarray(Y @ V)
    regressor = ridge_regression(ds.feature_matrix(), codes, config.ridge)
    logger.info(
        f"{method.value}: k={config.k}, trace objective {diagnostics['trace_objective']:.4f}"
    )
    return LsdrModel(method=method, regressor=regressor, decode=V.T, diagnostics=diagnostics)


def plst_fit(ds: Dataset, config: LsdrConfig) -> LsdrModel:
    """
    Principal label space transformation.

    Args:
        ds: Training data
        config: k (<= m), ridge and eigen-solver

    Returns:
        LsdrModel with orthonormal decoder rows Vᵀ

    Raises:
        ValueError: If k > m
    """
    _check_k(config.k, ds.m, "m")
    Y = ds.label_matrix()
    gram = np.asarray((Y.T @ Y).toarray())
    return _label_space_fit(LsdrMethod.PLST, ds, gram, config, {})


def cplst_fit(ds: Dataset, config: LsdrConfig) -> LsdrModel:
    """
    Conditional principal label space transformation.

    The eigenproblem is on YᵀHY = ZᵀZ with Z = QᵀY, so the n×n hat matrix is
    never formed. With square full-rank X the result equals PLST.
    """
    _check_k(config.k, ds.m, "m")
    Q = hat_basis(ds.feature_matrix())
    Z = np.asarray((ds.label_matrix().T @ Q)).T
    gram = Z.T @ Z
    return _label_space_fit(LsdrMethod.CPLST, ds, gram, config, {"feature_rank": Q.shape[1]})


def faie_fit(ds: Dataset, config: LsdrConfig) -> LsdrModel:
    """
    Feature-aware implicit label space encoding.

    Codes are the top-k eigenvectors U of the n×n matrix YYᵀ + alpha·H scaled
    by the square roots of their eigenvalues; the decoder is the least-squares
    map from codes to Y.

    Diagnostics:
        trace_objective: Tr(Uᵀ(YYᵀ + alpha·H)U)
        predictability: Tr(UᵀHU)/k, the share of the code space lying in the
            column space of X (1 means codes are exactly linear in features)

    Raises:
        ValueError: If k > n
    """
    _check_k(config.k, ds.n, "n")
    Y = ds.label_matrix().toarray()
    Q = hat_basis(ds.feature_matrix())
    hat = Q @ Q.T
    matrix = Y @ Y.T + config.faie_alpha * hat

    values, U = top_eigenpairs(matrix, config.k, config.solver)
    diagnostics = {"feature_rank": Q.shape[1], "eigenvalues": values.tolist()}
    _flag_rank(values, config.k, diagnostics, "faie")
    diagnostics["trace_objective"] = float(np.trace(U.T @ matrix @ U))
    diagnostics["predictability"] = float(np.trace(U.T @ hat @ U)) / config.k

    codes = U * np.sqrt(np.maximum(values, 0.0))
    decode, *_ = linalg.lstsq(codes, Y)
    regressor = ridge_regression(ds.feature_matrix(), codes, config.ridge)
    logger.info(
        f"faie: k={config.k}, alpha={config.faie_alpha}, "
        f"predictability {diagnostics['predictability']:.4f}"
    )
    return LsdrModel(method=LsdrMethod.FAIE, regressor=regressor, decode=decode, diagnostics=diagnostics)


def select_label_columns(Y: np.ndarray, k: int) -> tuple[list[int], int]:
    """
    Greedy pivoted QR on the columns of Y.

    Each step picks the column with the largest norm after removing its
    projection onto the columns already picked (ties go to the smaller
    index). Once every residual is numerically zero the remaining picks are
    the smallest unselected indices.

    Returns:
        (k selected label indices in pick order, number of filled-in picks)
    """
    residual = np.array(Y, dtype=np.float64)
    norms = np.sum(residual * residual, axis=0)
    reference = float(np.max(norms)) if norms.size else 0.0
    selected: list[int] = []

    while len(selected) < k:
        candidates = norms.copy()
        candidates[selected] = -1.0
        best = float(np.max(candidates))
        if reference <= 0 or best <= RANK_TOLERANCE * reference:
            break
        pivot = int(np.flatnonzero(candidates >= best * (1.0 - 1e-12))[0])
        selected.append(pivot)

        direction = residual[:, pivot] / np.sqrt(norms[pivot])
        residual -= np.outer(direction, direction @ residual)
        norms = np.sum(residual * residual, axis=0)

    filled = k - len(selected)
    if filled:
        remaining = [j for j in range(Y.shape[1]) if j not in set(selected)]
        selected.extend(remaining[:filled])
    return selected, filled


def cssml_fit(ds: Dataset, config: LsdrConfig) -> LsdrModel:
    """
    Column subset selection: k representative labels span all m labels.

    The regressor predicts the selected label columns from features; the
    decoder is the least-squares span of Y from those columns.

    Raises:
        ValueError: If k > m
    """
    _check_k(config.k, ds.m, "m")
    Y = ds.label_matrix().toarray()
    selected, filled = select_label_columns(Y, config.k)
    if filled:
        logger.warning(
            f"cssml: only {config.k - filled} label columns are linearly independent; "
            f"filled {filled} picks with the smallest unselected labels"
        )

    Y_selected = Y[:, selected]
    decode, *_ = linalg.lstsq(Y_selected, Y)
    regressor = ridge_regression(ds.feature_matrix(), Y_selected, config.ridge)
    diagnostics = {
        "filled_picks": filled,
        "span_error": float(np.sum((Y - Y_selected @ decode) ** 2)),
    }
    logger.info(f"cssml: k={config.k}, span error {diagnostics['span_error']:.4f}")
    return LsdrModel(
        method=LsdrMethod.CSSML,
        regressor=regressor,
        decode=decode,
        selected_labels=selected,
        diagnostics=diagnostics,
    )


_FITTERS = {
    LsdrMethod.PLST: plst_fit,
    LsdrMethod.CPLST: cplst_fit,
    LsdrMethod.FAIE: faie_fit,
    LsdrMethod.CSSML: cssml_fit,
}


def lsdr_fit(ds: Dataset, method: LsdrMethod, config: LsdrConfig) -> LsdrModel:
    """Fit the named LSDR method."""
    return _FITTERS[method](ds, config)


def lsdr_predict(model: LsdrModel, x: SparseVector) -> np.ndarray:
    """
    Raw label scores x·G·R of one instance.

    Raises:
        DimensionMismatchError: If x does not have the model's feature dimension
    """
    if x.dim != model.d:
        raise DimensionMismatchError(f"instance has d={x.dim}, model expects d={model.d}")
    code = x.values @ model.regressor[x.indices]
    return code @ model.decode


def reconstruction_error(model: LsdrModel, ds: Dataset) -> float:
    """Squared Frobenius error of encoding then decoding the training labels."""
    Y = ds.label_matrix().toarray()
    if model.method is LsdrMethod.CSSML:
        codes = Y[:, model.selected_labels]
    else:
        # least-squares encoding; equals Y V when the decoder rows are orthonormal
        codes = linalg.lstsq(model.decode.T, Y.T)[0].T
    return float(np.sum((Y - codes @ model.decode) ** 2))
