"""
The sampled training objective and its exact gradients.

For a batch B of (x_i, P_i, S_i):

    J = sum_i [ sum_{j in P_i} loss(f^j(x_i), 1) + sum_{j in S_i} loss(f^j(x_i), 0) ]
        + lam ||W||_F^2 + lam sum_{j in T} ||l_j||^2

where T is the union of all P_i and S_i in the batch. Only columns of L in T
are read or written, so a batch costs O(sum_i (nnz(x_i) + |P_i| + |S_i|) k)
plus the dense W regularizer.
"""

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix

from src.errors import DimensionMismatchError
from src.models.configs import LossKind
from src.models.dataset import LabelSet, SparseVector
from src.models.embedding import EmbeddingModel
from src.embedding.inference import represent
from src.training.losses import point_loss

Batch = list[tuple[SparseVector, LabelSet, LabelSet]]


@dataclass
class BatchGradients:
    """
    Gradients of the batch objective.

    Attributes:
        grad_W: d×k gradient w.r.t. W
        touched: Sorted label indices whose columns of L have gradients
        grad_L: k×len(touched) gradient w.r.t. L[:, touched]; all other columns are zero
    """
    grad_W: np.ndarray
    touched: np.ndarray
    grad_L: np.ndarray


def _label_losses(model: EmbeddingModel, x: SparseVector, labels: np.ndarray, y: np.ndarray, loss: LossKind):
    h = represent(model, x)
    raw = h @ model.L[:, labels]
    activated = model.sigma.apply(raw)
    losses, _ = point_loss(loss, raw, activated, y, model.sigma)
    return losses


def sampled_instance_loss(
    model: EmbeddingModel,
    x: SparseVector,
    P: LabelSet,
    S: LabelSet,
    loss: LossKind = LossKind.CROSS_ENTROPY,
) -> float:
    """
    Loss of one instance over its relevant and sampled irrelevant labels.

    Raises:
        ValueError: If S and P overlap
    """
    overlap = set(P.labels) & set(S.labels)
    if overlap:
        raise ValueError(f"sampled negatives overlap relevant labels: {sorted(overlap)}")
    if not len(P) and not len(S):
        return 0.0
    labels = np.concatenate([P.as_array(), S.as_array()])
    y = np.concatenate([np.ones(len(P)), np.zeros(len(S))])
    return float(np.sum(_label_losses(model, x, labels, y, loss)))


def cost_sensitive_loss(
    model: EmbeddingModel,
    x: SparseVector,
    P: LabelSet,
    N: LabelSet,
    C: float,
    loss: LossKind = LossKind.CROSS_ENTROPY,
) -> float:
    """
    Full cost-sensitive loss: relevant labels at weight 1, irrelevant ones at 1/C.

    With C = |N| / (alpha·|P|) this is the expectation of sampled_instance_loss
    over uniformly drawn negative sets of size alpha·|P|.
    """
    if C <= 0:
        raise ValueError(f"C must be > 0, got {C}")
    positive = _label_losses(model, x, P.as_array(), np.ones(len(P)), loss) if len(P) else np.zeros(0)
    negative = _label_losses(model, x, N.as_array(), np.zeros(len(N)), loss) if len(N) else np.zeros(0)
    return float(np.sum(positive) + np.sum(negative) / C)


def stack_features(vectors: list[SparseVector], d: int) -> csr_matrix:
    """Stack sparse vectors into a len(vectors)×d CSR matrix."""
    for x in vectors:
        if x.dim != d:
            raise DimensionMismatchError(f"instance has d={x.dim}, model expects d={d}")
    indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([x.nnz for x in vectors])
    if vectors:
        indices = np.concatenate([x.indices for x in vectors])
        data = np.concatenate([x.values for x in vectors])
    else:
        indices, data = np.zeros(0, dtype=np.int64), np.zeros(0)
    return csr_matrix((data, indices, indptr), shape=(len(vectors), d))


def objective_and_gradients(
    model: EmbeddingModel,
    X: csr_matrix,
    positives: list[LabelSet],
    negatives: list[LabelSet],
    lam: float,
    loss: LossKind,
) -> tuple[float, BatchGradients]:
    """
    Batch objective and gradients from a stacked feature matrix.

    Args:
        model: Current parameters
        X: b×d features of the batch
        positives: P_i per row of X
        negatives: S_i per row of X (disjoint from P_i)
        lam: Regularization coefficient
        loss: Per-label loss

    Returns:
        (objective, BatchGradients)
    """
    rows, labels, targets = [], [], []
    for i, (P, S) in enumerate(zip(positives, negatives)):
        rows.append(np.full(len(P) + len(S), i, dtype=np.int64))
        labels.append(P.as_array())
        labels.append(S.as_array())
        targets.append(np.ones(len(P)))
        targets.append(np.zeros(len(S)))
    rows = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
    labels = np.concatenate(labels) if labels else np.zeros(0, dtype=np.int64)
    targets = np.concatenate(targets) if targets else np.zeros(0)

    W, L = model.W, model.L
    regularizer_W = lam * float(np.sum(W * W))
    if labels.size == 0:
        grads = BatchGradients(
            grad_W=2.0 * lam * W,
            touched=np.zeros(0, dtype=np.int64),
            grad_L=np.zeros((model.k, 0)),
        )
        return regularizer_W, grads

    touched = np.unique(labels)
    cols = np.searchsorted(touched, labels)
    L_touched = L[:, touched]

    pre = np.asarray(X @ W)
    H = model.theta.apply(pre)
    raw = np.einsum("ik,ki->i", H[rows], L_touched[:, cols])
    activated = model.sigma.apply(raw)
    losses, draw = point_loss(loss, raw, activated, targets, model.sigma)

    objective = float(np.sum(losses)) + regularizer_W + lam * float(np.sum(L_touched * L_touched))

    # D[i, t] = dJ/draw for the (instance, touched label) pairs present in the batch
    D = csr_matrix((draw, (rows, cols)), shape=(X.shape[0], touched.size))
    dH = np.asarray(D @ L_touched.T)
    dpre = dH * model.theta.derivative(pre, H)
    grad_W = np.asarray(X.T @ dpre) + 2.0 * lam * W
    grad_L = np.asarray(D.T @ H).T + 2.0 * lam * L_touched

    return objective, BatchGradients(grad_W=grad_W, touched=touched, grad_L=grad_L)


def batch_objective(
    model: EmbeddingModel,
    batch: Batch,
    lam: float,
    loss: LossKind = LossKind.CROSS_ENTROPY,
) -> float:
    """
    Objective of a batch of (x, P, S) triples, regularizing only touched label columns.

    Raises:
        ValueError: If the batch is empty
    """
    if not batch:
        raise ValueError("batch must not be empty")
    total = sum(sampled_instance_loss(model, x, P, S, loss) for x, P, S in batch)
    touched = np.unique(np.concatenate([P.as_array() for _, P, _ in batch] + [S.as_array() for _, _, S in batch]))
    L_touched = model.L[:, touched]
    return total + lam * float(np.sum(model.W * model.W)) + lam * float(np.sum(L_touched * L_touched))


def batch_gradients(
    model: EmbeddingModel,
    batch: Batch,
    lam: float,
    loss: LossKind = LossKind.CROSS_ENTROPY,
) -> BatchGradients:
    """Exact gradients of batch_objective w.r.t. W and the touched columns of L."""
    if not batch:
        raise ValueError("batch must not be empty")
    X = stack_features([x for x, _, _ in batch], model.d)
    _, grads = objective_and_gradients(
        model, X, [P for _, P, _ in batch], [S for _, _, S in batch], lam, loss
    )
    return grads
