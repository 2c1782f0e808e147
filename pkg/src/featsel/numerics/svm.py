"""Binary linear SVM trained by dual coordinate descent.

The bias is handled liblinear-style, as an extra always-one feature inside
the regularized weight vector; that removes the dual equality constraint so
plain one-at-a-time coordinate updates apply.  Updates run in cyclic sample
order for reproducibility (a seed-controlled shuffled order exists but is
off by default), and training stops on the duality gap.
"""

from dataclasses import dataclass

import numpy as np

from ..core import DataError, UsageError

_DEFAULT_GAP_TOL = 1e-6
_DEFAULT_MAX_EPOCHS = 2000


@dataclass(frozen=True)
class SvmModel:
    """Trained separating hyperplane w.x + b with its regularization C."""

    w: np.ndarray
    b: float
    c_reg: float

    def decision_values(self, x):
        x = x.values if hasattr(x, "values") else np.asarray(x, dtype=np.float64)
        return x @ self.w + self.b

    def predict(self, x):
        """Class ids in {0, 1}; the boundary itself goes to class 1."""
        return (self.decision_values(x) >= 0.0).astype(np.int64)


def svm_primal_objective(w, b, x, y_signed, c_reg):
    """0.5||w||^2 + C * sum hinge, the objective the model is scored by."""
    margins = 1.0 - y_signed * (x @ w + b)
    return 0.5 * float(w @ w) + c_reg * float(np.maximum(margins, 0.0).sum())


def hinge_loss(model, x, y_signed):
    margins = 1.0 - y_signed * (x @ model.w + model.b)
    return float(np.maximum(margins, 0.0).sum())


def signed_labels(labels):
    """Map class ids {0, 1} to {-1, +1} (class 0 -> -1)."""
    if labels.n_classes != 2:
        raise UsageError("linear SVM requires exactly 2 classes, got %d"
                         % labels.n_classes)
    return labels.labels.astype(np.float64) * 2.0 - 1.0


def train_linear_svm(data, labels, c_reg=1.0, gap_tol=_DEFAULT_GAP_TOL,
                     max_epochs=_DEFAULT_MAX_EPOCHS, shuffle_seed=None):
    """L1-hinge, L2-regularized linear SVM: min 0.5||w||^2 + C sum hinge.

    Dual coordinate descent over the samples; stops when the (relative)
    duality gap of the augmented problem falls below ``gap_tol`` or after
    ``max_epochs`` full sweeps.
    """
    if c_reg <= 0:
        raise UsageError("C_reg must be positive")
    x = data.values if hasattr(data, "values") else np.asarray(data, dtype=np.float64)
    y = signed_labels(labels)
    t, n = x.shape
    if y.shape[0] != t:
        raise DataError("labels length does not match sample count")
    xa = np.hstack([x, np.ones((t, 1))])
    q_diag = np.einsum("ij,ij->i", xa, xa)
    alpha = np.zeros(t)
    w = np.zeros(n + 1)
    rng = np.random.default_rng(shuffle_seed) if shuffle_seed is not None else None
    for _ in range(max_epochs):
        idx = rng.permutation(t) if rng is not None else range(t)
        for i in idx:
            g = y[i] * (xa[i] @ w) - 1.0
            pg = g
            if alpha[i] == 0.0:
                pg = min(g, 0.0)
            elif alpha[i] == c_reg:
                pg = max(g, 0.0)
            if pg != 0.0:
                new = min(max(alpha[i] - g / q_diag[i], 0.0), c_reg)
                if new != alpha[i]:
                    w += (new - alpha[i]) * y[i] * xa[i]
                    alpha[i] = new
        margins = 1.0 - y * (xa @ w)
        primal = 0.5 * (w @ w) + c_reg * np.maximum(margins, 0.0).sum()
        dual = alpha.sum() - 0.5 * (w @ w)
        if primal - dual <= gap_tol * max(1.0, abs(primal)):
            break
    return SvmModel(w=w[:n].copy(), b=float(w[n]), c_reg=float(c_reg))
