"""L1-penalized least squares by cyclic coordinate descent."""

import numpy as np

from ..core import DataError


def soft_threshold(v, t):
    if v > t:
        return v - t
    if v < -t:
        return v + t
    return 0.0


def lasso_max_penalty(x, y):
    """Smallest penalty that forces the all-zero solution: max_j |X_j.y| / T."""
    t = x.shape[0]
    return float(np.abs(x.T @ y).max() / t)


def lasso_cd(x, y, penalty, tol=1e-10, max_iter=10000):
    """Minimize (1/2T)||y - X a||^2 + penalty * ||a||_1.

    Cyclic coordinate descent with soft-thresholding, stopping when the
    largest coordinate change in a sweep drops below ``tol``.  Columns are
    used as given; callers wanting scale-free penalties standardize first.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 2 or y.shape != (x.shape[0],):
        raise DataError("lasso_cd needs X (T x n) and y (T,)")
    if penalty < 0:
        raise DataError("penalty must be >= 0")
    t, n = x.shape
    col_sq = np.einsum("ij,ij->j", x, x) / t
    a = np.zeros(n)
    r = y.copy()
    for _ in range(max_iter):
        delta = 0.0
        for j in range(n):
            if col_sq[j] == 0.0:
                continue
            old = a[j]
            rho = (x[:, j] @ r) / t + col_sq[j] * old
            new = soft_threshold(rho, penalty) / col_sq[j]
            if new != old:
                r += x[:, j] * (old - new)
                a[j] = new
                delta = max(delta, abs(new - old))
        if delta < tol:
            break
    return a
