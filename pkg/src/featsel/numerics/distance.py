"""Dense pairwise distances."""

import numpy as np


def pairwise_sq_dists(data):
    """T x T matrix of squared Euclidean distances between sample rows.

    Symmetric with an exactly zero diagonal.  Accepts a DataMatrix or a
    plain 2-D array.
    """
    x = data.values if hasattr(data, "values") else np.asarray(data, dtype=np.float64)
    sq = np.einsum("ij,ij->i", x, x)
    d = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
    np.maximum(d, 0.0, out=d)
    d = 0.5 * (d + d.T)
    np.fill_diagonal(d, 0.0)
    return d


def cross_sq_dists(a, b):
    """len(a) x len(b) matrix of squared Euclidean distances between rows."""
    xa = a.values if hasattr(a, "values") else np.asarray(a, dtype=np.float64)
    xb = b.values if hasattr(b, "values") else np.asarray(b, dtype=np.float64)
    sa = np.einsum("ij,ij->i", xa, xa)
    sb = np.einsum("ij,ij->i", xb, xb)
    d = sa[:, None] + sb[None, :] - 2.0 * (xa @ xb.T)
    np.maximum(d, 0.0, out=d)
    return d
