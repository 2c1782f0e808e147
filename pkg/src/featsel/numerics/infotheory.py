"""Histogram-based information measures and equal-frequency binning.

Mutual information is computed in bits from the empirical contingency
table, so a perfect binary predictor of a balanced binary target scores
exactly 1.0.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..core import DataError


def mutual_information(xs, ys):
    """I(X;Y) in bits from the empirical joint distribution.

    Inputs are discrete id vectors (bin ids, class ids).  Only nonzero
    joint cells contribute.
    """
    xs = np.asarray(xs)
    ys = np.asarray(ys)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise DataError("mutual_information needs two equal-length vectors")
    t = xs.shape[0]
    _, xi = np.unique(xs, return_inverse=True)
    _, yi = np.unique(ys, return_inverse=True)
    nx = xi.max() + 1
    ny = yi.max() + 1
    joint = np.bincount(xi * ny + yi, minlength=nx * ny).reshape(nx, ny)
    px = joint.sum(axis=1)
    py = joint.sum(axis=0)
    mi = 0.0
    for a in range(nx):
        for b in range(ny):
            c = joint[a, b]
            if c > 0:
                mi += (c / t) * math.log2(c * t / (px[a] * py[b]))
    # Tiny negative values can appear from float rounding in the log sums.
    return max(mi, 0.0)


def entropy(xs):
    """Shannon entropy in bits of a discrete id vector."""
    xs = np.asarray(xs)
    counts = np.unique(xs, return_counts=True)[1]
    p = counts / xs.shape[0]
    return float(-(p * np.log2(p)).sum())


@dataclass(frozen=True)
class Discretizer:
    """Per-feature interior bin edges from equal-frequency binning.

    A value lands in bin = number of edges strictly below it, so a value
    equal to an edge goes to the lower bin.
    """

    edges: tuple
    bins: int

    def transform(self, data):
        x = data.values if hasattr(data, "values") else np.asarray(data, dtype=np.float64)
        if x.shape[1] != len(self.edges):
            raise DataError("discretizer was fit on %d features, got %d"
                            % (len(self.edges), x.shape[1]))
        out = np.empty(x.shape, dtype=np.int64)
        for j, e in enumerate(self.edges):
            out[:, j] = np.searchsorted(e, x[:, j], side="left")
        return out


def default_bins(t):
    """Default bin count: ceil(sqrt(T)), capped at 256."""
    return min(int(math.ceil(math.sqrt(t))), 256)


def discretize(data, bins):
    """Equal-frequency binning, per feature.

    The effective bin count is min(bins, number of distinct values); edges
    sit at empirical quantiles.  A constant feature maps to the single bin
    id 0.  Returns the discrete matrix and the fitted Discretizer.
    """
    if bins < 2:
        raise DataError("bins must be >= 2")
    x = data.values if hasattr(data, "values") else np.asarray(data, dtype=np.float64)
    edges = []
    for j in range(x.shape[1]):
        col = x[:, j]
        b = min(bins, np.unique(col).shape[0])
        if b <= 1:
            edges.append(np.empty(0, dtype=np.float64))
            continue
        qs = np.arange(1, b) / b
        # Heavy ties can collapse neighboring quantiles; dedupe keeps the
        # edge list strictly increasing without changing the partition.
        edges.append(np.unique(np.quantile(col, qs)))
    disc = Discretizer(edges=tuple(edges), bins=bins)
    return disc.transform(x), disc
