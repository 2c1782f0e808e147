"""The eight filter-type selection methods.

Filters score features from intrinsic properties of the data (class
separation, information content, locality preservation, graph centrality)
without training any classifier.  Each function is pure: same data, same
parameters, same scores.
"""

from dataclasses import dataclass

import numpy as np

from .core import (
    SCORE_SENTINEL,
    Direction,
    FeatureRanking,
    FeatureScores,
    MethodDescriptor,
    NumericalError,
    UsageError,
    require_valid,
)
from .numerics import (
    default_bins,
    discretize,
    lasso_cd,
    lasso_max_penalty,
    mutual_information,
    pairwise_sq_dists,
    power_iteration,
    smallest_generalized_eigvecs,
    spearman,
)

FISHER = MethodDescriptor("Fisher", "f", "s", "O(Tn)")
MUTINF = MethodDescriptor("MutInf", "f", "s", "~O(n^2 T^2)")
RELIEFF = MethodDescriptor("Relief-F", "f", "s", "O(iTnC)")
LAPLACIAN = MethodDescriptor("LaplacianScore", "f", "u", "N/A")
MCFS = MethodDescriptor("MCFS", "f", "u", "N/A")
MRMR = MethodDescriptor("mRMR", "f", "s", "O(n^3 T^2)")
INFFS = MethodDescriptor("Inf-FS", "f", "u", "O(n^2.37 (1+T))")
ECFS = MethodDescriptor("EC-FS", "f", "s", "O(Tn + n^2)")


@dataclass(frozen=True)
class GraphParams:
    """Neighborhood-graph settings shared by laplacian_score and mcfs_score.

    ``heat_t`` is the heat-kernel bandwidth; None means automatic (mean
    nonzero squared distance).
    """

    k_neighbors: int = 5
    heat_t: float | None = None

    def __post_init__(self):
        if self.k_neighbors < 1:
            raise UsageError("k_neighbors must be >= 1, got %d" % self.k_neighbors)
        if self.heat_t is not None and not self.heat_t > 0:
            raise UsageError("heat_t must be positive")


def build_heat_graph(data, gp):
    """OR-symmetrized kNN graph with heat-kernel edge weights.

    Nodes i and j are connected when either is among the other's
    k_neighbors nearest points (self excluded, distance ties broken by
    ascending index).  Edge weight is exp(-d^2/t).  Returns the weight
    matrix and the degree vector.
    """
    t_samples = data.n_samples
    if gp.k_neighbors >= t_samples:
        raise UsageError("k_neighbors=%d must be < T=%d" % (gp.k_neighbors, t_samples))
    d2 = pairwise_sq_dists(data)
    adj = np.zeros((t_samples, t_samples), dtype=bool)
    for i in range(t_samples):
        order = np.argsort(d2[i], kind="stable")
        picked = 0
        for j in order:
            if j == i:
                continue
            adj[i, j] = True
            picked += 1
            if picked == gp.k_neighbors:
                break
    adj |= adj.T
    if gp.heat_t is None:
        nonzero = d2[d2 > 0.0]
        heat = float(nonzero.mean()) if nonzero.size else 1.0
    else:
        heat = float(gp.heat_t)
    weights = np.where(adj, np.exp(-d2 / heat), 0.0)
    return weights, weights.sum(axis=1)


def fisher_score(data, labels):
    """Between-class mean spread over within-class variance, per feature.

    Features with (near) zero within-class variance get 0 when the class
    means also coincide, else the sentinel (perfectly separating).
    """
    require_valid(data, labels)
    x = data.values
    y = labels.labels
    n = data.n_features
    mu = x.mean(axis=0)
    num = np.zeros(n)
    den = np.zeros(n)
    for c in range(labels.n_classes):
        xc = x[y == c]
        tc = xc.shape[0]
        muc = xc.mean(axis=0)
        num += tc * (muc - mu) ** 2
        den += tc * xc.var(axis=0)
    scores = np.zeros(n)
    ok = den >= 1e-12
    scores[ok] = num[ok] / den[ok]
    scores[~ok & (num >= 1e-12)] = SCORE_SENTINEL
    return FeatureScores(scores, Direction.HIGHER_BETTER)


def mutinf_fs(data, labels, bins=None):
    """Mutual information between each binned feature and the labels.

    Features are evaluated independently; no interaction terms.
    """
    require_valid(data, labels)
    b = default_bins(data.n_samples) if bins is None else int(bins)
    codes, _ = discretize(data, b)
    scores = np.array([mutual_information(codes[:, j], labels.labels)
                       for j in range(data.n_features)])
    return FeatureScores(scores, Direction.HIGHER_BETTER)


def relief_f(data, labels, k=10, sample_count=None, seed=0):
    """Relief-F weights: how well feature values separate near neighbors.

    Probes every sample when ``sample_count`` is None, else draws that many
    probes with replacement from a generator seeded with ``seed``.  For
    each probe, the k nearest same-class hits (probe excluded) pull the
    weight down by their mean per-feature difference and the k nearest
    misses of every other class push it up, weighted by class priors.
    Differences are normalized by the feature range, so weights stay in
    [-1, 1] and constant features get exactly 0.
    """
    require_valid(data, labels)
    if k < 1:
        raise UsageError("k must be >= 1, got %d" % k)
    x = data.values
    t, n = x.shape
    y = labels.labels
    priors = labels.class_counts() / t
    if sample_count is None:
        probes = np.arange(t)
    else:
        if sample_count < 1:
            raise UsageError("sample_count must be >= 1, got %d" % sample_count)
        probes = np.random.default_rng(seed).integers(0, t, size=sample_count)
    d2 = pairwise_sq_dists(x)
    span = x.max(axis=0) - x.min(axis=0)
    scale = np.where(span > 0.0, span, 1.0)
    live = span > 0.0

    w = np.zeros(n)
    n_probes = probes.shape[0]
    for p in probes:
        cp = int(y[p])
        order = np.argsort(d2[p], kind="stable")
        for c in range(labels.n_classes):
            pool = order[y[order] == c]
            if c == cp:
                pool = pool[pool != p]
            sel = pool[:k]
            if sel.shape[0] == 0:
                continue
            diff = (np.abs(x[sel] - x[p]) / scale).mean(axis=0) * live
            if c == cp:
                w -= diff / n_probes
            else:
                w += (priors[c] / (1.0 - priors[cp])) * diff / n_probes
    return FeatureScores(w, Direction.HIGHER_BETTER)


def laplacian_score(data, gp=None):
    """Locality preservation score; smaller means the feature respects the
    neighborhood graph better.

    Constant features cannot preserve any structure and get the sentinel.
    """
    require_valid(data)
    gp = gp if gp is not None else GraphParams()
    weights, degrees = build_heat_graph(data, gp)
    x = data.values
    n = data.n_features
    dsum = degrees.sum()
    scores = np.empty(n)
    for j in range(n):
        f = x[:, j]
        ftil = f - (f @ degrees) / dsum
        den = float((ftil * ftil) @ degrees)
        if den < 1e-12:
            scores[j] = SCORE_SENTINEL
            continue
        num = den - float(ftil @ (weights @ ftil))
        scores[j] = max(num, 0.0) / den
    return FeatureScores(scores, Direction.LOWER_BETTER)


def mcfs_score(data, gp=None, n_eigvecs=None, lambda_frac=0.01, labels=None):
    """Multi-cluster score: sparse regression onto spectral embedding axes.

    Takes the K smallest non-trivial generalized eigenvectors of the graph
    Laplacian, fits one lasso per eigenvector with penalty
    lambda_frac * (max penalty), and scores each feature by its largest
    absolute coefficient across the K fits.  K defaults to the class count
    when labels are supplied, else 5.
    """
    require_valid(data)
    gp = gp if gp is not None else GraphParams()
    if n_eigvecs is not None:
        k = int(n_eigvecs)
    elif labels is not None:
        k = labels.n_classes
    else:
        k = 5
    if k < 1:
        raise UsageError("n_eigvecs must be >= 1, got %d" % k)
    weights, degrees = build_heat_graph(data, gp)
    lap = np.diag(degrees) - weights
    embedding = smallest_generalized_eigvecs(lap, degrees, k)
    x = data.values
    scores = np.zeros(data.n_features)
    for col in range(k):
        target = embedding[:, col]
        penalty = lambda_frac * lasso_max_penalty(x, target)
        coef = lasso_cd(x, target, penalty)
        scores = np.maximum(scores, np.abs(coef))
    return FeatureScores(scores, Direction.HIGHER_BETTER)


def mrmr_rank(data, labels, bins=None):
    """Greedy max-relevance min-redundancy ranking (difference criterion).

    Picks argmax I(feature; labels) first, then repeatedly the feature
    maximizing I(j; labels) - mean over selected s of I(j; s), all on
    equal-frequency binned data.  Ties go to the smallest index.  Each
    feature's stored score is its criterion value at selection time, so
    the score vector is not monotone along the order.
    """
    require_valid(data, labels)
    t, n = data.values.shape
    b = default_bins(t) if bins is None else int(bins)
    codes, _ = discretize(data, b)
    y = labels.labels
    relevance = np.array([mutual_information(codes[:, j], y) for j in range(n)])

    order = np.empty(n, dtype=np.int64)
    scores = np.zeros(n)
    mask = np.ones(n, dtype=bool)
    red_sum = np.zeros(n)
    crit = relevance.copy()
    for step in range(n):
        cand = np.flatnonzero(mask)
        j = int(cand[np.argmax(crit[cand])])
        order[step] = j
        scores[j] = crit[j]
        mask[j] = False
        if step < n - 1:
            for q in np.flatnonzero(mask):
                red_sum[q] += mutual_information(codes[:, q], codes[:, j])
            crit = relevance - red_sum / (step + 1)
    return FeatureRanking(order=order,
                          scores=FeatureScores(scores, Direction.HIGHER_BETTER),
                          method=MRMR.with_params({"bins": b}))


def inf_fs_adjacency(data, alpha=0.5):
    """Pairwise path-weight matrix mixing spread and non-redundancy.

    Entry (i, j) is alpha * max of the two rescaled feature spreads plus
    (1 - alpha) * (1 - |rank correlation|).  Feature spreads are rescaled
    to [0, 1] across features; when all are equal they rescale to 1.
    """
    if data.n_features < 2:
        raise UsageError("inf_fs needs n >= 2 features")
    if not 0.0 <= alpha <= 1.0:
        raise UsageError("alpha must be in [0, 1]")
    x = data.values
    n = data.n_features
    stds = x.std(axis=0)
    span = stds.max() - stds.min()
    sig = np.ones(n) if span == 0.0 else (stds - stds.min()) / span
    corr = np.empty((n, n))
    for i in range(n):
        corr[i, i] = 1.0 - abs(spearman(x[:, i], x[:, i]))
        for j in range(i + 1, n):
            c = 1.0 - abs(spearman(x[:, i], x[:, j]))
            corr[i, j] = c
            corr[j, i] = c
    return alpha * np.maximum(sig[:, None], sig[None, :]) + (1.0 - alpha) * corr


def path_centrality(a, r):
    """Row sums of sum_{l>=1} (r*a)^l, aggregated by a dense solve.

    Requires r * spectral_radius(a) < 1 so the power series converges.
    """
    n = a.shape[0]
    s = np.linalg.solve(np.eye(n) - r * a, np.eye(n)) - np.eye(n)
    return s.sum(axis=1)


def inf_fs(data, alpha=0.5):
    """Score features by total weight over all graph paths through them.

    Builds the adjacency, damps it to spectral radius 0.9, and sums the
    geometric series of powers via a dense solve; row sums aggregate every
    path length.  A zero adjacency carries no paths: all scores 0.
    """
    require_valid(data)
    a = inf_fs_adjacency(data, alpha)
    n = data.n_features
    try:
        _, rho = power_iteration(a)
    except NumericalError:
        return FeatureScores(np.zeros(n), Direction.HIGHER_BETTER)
    return FeatureScores(path_centrality(a, 0.9 / rho), Direction.HIGHER_BETTER)


def _minmax_unit(v):
    """Min-max rescale to [0, 1]; an all-equal vector maps to all ones."""
    span = v.max() - v.min()
    if span == 0.0:
        return np.ones_like(v)
    return (v - v.min()) / span


def ec_fs(data, labels, alpha=0.5, bins=None):
    """Eigenvector centrality over a relevance graph.

    The adjacency is a convex mix of outer products of two relevance
    vectors (rescaled Fisher and mutual-information scores); each feature's
    score is its component of the principal eigenvector, so important
    features are the ones connected to other important features.
    """
    require_valid(data, labels)
    if data.n_features < 2:
        raise UsageError("ec_fs needs n >= 2 features")
    if not 0.0 <= alpha <= 1.0:
        raise UsageError("alpha must be in [0, 1]")
    v = _minmax_unit(fisher_score(data, labels).scores)
    m = _minmax_unit(mutinf_fs(data, labels, bins).scores)
    a = alpha * np.outer(v, v) + (1.0 - alpha) * np.outer(m, m)
    vec, _ = power_iteration(a)
    return FeatureScores(vec, Direction.HIGHER_BETTER)
