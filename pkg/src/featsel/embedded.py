"""Embedded and wrapper selection methods built on a linear SVM and an LP.

All three are binary-only: multiclass decomposition is out of scope and
requesting it is an error, never silent behavior.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    Direction,
    FeatureScores,
    MethodDescriptor,
    NumericalError,
    UsageError,
    ranking_from_scores,
    require_valid,
    standardize,
)
from .core import DataMatrix
from .numerics import LPProblem, signed_labels, solve_lp, train_linear_svm

SVMRFE = MethodDescriptor("SVM-RFE", "e", "s", "O(T^2 n log2 n)")
L0 = MethodDescriptor("L0", "w", "s", "N/A")
FSV = MethodDescriptor("FSV", "w", "s", "N/A")


@dataclass(frozen=True)
class RfeParams:
    """Recursive elimination settings.

    ``elim_fraction`` None means automatic: one feature per round for
    n <= 200, else half of the survivors per round.
    """

    c_reg: float = 1.0
    elim_fraction: float | None = None

    def __post_init__(self):
        if not self.c_reg > 0:
            raise UsageError("c_reg must be positive")
        if self.elim_fraction is not None and not 0.0 < self.elim_fraction <= 1.0:
            raise UsageError("elim_fraction must be in (0, 1]")


@dataclass(frozen=True)
class FsvParams:
    """Successive-linearization settings for the concave selector."""

    lam: float = 0.5
    alpha_cc: float = 5.0
    max_iter: int = 50
    tol: float = 1e-6

    def __post_init__(self):
        if not 0.0 < self.lam < 1.0:
            raise UsageError("lam must be in (0, 1)")
        if not self.alpha_cc > 0:
            raise UsageError("alpha_cc must be positive")
        if self.max_iter < 1:
            raise UsageError("max_iter must be >= 1")


def svm_rfe(data, labels, params=None):
    """Backward elimination: repeatedly drop the weakest-|w| features.

    Trains on standardized data, eliminates the batch with the smallest
    squared weights each round (ties preferring the smaller index for
    elimination), and ranks features by how long they survived.  A
    feature's stored score is the negative of its position in the
    elimination sequence, LowerBetter, so the last survivor ranks first
    and a whole-batch round still reproduces the within-round w^2 order.
    """
    require_valid(data, labels)
    params = params if params is not None else RfeParams()
    x = standardize(data).values
    n = x.shape[1]
    surviving = list(range(n))
    position = np.empty(n, dtype=np.int64)
    next_pos = 1
    rounds = 0
    while surviving:
        rounds += 1
        model = train_linear_svm(DataMatrix(x[:, surviving]), labels, params.c_reg)
        crit = model.w ** 2
        if params.elim_fraction is None:
            batch = 1 if n <= 200 else max(1, len(surviving) // 2)
        else:
            batch = max(1, int(math.floor(params.elim_fraction * len(surviving))))
        batch = min(batch, len(surviving))
        by_weakness = np.argsort(crit, kind="stable")[:batch]
        # Within the batch, assign elimination positions with index ties
        # reversed, so the reversed sequence ranks equal-weight features
        # by ascending index.
        batch_order = sorted(by_weakness, key=lambda i: (crit[i], -surviving[i]))
        for i in batch_order:
            position[surviving[i]] = next_pos
            next_pos += 1
        keep = np.ones(len(surviving), dtype=bool)
        keep[by_weakness] = False
        surviving = [s for s, k in zip(surviving, keep) if k]
    scores = FeatureScores(-position.astype(np.float64), Direction.LOWER_BETTER)
    method = SVMRFE.with_params(
        {"c_reg": params.c_reg,
         "elim_fraction": "auto" if params.elim_fraction is None else params.elim_fraction},
        iterations=rounds)
    return ranking_from_scores(scores, method)


def l0_fs(data, labels, c_reg=1.0, max_iter=20):
    """Approximate zero-norm selection by multiplicative rescaling.

    Repeatedly trains on the column-rescaled matrix X diag(z) and folds the
    learned |w| back into z.  Weak features shrink geometrically toward 0,
    and a zero is absorbing.  Final z is the score vector.
    """
    require_valid(data, labels)
    if not c_reg > 0:
        raise UsageError("c_reg must be positive")
    if max_iter < 1:
        raise UsageError("max_iter must be >= 1")
    x = standardize(data).values
    n = x.shape[1]
    z = np.ones(n)
    done = 0
    for _ in range(max_iter):
        model = train_linear_svm(DataMatrix(x * z), labels, c_reg)
        z_new = z * np.abs(model.w)
        done += 1
        if np.abs(z_new - z).max() < 1e-8:
            z = z_new
            break
        z = z_new
    method = L0.with_params({"c_reg": c_reg, "max_iter": max_iter}, iterations=done)
    return ranking_from_scores(FeatureScores(z, Direction.HIGHER_BETTER), method)


def _fsv_lp(a_rows, b_rows, g):
    """One linearization step: the LP over stacked (w, gamma, y, z, v)."""
    m, n = a_rows.shape
    k = b_rows.shape[0]
    lam = g["lam"]
    grad = g["grad"]
    n_vars = 2 * n + 1 + m + k
    c = np.concatenate([np.zeros(n + 1),
                        np.full(m, (1.0 - lam) / m),
                        np.full(k, (1.0 - lam) / k),
                        lam * grad])
    rows = []
    rhs = []
    for i in range(m):
        row = np.zeros(n_vars)
        row[:n] = -a_rows[i]
        row[n] = 1.0
        row[n + 1 + i] = -1.0
        rows.append(row)
        rhs.append(-1.0)
    for i in range(k):
        row = np.zeros(n_vars)
        row[:n] = b_rows[i]
        row[n] = -1.0
        row[n + 1 + m + i] = -1.0
        rows.append(row)
        rhs.append(-1.0)
    for j in range(n):
        lo = np.zeros(n_vars)
        lo[j] = -1.0
        lo[n + 1 + m + k + j] = -1.0
        rows.append(lo)
        rhs.append(0.0)
        hi = np.zeros(n_vars)
        hi[j] = 1.0
        hi[n + 1 + m + k + j] = -1.0
        rows.append(hi)
        rhs.append(0.0)
    inf = float("inf")
    bounds = ([(-inf, inf)] * (n + 1)
              + [(0.0, inf)] * (m + k)
              + [(0.0, inf)] * n)
    return LPProblem(c=c, a_ub=np.array(rows), b_ub=np.array(rhs), bounds=bounds)


def fsv_iterates(data, labels, params=None):
    """Run the successive linearizations; returns (v, objectives, iterations).

    ``objectives`` traces the true concave objective
    (1-lam)(mean slack_A + mean slack_B) + lam * sum(1 - exp(-alpha v))
    after each LP solve; it is non-increasing because each LP minimizes a
    tight linear majorant of it.
    """
    require_valid(data, labels)
    params = params if params is not None else FsvParams()
    signed_labels(labels)  # rejects non-binary problems
    x = data.values
    y = labels.labels
    a_rows = x[y == 0]
    b_rows = x[y == 1]
    m, n = a_rows.shape
    k = b_rows.shape[0]
    v = np.ones(n)
    objectives = []
    iterations = 0
    for _ in range(params.max_iter):
        grad = params.alpha_cc * np.exp(-params.alpha_cc * v)
        lp = _fsv_lp(a_rows, b_rows, {"lam": params.lam, "grad": grad})
        sol = solve_lp(lp)
        if sol.status != "optimal":
            raise NumericalError("FSV linearization LP came back %s" % sol.status)
        iterations += 1
        slack_a = sol.x[n + 1:n + 1 + m]
        slack_b = sol.x[n + 1 + m:n + 1 + m + k]
        v_new = sol.x[n + 1 + m + k:]
        true_obj = ((1.0 - params.lam) * (slack_a.mean() + slack_b.mean())
                    + params.lam * np.sum(1.0 - np.exp(-params.alpha_cc * v_new)))
        objectives.append(float(true_obj))
        if np.abs(v_new - v).max() < params.tol:
            v = v_new
            break
        v = v_new
    return v, objectives, iterations


def fsv_rank(data, labels, params=None):
    """Concave-minimization selection; scores are the converged widths v."""
    params = params if params is not None else FsvParams()
    v, _, iterations = fsv_iterates(data, labels, params)
    method = FSV.with_params(
        {"lam": params.lam, "alpha_cc": params.alpha_cc,
         "max_iter": params.max_iter, "tol": params.tol},
        iterations=iterations)
    return ranking_from_scores(FeatureScores(v, Direction.HIGHER_BETTER), method)
