"""Downstream evaluation: stratified folds, simple classifiers, accuracy
curves over subset sizes, and the two-feature synthetic generators used to
demonstrate redundancy and irrelevance.
"""

from dataclasses import dataclass

import numpy as np

from .core import (
    DataError,
    DataMatrix,
    LabelVector,
    UsageError,
    format_float,
    require_valid,
    select_top,
)
from .numerics import cross_sq_dists, train_linear_svm


@dataclass(frozen=True)
class Classifier:
    """Downstream classifier spec: kNN with vote count k, or a linear SVM
    with regularization C.  Serialized as "knn:<k>" / "svm:<C>".
    """

    kind: str
    param: float

    def __post_init__(self):
        if self.kind == "knn":
            if self.param != int(self.param) or self.param < 1:
                raise UsageError("knn k must be an integer >= 1")
        elif self.kind == "svm":
            if not self.param > 0:
                raise UsageError("svm C must be positive")
        else:
            raise UsageError("classifier kind must be knn or svm, got %r"
                             % (self.kind,))

    @classmethod
    def knn(cls, k):
        return cls("knn", float(k))

    @classmethod
    def linear_svm(cls, c_reg):
        return cls("svm", float(c_reg))

    @classmethod
    def parse(cls, text):
        kind, sep, arg = text.partition(":")
        if not sep or kind not in ("knn", "svm"):
            raise UsageError("classifier must look like knn:<k> or svm:<C>, "
                             "got %r" % (text,))
        try:
            value = int(arg) if kind == "knn" else float(arg)
        except ValueError:
            raise UsageError("bad classifier parameter %r" % (arg,)) from None
        return cls(kind, float(value))

    def spec_string(self):
        if self.kind == "knn":
            return "knn:%d" % int(self.param)
        return "svm:%s" % format_float(self.param)


@dataclass(frozen=True)
class EvalReport:
    """Mean/std test accuracy per subset size, over stratified folds."""

    method: str
    classifier: Classifier
    folds: int
    seed: int
    m_grid: tuple
    mean_acc: tuple
    std_acc: tuple

    def __post_init__(self):
        grid = tuple(int(m) for m in self.m_grid)
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise DataError("m_grid must be strictly increasing")
        mean = tuple(float(v) for v in self.mean_acc)
        std = tuple(float(v) for v in self.std_acc)
        if len(mean) != len(grid) or len(std) != len(grid):
            raise DataError("accuracy arrays must match the grid length")
        if any(not 0.0 <= v <= 1.0 for v in mean):
            raise DataError("mean accuracy outside [0, 1]")
        object.__setattr__(self, "m_grid", grid)
        object.__setattr__(self, "mean_acc", mean)
        object.__setattr__(self, "std_acc", std)

    def document(self):
        return {
            "method": self.method,
            "classifier": self.classifier.spec_string(),
            "folds": self.folds,
            "seed": self.seed,
            "grid": list(self.m_grid),
            "mean_acc": list(self.mean_acc),
            "std_acc": list(self.std_acc),
        }


def stratified_kfold(labels, folds, seed):
    """Split sample indices into folds preserving class proportions.

    Within each class the members are shuffled once (seeded) and dealt
    round-robin, so per-class fold counts differ by at most one.  Returns
    a list of (train_indices, test_indices) pairs, both sorted.
    """
    if folds < 2:
        raise UsageError("folds must be >= 2")
    y = labels.labels
    rng = np.random.default_rng(seed)
    members = [[] for _ in range(folds)]
    for c in range(labels.n_classes):
        idx = np.nonzero(y == c)[0]
        if idx.size < folds:
            raise DataError("class %d has %d members, fewer than %d folds"
                            % (c, idx.size, folds))
        for pos, sample in enumerate(rng.permutation(idx)):
            members[pos % folds].append(sample)
    out = []
    everything = np.arange(len(labels))
    for f in range(folds):
        test = np.sort(np.array(members[f], dtype=np.int64))
        train = np.setdiff1d(everything, test)
        out.append((train, test))
    return out


def knn_predict(train, train_labels, test, k):
    """Majority vote over the k nearest training points (Euclidean).

    Distance ties resolve to the lower train index; vote ties to the
    smaller class id.
    """
    t = train.n_samples
    if t == 0:
        raise DataError("empty training set")
    if not 1 <= k <= t:
        raise UsageError("k must be in [1, %d], got %d" % (t, k))
    d2 = cross_sq_dists(test.values, train.values)
    nearest = np.argsort(d2, axis=1, kind="stable")[:, :k]
    votes = train_labels.labels[nearest]
    n_classes = train_labels.n_classes
    out = np.empty(test.n_samples, dtype=np.int64)
    for i in range(test.n_samples):
        counts = np.bincount(votes[i], minlength=n_classes)
        out[i] = int(np.argmax(counts))
    return out


def _classify(classifier, train, train_labels, test):
    if classifier.kind == "knn":
        return knn_predict(train, train_labels, test, int(classifier.param))
    model = train_linear_svm(train, train_labels, classifier.param)
    return (model.decision_values(test) > 0.0).astype(np.int64)


def accuracy_curve(data, labels, rank_fn, m_grid, folds, classifier, seed,
                   method_name=None):
    """Cross-validated accuracy as a function of how many features survive.

    Each fold ranks features using its training rows only, then for every
    m in the grid trains the downstream classifier on the selected columns
    and scores the held-out rows.  ``rank_fn(train, train_labels)`` must
    return a FeatureRanking; the report's method name is taken from it
    unless given explicitly.
    """
    require_valid(data, labels)
    grid = [int(m) for m in m_grid]
    if not grid:
        raise UsageError("m_grid must not be empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise UsageError("m_grid must be strictly increasing")
    if grid[0] < 1 or grid[-1] > data.n_features:
        raise UsageError("m_grid values must lie in [1, %d]" % data.n_features)
    splits = stratified_kfold(labels, folds, seed)
    acc = np.empty((folds, len(grid)))
    name = method_name
    for f, (train_idx, test_idx) in enumerate(splits):
        x_train = DataMatrix(data.values[train_idx])
        y_train = LabelVector(labels.labels[train_idx])
        x_test_rows = data.values[test_idx]
        y_test = labels.labels[test_idx]
        ranking = rank_fn(x_train, y_train)
        if name is None:
            name = ranking.method.name
        for g, m in enumerate(grid):
            cols = select_top(ranking, m).indices
            pred = _classify(classifier,
                             DataMatrix(x_train.values[:, cols]), y_train,
                             DataMatrix(x_test_rows[:, cols]))
            acc[f, g] = np.mean(pred == y_test)
    return EvalReport(method=name if name is not None else "",
                      classifier=classifier, folds=folds, seed=seed,
                      m_grid=tuple(grid),
                      mean_acc=tuple(acc.mean(axis=0)),
                      std_acc=tuple(acc.std(axis=0)))


def _fig4_base(t, seed):
    if t < 4 or t % 2 != 0:
        raise UsageError("T must be even and >= 4, got %d" % t)
    rng = np.random.default_rng(seed)
    y = np.repeat([0, 1], t // 2)
    x = y * 4.0 + rng.standard_normal(t)
    return rng, y, x


def gen_fig4_redundant(t, seed):
    """Balanced two-class data where column 1 duplicates column 0 exactly."""
    _, y, x = _fig4_base(t, seed)
    return DataMatrix(np.column_stack([x, x.copy()])), LabelVector(y)


def gen_fig4_irrelevant(t, seed):
    """Balanced two-class data: column 0 informative, column 1 pure noise."""
    rng, y, x = _fig4_base(t, seed)
    noise = rng.standard_normal(t)
    return DataMatrix(np.column_stack([x, noise])), LabelVector(y)
