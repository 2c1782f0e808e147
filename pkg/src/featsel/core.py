"""Core domain types and the ranking/selection pipeline.

Everything downstream (filters, embedded methods, evaluation, CLI) works in
terms of these types.  All containers are immutable after construction and
all operations here are pure functions, so values can be shared freely
across threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

#: Finite stand-in for +/- infinity in score vectors, so rankings serialize
#: cleanly through JSON-like documents.
SCORE_SENTINEL = 1e12


class FeatSelError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(FeatSelError):
    """A caller-side mistake: bad parameter, missing labels, m out of range."""


class DataError(FeatSelError):
    """The input data itself is unusable: malformed file, invalid matrix."""


class NumericalError(FeatSelError):
    """A numerical routine failed: unbounded LP, non-converging eigensolver."""


class Direction(enum.Enum):
    """Whether larger or smaller scores indicate more important features."""

    HIGHER_BETTER = "higher"
    LOWER_BETTER = "lower"


def _frozen_array(values, dtype):
    a = np.array(values, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class DataMatrix:
    """T x n sample-by-feature matrix, the universal input.

    The constructor enforces shape only (T >= 2, n >= 1); finiteness is
    checked by :func:`validate_dataset` so that callers can inspect broken
    inputs instead of failing at construction.
    """

    values: np.ndarray
    feature_names: tuple[str, ...] | None = None

    def __post_init__(self):
        a = np.asarray(self.values, dtype=np.float64)
        if a.ndim != 2:
            raise DataError("data matrix must be 2-D, got ndim=%d" % a.ndim)
        if a.shape[0] < 2 or a.shape[1] < 1:
            raise DataError("data matrix needs T >= 2 samples and n >= 1 features, "
                            "got shape %s" % (a.shape,))
        if self.feature_names is not None:
            names = tuple(str(s) for s in self.feature_names)
            if len(names) != a.shape[1]:
                raise DataError("feature_names length %d != n=%d" % (len(names), a.shape[1]))
            object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "values", _frozen_array(a, np.float64))

    @property
    def n_samples(self):
        return self.values.shape[0]

    @property
    def n_features(self):
        return self.values.shape[1]


@dataclass(frozen=True)
class LabelVector:
    """Integer class ids, expected contiguous in [0, C).

    Loaders always remap raw labels to contiguous ids by first appearance;
    hand-built vectors are checked by :func:`validate_dataset`.
    """

    labels: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.labels)
        if a.ndim != 1:
            raise DataError("labels must be 1-D")
        if a.size == 0:
            raise DataError("labels must be non-empty")
        if not np.issubdtype(a.dtype, np.integer):
            if not np.all(a == np.floor(a)):
                raise DataError("labels must be integers")
            a = a.astype(np.int64)
        if np.any(a < 0):
            raise DataError("labels must be non-negative class ids")
        object.__setattr__(self, "labels", _frozen_array(a, np.int64))

    def __len__(self):
        return self.labels.shape[0]

    @property
    def n_classes(self):
        """C, taken as max id + 1 (ids are expected contiguous)."""
        return int(self.labels.max()) + 1

    def class_counts(self):
        return np.bincount(self.labels, minlength=self.n_classes)


@dataclass(frozen=True)
class FeatureScores:
    """Per-feature score vector plus the direction that means 'better'."""

    scores: np.ndarray
    direction: Direction

    def __post_init__(self):
        a = np.asarray(self.scores, dtype=np.float64)
        if a.ndim != 1:
            raise DataError("scores must be 1-D")
        if np.any(np.isnan(a)):
            raise DataError("scores contain NaN")
        if np.any(np.isinf(a)):
            raise DataError("scores contain infinities; use the +/-1e12 sentinel")
        object.__setattr__(self, "scores", _frozen_array(a, np.float64))

    def __len__(self):
        return self.scores.shape[0]


@dataclass(frozen=True)
class MethodDescriptor:
    """Identity and metadata of a selection method.

    ``fs_type`` is 'f' (filter), 'w' (wrapper) or 'e' (embedded);
    ``fs_class`` is 's' (supervised) or 'u' (unsupervised).  ``iterations``
    is recorded for the iterative methods (Relief-F, FSV, L0, SVM-RFE).
    """

    name: str
    fs_type: str
    fs_class: str
    complexity: str
    params: dict = field(default_factory=dict)
    iterations: int | None = None

    def __post_init__(self):
        if self.fs_type not in ("f", "w", "e"):
            raise UsageError("fs_type must be one of 'f', 'w', 'e'")
        if self.fs_class not in ("s", "u"):
            raise UsageError("fs_class must be 's' or 'u'")

    def with_params(self, params, iterations=None):
        """Copy of this descriptor carrying the effective run parameters."""
        return MethodDescriptor(self.name, self.fs_type, self.fs_class,
                                self.complexity, dict(params), iterations)


@dataclass(frozen=True)
class FeatureRanking:
    """A permutation of feature indices, best first, plus its score vector.

    Rankings built through :func:`ranking_from_scores` are sorted by score;
    greedy methods (mRMR, SVM-RFE) construct the order directly.
    """

    order: np.ndarray
    scores: FeatureScores
    method: MethodDescriptor
    seed: int | None = None

    def __post_init__(self):
        o = np.asarray(self.order, dtype=np.int64)
        n = len(self.scores)
        if o.shape != (n,) or not np.array_equal(np.sort(o), np.arange(n)):
            raise DataError("order must be a permutation of 0..n-1")
        object.__setattr__(self, "order", _frozen_array(o, np.int64))

    @property
    def n_features(self):
        return self.order.shape[0]


@dataclass(frozen=True)
class FeatureSubset:
    """A sorted set of m selected feature indices."""

    indices: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.indices, dtype=np.int64)
        if a.ndim != 1 or np.any(np.diff(a) <= 0) or (a.size and a[0] < 0):
            raise DataError("indices must be strictly increasing and non-negative")
        object.__setattr__(self, "indices", _frozen_array(a, np.int64))

    def __len__(self):
        return self.indices.shape[0]


@dataclass(frozen=True)
class ValidationReport:
    """List of dataset invariant violations; empty means the dataset is usable."""

    problems: tuple[str, ...]

    @property
    def ok(self):
        return len(self.problems) == 0


def validate_dataset(data, labels=None):
    """Check dataset invariants without raising.

    Reports non-finite entries, label/sample length mismatch, missing class
    ids and C < 2.  An empty report means every invariant holds.
    """
    problems = []
    bad = ~np.isfinite(data.values)
    if np.any(bad):
        for r, c in zip(*np.nonzero(bad)):
            problems.append("non-finite entry at (%d,%d)" % (r, c))
    if labels is not None:
        if len(labels) != data.n_samples:
            problems.append("labels length %d != T=%d" % (len(labels), data.n_samples))
        c = labels.n_classes
        if c < 2:
            problems.append("only one class present")
        else:
            counts = labels.class_counts()
            for cls in np.nonzero(counts == 0)[0]:
                problems.append("class %d missing (ids must be contiguous)" % cls)
    return ValidationReport(tuple(problems))


def require_valid(data, labels=None):
    """Raise :class:`DataError` listing every violation found."""
    report = validate_dataset(data, labels)
    if not report.ok:
        raise DataError("invalid dataset: " + "; ".join(report.problems))


def ranking_from_scores(scores, method, seed=None):
    """Sort features by score into a ranking.

    Descending for HIGHER_BETTER, ascending for LOWER_BETTER; equal scores
    keep ascending feature index (stable sort), so results are deterministic
    across runs and platforms.
    """
    key = scores.scores
    if scores.direction is Direction.HIGHER_BETTER:
        key = -key
    order = np.argsort(key, kind="stable")
    return FeatureRanking(order=order, scores=scores, method=method, seed=seed)


def select_top(ranking, m):
    """Take the m top-ranked features, returned as a sorted index subset."""
    n = ranking.n_features
    if not 1 <= m <= n:
        raise UsageError("m must be in [1, %d], got %d" % (n, m))
    return FeatureSubset(indices=np.sort(ranking.order[:m]))


def standardize(data):
    """Center each column to mean 0 and scale to population std 1.

    Zero-variance columns become all-zeros.  Never applied implicitly; the
    methods that need it (SVM-RFE, L0) call it themselves.
    """
    x = data.values
    mu = x.mean(axis=0)
    sd = x.std(axis=0)
    out = x - mu
    nz = sd > 0.0
    out[:, nz] /= sd[nz]
    out[:, ~nz] = 0.0
    return DataMatrix(out, feature_names=data.feature_names)


def format_float(v):
    """Canonical float rendering: 17 significant digits, round-trip exact."""
    return format(float(v), ".17g")


def stringify_params(params):
    """Render a params map as the string map used in serialized documents."""
    out = {}
    for k in params:
        v = params[k]
        if isinstance(v, bool):
            out[k] = "true" if v else "false"
        elif isinstance(v, (int, np.integer)):
            out[k] = str(int(v))
        elif isinstance(v, (float, np.floating)):
            out[k] = format_float(v)
        else:
            out[k] = str(v)
    return out


def ranking_document(ranking):
    """Build the canonical ranking document (the wire schema for rankings).

    Keys, in order: method, fs_type, fs_class, direction, scores, order,
    params, seed.
    """
    m = ranking.method
    return {
        "method": m.name,
        "fs_type": m.fs_type,
        "fs_class": m.fs_class,
        "direction": ranking.scores.direction.value,
        "scores": [float(s) for s in ranking.scores.scores],
        "order": [int(i) for i in ranking.order],
        "params": stringify_params(m.params),
        "seed": None if ranking.seed is None else int(ranking.seed),
    }
