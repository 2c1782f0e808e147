"""Array-facing shim over the featsel ranking pipeline.

A marshaling layer only: plain arrays in, a plain record out.  All
behavior, validation and error reporting is featsel's own; nothing is
recomputed here, so the record matches what the CLI serializes for the
same inputs.
"""

import dataclasses

import numpy as np

from featsel import core, registry

__version__ = "0.1.0"


@dataclasses.dataclass(frozen=True)
class BoundRanking:
    """Mirror of a featsel ranking: feature indices best-first, per-feature
    scores, the method display name and the serialized parameter map."""

    order: np.ndarray
    scores: np.ndarray
    method: str
    params: dict

    def __post_init__(self):
        object.__setattr__(self, "order",
                           np.asarray(self.order, dtype=np.int64))
        object.__setattr__(self, "scores",
                           np.asarray(self.scores, dtype=np.float64))

    @property
    def n_features(self):
        return self.order.shape[0]


def rank(data, labels, method, params=None, seed=0):
    """Rank the columns of a 2-D array via featsel.registry.rank.

    labels may be None for the unsupervised methods.  featsel's own
    exceptions (UsageError, DataError, NumericalError) propagate unchanged.
    """
    x = core.DataMatrix(np.asarray(data, dtype=np.float64))
    y = None if labels is None else core.LabelVector(np.asarray(labels))
    native = registry.rank(x, y, method, params=params or {}, seed=seed)
    return BoundRanking(order=native.order,
                        scores=native.scores.scores,
                        method=native.method.name,
                        params=core.stringify_params(native.method.params))


def select_top(ranking, m):
    """Sorted indices of the m best features of a BoundRanking."""
    return core.select_top(ranking, m).indices


def list_methods():
    """The 11 method descriptors, in registry order."""
    return [registry.descriptor(key) for key in registry.method_names()]
