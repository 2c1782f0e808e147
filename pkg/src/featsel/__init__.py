"""featsel: feature ranking and selection toolbox.

Eight filter methods, two wrappers and one embedded method behind a single
rank/select interface, plus a cross-validated evaluation harness and a CLI.
"""

from .core import (
    DataError,
    DataMatrix,
    Direction,
    FeatSelError,
    FeatureRanking,
    FeatureScores,
    FeatureSubset,
    LabelVector,
    MethodDescriptor,
    NumericalError,
    UsageError,
    ValidationReport,
    ranking_document,
    ranking_from_scores,
    select_top,
    standardize,
    validate_dataset,
)

__version__ = "0.1.0"
