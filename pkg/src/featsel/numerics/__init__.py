"""Shared numerical kernels the selection methods are built on."""

from .distance import cross_sq_dists, pairwise_sq_dists
from .eigen import jacobi_eigh, power_iteration, smallest_generalized_eigvecs
from .infotheory import Discretizer, default_bins, discretize, entropy, mutual_information
from .lasso import lasso_cd, lasso_max_penalty
from .linprog import LPProblem, LPSolution, solve_lp
from .stats import spearman
from .svm import SvmModel, hinge_loss, signed_labels, svm_primal_objective, train_linear_svm

__all__ = [
    "Discretizer",
    "LPProblem",
    "LPSolution",
    "SvmModel",
    "default_bins",
    "discretize",
    "entropy",
    "hinge_loss",
    "jacobi_eigh",
    "lasso_cd",
    "lasso_max_penalty",
    "mutual_information",
    "cross_sq_dists",
    "pairwise_sq_dists",
    "power_iteration",
    "signed_labels",
    "smallest_generalized_eigvecs",
    "solve_lp",
    "spearman",
    "svm_primal_objective",
    "train_linear_svm",
]
