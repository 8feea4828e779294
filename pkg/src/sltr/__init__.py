"""Sparse + low-rank tensor regression via parallel proximal splitting."""

from .baselines import BaselineConfig, fit_elastic_net, fit_lasso
from .data import Dataset
from .evaluation import (
    BoundInputs,
    CvReport,
    auc,
    coefficient_error,
    default_grid,
    kfold_cv,
    mse,
    theorem_bound,
    three_mode_bound,
    unfolding_ranks,
)
from .exceptions import DivergenceError, FormatError, NumericalError, SltrError
from .linalg import Backbone, SvdFactors, backbone, spectral_norm, svd, tensor_nuclear_norm
from .prox import ConstraintCenter, project_linf_ball, project_spectral_ball, prox_l1, prox_nuclear
from .simulate import SimSpec, generate
from .solver import FitResult, SolverConfig, fit, objective_and_gaps, predict, solve_subproblem
from .tensor import (
    Tensor,
    fold,
    frobenius_norm,
    inner,
    l1_norm,
    linf_norm,
    tensorize,
    unfold,
    vectorize,
)

__version__ = "0.1.0"

__all__ = [
    "BaselineConfig",
    "Backbone",
    "BoundInputs",
    "ConstraintCenter",
    "CvReport",
    "Dataset",
    "DivergenceError",
    "FitResult",
    "FormatError",
    "NumericalError",
    "SimSpec",
    "SltrError",
    "SolverConfig",
    "SvdFactors",
    "Tensor",
    "auc",
    "backbone",
    "coefficient_error",
    "default_grid",
    "fit",
    "fit_elastic_net",
    "fit_lasso",
    "fold",
    "frobenius_norm",
    "generate",
    "inner",
    "kfold_cv",
    "l1_norm",
    "linf_norm",
    "mse",
    "objective_and_gaps",
    "predict",
    "project_linf_ball",
    "project_spectral_ball",
    "prox_l1",
    "prox_nuclear",
    "solve_subproblem",
    "spectral_norm",
    "svd",
    "tensor_nuclear_norm",
    "tensorize",
    "theorem_bound",
    "three_mode_bound",
    "unfold",
    "unfolding_ranks",
    "vectorize",
]
