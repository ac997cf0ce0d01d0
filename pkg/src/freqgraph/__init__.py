"""Conditional independence graphs for stationary multivariate time series.

Estimates the inverse power spectral density on a smoothed frequency
grid by minimizing a sparse-group-lasso penalized frequency-domain
log-likelihood with ADMM, selects graph edges from the exact zeros of
the converged split variable, tunes penalties by BIC, and ships a
clustered-VAR benchmark harness plus an i.i.d. graphical-lasso baseline.
"""

from .admm import PrecisionState, SolverConfig, SolverReport, kkt_residuals, solve
from .baseline import glasso, sample_covariance, tune_glasso
from .bench import BenchmarkConfig, benchmark
from .hermitian import EigenPair, eigh, logdet_hpd, symmetrize
from .prox import group_objective, soft_threshold, sparse_group_prox
from .selection import GraphEstimate, TuningSelection, bic, select_edges, tune
from .spectral import (
    DftFrames,
    FrequencyGrid,
    SmoothedPsdSet,
    dft,
    make_grid,
    resolve_width,
    smoothed_psd,
    smoothed_psd_from_series,
)
from .synthetic import (
    GroundTruth,
    VarModel,
    f1_score,
    generate_model,
    simulate,
    true_edges,
    true_inverse_psd,
    true_psd,
)

__version__ = "0.1.0"

__all__ = [
    "BenchmarkConfig",
    "DftFrames",
    "EigenPair",
    "FrequencyGrid",
    "GraphEstimate",
    "GroundTruth",
    "PrecisionState",
    "SmoothedPsdSet",
    "SolverConfig",
    "SolverReport",
    "TuningSelection",
    "VarModel",
    "benchmark",
    "bic",
    "dft",
    "eigh",
    "f1_score",
    "generate_model",
    "glasso",
    "group_objective",
    "kkt_residuals",
    "logdet_hpd",
    "make_grid",
    "resolve_width",
    "sample_covariance",
    "select_edges",
    "simulate",
    "smoothed_psd",
    "smoothed_psd_from_series",
    "soft_threshold",
    "solve",
    "sparse_group_prox",
    "symmetrize",
    "true_edges",
    "true_inverse_psd",
    "true_psd",
    "tune",
    "tune_glasso",
]
