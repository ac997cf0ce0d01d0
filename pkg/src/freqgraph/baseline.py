"""Lasso-penalized precision estimation on the sample covariance.

The i.i.d. comparison baseline: ignore serial dependence, estimate one
real precision matrix from the mean-centered sample covariance with an
elementwise l1 penalty.  It runs through the same ADMM machinery as the
spectral estimator, specialized to a single frequency and a pure lasso
mix, so it also exercises the solver's degenerate real-valued path.
"""

from __future__ import annotations

import numpy as np

from .admm import SolverConfig, SolverReport, solve
from .selection import (
    DEFAULT_NUM_LAMBDA,
    GraphEstimate,
    TuningSelection,
    bic,
    lambda_grid_from_ceiling,
    no_edge_lambda,
    select_edges,
)


def sample_covariance(x) -> np.ndarray:
    """Mean-centered second moment ``(1/n) sum_t x(t) x(t)^T``."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[0] < 2:
        raise ValueError(f"need an (n, p) array with n >= 2, got shape {x.shape}")
    centered = x - x.mean(axis=0, keepdims=True)
    return centered.T @ centered / x.shape[0]


def glasso(
    c: np.ndarray, lam: float, base: SolverConfig | None = None
) -> tuple[np.ndarray, GraphEstimate, SolverReport]:
    """Graphical lasso via the shared solver at ``M=1``, ``alpha=1``.

    Returns the estimated precision matrix, the edges read off the split
    variable's exact zeros, and the solver report.
    """
    c = np.asarray(c, dtype=float)
    cfg = (base or SolverConfig(lam=lam)).replace(lam=lam, alpha=1.0)
    state, report = solve(c[np.newaxis], cfg)
    omega = 0.5 * (state.phi[0] + state.phi[0].T)
    return omega, select_edges(state.w), report


def tune_glasso(
    c: np.ndarray,
    n_samples: int,
    base: SolverConfig | None = None,
    num_lambda: int = DEFAULT_NUM_LAMBDA,
) -> TuningSelection:
    """BIC-tuned penalty for the baseline.

    Uses the same bracketing heuristic as the spectral tuner, with the
    information criterion evaluated at one frequency and ``width = n``
    (every time sample is one real measurement of the covariance).
    """
    c = np.asarray(c, dtype=float)
    cfg = (base or SolverConfig(lam=0.0)).replace(alpha=1.0)
    lambda_sm = no_edge_lambda(c[np.newaxis], cfg, alpha0=1.0)
    lam_grid = lambda_grid_from_ceiling(lambda_sm, num_lambda)

    table = []
    best_lam, best_value = None, np.inf
    for lam in sorted(lam_grid, reverse=True):
        state, report = solve(c[np.newaxis], cfg.replace(lam=float(lam)))
        value = bic(state.phi, state.w, c[np.newaxis], width=n_samples, num_freqs=1)
        table.append(
            {
                "stage": "lambda",
                "lambda": float(lam),
                "alpha": 1.0,
                "bic": float(value),
                "num_edges": len(select_edges(state.w).edges),
                "converged": bool(report.converged),
            }
        )
        if value < best_value:
            best_lam, best_value = float(lam), value

    return TuningSelection(
        lambda_grid=np.sort(lam_grid),
        alpha_grid=np.array([1.0]),
        lam=best_lam,
        alpha=1.0,
        bic_table=table,
        lambda_sm=lambda_sm,
    )
