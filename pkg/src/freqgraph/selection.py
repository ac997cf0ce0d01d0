"""Edge selection, BIC scoring, and the penalty-level search heuristic.

An edge {i, j} is declared present exactly when its cross-frequency
group in the split variable has positive norm (the prox produces exact
zeros, so the test is a strict ``> 0``).  The information criterion
charges ``2*width`` real measurements per frequency against the
penalized likelihood and ``ln(2*width*num_freqs)`` per retained nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .admm import SolverConfig, solve
from .errors import DegenerateInputError
from .hermitian import logdet_hpd

DEFAULT_ALPHA0 = 0.1
DEFAULT_ALPHA_GRID = (0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3)
DEFAULT_NUM_LAMBDA = 10
BRACKET_CAP = 60
BRACKET_REL_PRECISION = 0.02


@dataclass(frozen=True)
class GraphEstimate:
    """Recovered edge set with cross-frequency group norms as weights."""

    dim: int
    edges: tuple
    weights: np.ndarray
    weighted_adjacency: np.ndarray

    @property
    def edge_set(self) -> set:
        return set(self.edges)

    def as_dict(self) -> dict:
        return {
            "p": self.dim,
            "num_edges": len(self.edges),
            "edges": [
                {"i": int(i), "j": int(j), "weight": float(w)}
                for (i, j), w in zip(self.edges, self.weights)
            ],
        }


@dataclass
class TuningSelection:
    """Outcome of the sequential penalty search."""

    lambda_grid: np.ndarray
    alpha_grid: np.ndarray
    lam: float
    alpha: float
    bic_table: list
    lambda_sm: float


def select_edges(w) -> GraphEstimate:
    """Edges where the cross-frequency group norm of ``w`` is nonzero."""
    stack = np.asarray(w)
    if stack.ndim == 2:
        stack = stack[np.newaxis]
    p = stack.shape[-1]
    gnorm = np.sqrt(np.sum(np.abs(stack) ** 2, axis=0))
    adjacency = np.array(gnorm, dtype=float)
    np.fill_diagonal(adjacency, 0.0)
    adjacency = 0.5 * (adjacency + adjacency.T)
    iu, ju = np.triu_indices(p, 1)
    present = adjacency[iu, ju] > 0.0
    edges = tuple((int(i), int(j)) for i, j in zip(iu[present], ju[present]))
    weights = adjacency[iu, ju][present]
    return GraphEstimate(dim=p, edges=edges, weights=weights, weighted_adjacency=adjacency)


def bic(phi, w, s, width: int, num_freqs: int) -> float:
    """Bayesian information criterion for a converged estimate.

    Likelihood is evaluated on the positive definite ``phi`` stack while
    the nonzero count (diagonal included) comes from the split variable
    ``w``, which carries exact zeros.
    """
    phi = np.asarray(phi)
    w = np.asarray(w)
    psd = np.asarray(getattr(s, "psd", s))
    if phi.ndim == 2:
        phi, w, psd = phi[np.newaxis], w[np.newaxis], psd[np.newaxis]
    fit = 0.0
    for k in range(phi.shape[0]):
        fit += -logdet_hpd(phi[k]) + float(np.einsum("ij,ji->", psd[k], phi[k]).real)
    nonzero = int(np.count_nonzero(w))
    return 2.0 * width * fit + np.log(2.0 * width * num_freqs) * nonzero


def _count_edges(s, cfg: SolverConfig) -> int:
    state, _ = solve(s, cfg)
    return len(select_edges(state.w).edges)


def no_edge_lambda(s, base: SolverConfig, alpha0: float = DEFAULT_ALPHA0) -> float:
    """Smallest penalty producing an empty edge set, to 2% relative precision.

    Geometric bracketing from a scale-aware seed (the largest off-diagonal
    PSD magnitude): double until the model is empty, then bisect.  When
    the seed already yields an empty model the search shrinks instead and
    the smallest probed penalty is returned as the bracket floor.
    """
    psd = np.asarray(getattr(s, "psd", s))
    if not np.any(np.abs(psd) > 0):
        raise DegenerateInputError("spectral statistic is identically zero")
    p = psd.shape[-1]
    off = ~np.eye(p, dtype=bool)
    seed = float(np.max(np.abs(psd)[:, off]))
    if seed <= 0.0:
        # Exactly diagonal statistic: any positive penalty gives an empty
        # model; probe from a tiny scale so the floor is still meaningful.
        seed = max(float(np.max(np.abs(psd))), 1.0) * 1e-8

    def empty(lam: float) -> bool:
        return _count_edges(s, base.replace(lam=lam, alpha=alpha0)) == 0

    if empty(seed):
        hi = seed
        lo = None
        probe = seed
        for _ in range(BRACKET_CAP):
            probe /= 2.0
            if not empty(probe):
                lo = probe
                break
            hi = probe
        if lo is None:
            return hi
    else:
        lo = seed
        hi = None
        probe = seed
        for _ in range(BRACKET_CAP):
            probe *= 2.0
            if empty(probe):
                hi = probe
                break
            lo = probe
        if hi is None:
            raise DegenerateInputError(
                f"no empty-graph penalty found within {BRACKET_CAP} doublings of {seed:g}"
            )

    while (hi - lo) / hi > BRACKET_REL_PRECISION:
        mid = np.sqrt(lo * hi)
        if empty(mid):
            hi = mid
        else:
            lo = mid
    return hi


def lambda_grid_from_ceiling(lambda_sm: float, num: int = DEFAULT_NUM_LAMBDA) -> np.ndarray:
    """Log-spaced penalty grid on ``[lambda_sm/20, lambda_sm/2]``."""
    upper = lambda_sm / 2.0
    lower = upper / 10.0
    return np.geomspace(lower, upper, num)


def tune(
    s,
    base: SolverConfig | None = None,
    alpha0: float = DEFAULT_ALPHA0,
    num_lambda: int = DEFAULT_NUM_LAMBDA,
    alpha_grid=DEFAULT_ALPHA_GRID,
) -> TuningSelection:
    """Sequential BIC search: penalty level first, then the lasso mix.

    The penalty grid spans a decade below half the smallest empty-model
    penalty.  Ties break toward the larger penalty, then the smaller mix.
    """
    if base is None:
        base = SolverConfig(lam=0.0)
    if not hasattr(s, "grid"):
        raise TypeError("tune() needs a SmoothedPsdSet (the BIC depends on the window width)")
    psd = np.asarray(s.psd)
    width = s.grid.width
    num_freqs = psd.shape[0]

    lambda_sm = no_edge_lambda(s, base, alpha0)
    lam_grid = lambda_grid_from_ceiling(lambda_sm, num_lambda)

    table = []

    def scored(lam: float, alpha: float, stage: str) -> float:
        state, report = solve(s, base.replace(lam=lam, alpha=alpha))
        value = bic(state.phi, state.w, psd, width, num_freqs)
        table.append(
            {
                "stage": stage,
                "lambda": float(lam),
                "alpha": float(alpha),
                "bic": float(value),
                "num_edges": len(select_edges(state.w).edges),
                "converged": bool(report.converged),
            }
        )
        return value

    best_lam, best_value = None, np.inf
    for lam in sorted(lam_grid, reverse=True):
        value = scored(lam, alpha0, "lambda")
        if value < best_value:
            best_lam, best_value = float(lam), value

    best_alpha, best_value = None, np.inf
    for alpha in alpha_grid:
        value = scored(best_lam, float(alpha), "alpha")
        if value < best_value:
            best_alpha, best_value = float(alpha), value

    return TuningSelection(
        lambda_grid=np.sort(lam_grid),
        alpha_grid=np.asarray(alpha_grid, dtype=float),
        lam=best_lam,
        alpha=best_alpha,
        bic_table=table,
        lambda_sm=lambda_sm,
    )
