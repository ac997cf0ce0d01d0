"""ADMM solver for the sparse-group-lasso penalized spectral log-likelihood.

The problem is

    min  sum_k [ -ln|Phi_k| + tr(S_k Phi_k) ]
         + alpha*lam * sum_k sum_{i!=j} |[Phi_k]_ij|
         + (1-alpha)*lam * sum_{i!=j} sqrt(sum_k |[Phi_k]_ij|^2)

over Hermitian positive definite ``Phi_1..Phi_M``, split as ``Phi_k = W_k``.
The likelihood block has a closed-form update through one Hermitian
eigendecomposition per frequency, the penalty block is the exact
sparse-group prox applied to every cross-frequency off-diagonal group,
and the scaled dual ascends on the splitting constraint.  Stopping uses
primal/dual residuals with combined absolute/relative tolerances, and the
penalty parameter adapts to keep the two residuals within a factor of
``mu`` of each other (the converged solution does not depend on it).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import EigenDecompositionError, InvalidConfigurationError
from .hermitian import logdet_hpd, symmetrize
from .prox import soft_threshold


@dataclass
class SolverConfig:
    """Penalty levels and ADMM controls.

    ``lam`` is the overall penalty weight, ``alpha`` the lasso/group-lasso
    mix (1 = pure elementwise lasso, 0 = pure group lasso).
    """

    lam: float
    alpha: float = 0.1
    rho0: float = 2.0
    mu: float = 10.0
    tau_abs: float = 1e-4
    tau_rel: float = 1e-4
    max_iter: int = 1000

    def __post_init__(self):
        if self.lam < 0:
            raise InvalidConfigurationError(f"penalty must be nonnegative, got {self.lam}")
        if not 0.0 <= self.alpha <= 1.0:
            raise InvalidConfigurationError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.rho0 <= 0:
            raise InvalidConfigurationError(f"rho0 must be positive, got {self.rho0}")
        if self.mu <= 1:
            raise InvalidConfigurationError(f"mu must exceed 1, got {self.mu}")
        if self.tau_abs <= 0 or self.tau_rel <= 0:
            raise InvalidConfigurationError("tolerances must be positive")
        if self.max_iter < 1:
            raise InvalidConfigurationError(f"max_iter must be positive, got {self.max_iter}")

    def replace(self, **kwargs) -> "SolverConfig":
        params = asdict(self)
        params.update(kwargs)
        return SolverConfig(**params)


@dataclass
class PrecisionState:
    """ADMM iterate: per-frequency ``(phi, w, u)`` stacks and the live penalty."""

    phi: np.ndarray
    w: np.ndarray
    u: np.ndarray
    rho: float
    iterations: int = 0

    @property
    def num_freqs(self) -> int:
        return self.phi.shape[0]

    @property
    def dim(self) -> int:
        return self.phi.shape[-1]


@dataclass(frozen=True)
class SolverReport:
    converged: bool
    iterations: int
    primal_residual: float
    dual_residual: float
    tau_primal: float
    tau_dual: float
    objective: float

    def as_dict(self) -> dict:
        return asdict(self)


def _psd_stack(s) -> np.ndarray:
    """Accept a SmoothedPsdSet or a raw (M, p, p) stack."""
    stack = np.asarray(getattr(s, "psd", s))
    if stack.ndim == 2:
        stack = stack[np.newaxis]
    if stack.ndim != 3 or stack.shape[-1] != stack.shape[-2]:
        raise InvalidConfigurationError(f"expected (M, p, p) matrices, got shape {stack.shape}")
    return stack


def update_phi(s, w, u, rho: float) -> np.ndarray:
    """Closed-form likelihood update at penalty ``rho``.

    With ``V D V^H`` the eigendecomposition of ``s - rho*(w - u)``, returns
    ``V Dt V^H`` where ``Dt_ll = (-D_ll + sqrt(D_ll^2 + 4 rho))/(2 rho)``,
    the unique Hermitian positive definite solution of
    ``s - Phi^{-1} + rho*(Phi - (w - u)) = 0``.  Accepts a single matrix
    or a stack of matrices (one eigenproblem per frequency).
    """
    if rho <= 0:
        raise InvalidConfigurationError(f"rho must be positive, got {rho}")
    b = symmetrize(np.asarray(s) - rho * (np.asarray(w) - np.asarray(u)))
    try:
        d, v = np.linalg.eigh(b)
    except np.linalg.LinAlgError as exc:
        raise EigenDecompositionError(float(np.linalg.norm(b))) from exc
    dt = (np.sqrt(d * d + 4.0 * rho) - d) / (2.0 * rho)
    phi = (v * dt[..., np.newaxis, :]) @ np.conj(np.swapaxes(v, -1, -2))
    return symmetrize(phi)


def update_w(phi: np.ndarray, u: np.ndarray, lam: float, alpha: float, rho: float) -> np.ndarray:
    """Penalty update: sparse-group prox of ``phi + u`` groupwise.

    Diagonals pass through untouched; each cross-frequency off-diagonal
    group is thresholded at ``alpha*lam/rho`` elementwise and shrunk at
    ``(1-alpha)*lam/rho`` as a group.  The conjugate (j, i) entries mirror
    the (i, j) entries exactly, so Hermitian symmetry is preserved
    bit-for-bit.
    """
    a = np.asarray(phi) + np.asarray(u)
    if a.ndim == 2:
        a = a[np.newaxis]
    p = a.shape[-1]
    lam1 = alpha * lam / rho
    lam2 = (1.0 - alpha) * lam / rho

    s = np.asarray(soft_threshold(a, lam1))
    gnorm = np.sqrt(np.sum(np.abs(s) ** 2, axis=0))
    with np.errstate(divide="ignore", invalid="ignore"):
        shrink = np.where(gnorm > lam2, 1.0 - lam2 / np.where(gnorm > 0, gnorm, 1.0), 0.0)
    w = shrink[np.newaxis, :, :] * s

    d = np.arange(p)
    w[:, d, d] = a[:, d, d].real if np.iscomplexobj(a) else a[:, d, d]
    iu, ju = np.triu_indices(p, 1)
    w[:, ju, iu] = np.conj(w[:, iu, ju])
    return w


def update_u(u: np.ndarray, phi: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Scaled dual ascent ``u + (phi - w)``."""
    return np.asarray(u) + (np.asarray(phi) - np.asarray(w))


def residuals(state: PrecisionState, w_prev: np.ndarray) -> tuple[float, float]:
    """Stacked primal residual ``||phi - w||_F`` and dual ``rho*||w - w_prev||_F``."""
    d_p = float(np.linalg.norm(state.phi - state.w))
    d_d = float(state.rho * np.linalg.norm(state.w - np.asarray(w_prev)))
    return d_p, d_d


def tolerances(state: PrecisionState, tau_abs: float, tau_rel: float) -> tuple[float, float]:
    """Combined absolute/relative stopping thresholds for the residuals."""
    base = state.dim * np.sqrt(state.num_freqs) * tau_abs
    e1 = np.linalg.norm(state.phi)
    e2 = np.linalg.norm(state.w)
    e3 = np.linalg.norm(state.u)
    return float(base + tau_rel * max(e1, e2)), float(base + tau_rel * e3 / state.rho)


def adapt_rho(rho: float, d_p: float, d_d: float, mu: float) -> float:
    """Double/halve ``rho`` when the residuals drift more than ``mu`` apart."""
    if d_p > mu * d_d:
        return 2.0 * rho
    if d_d > mu * d_p:
        return rho / 2.0
    return rho


def objective(matrices, s, lam: float, alpha: float) -> float:
    """Penalized negative log-likelihood at the given precision stack.

    The likelihood part is ``sum_k [-ln|Phi_k| + tr(S_k Phi_k)]``; the
    penalty sums over ordered off-diagonal pairs, elementwise and as
    cross-frequency groups.  Requires positive definite matrices.
    """
    mats = _psd_stack(matrices)
    psd = _psd_stack(s)
    total = 0.0
    for k in range(mats.shape[0]):
        total += -logdet_hpd(mats[k]) + float(np.einsum("ij,ji->", psd[k], mats[k]).real)
    if lam > 0:
        p = mats.shape[-1]
        off = ~np.eye(p, dtype=bool)
        l1 = float(np.sum(np.abs(mats)[:, off]))
        group = float(np.sum(np.sqrt(np.sum(np.abs(mats) ** 2, axis=0))[off]))
        total += alpha * lam * l1 + (1.0 - alpha) * lam * group
    return total


def solve(s, cfg: SolverConfig) -> tuple[PrecisionState, SolverReport]:
    """Run ADMM to convergence (or ``cfg.max_iter``) on a smoothed PSD set.

    Starts from ``phi = I``, ``w = u = 0``.  Non-convergence is reported,
    not raised, so tuning sweeps can proceed; numeric failures propagate.
    When the penalty parameter changes, the scaled duals are rescaled to
    keep the unscaled dual ``rho*u`` continuous.
    """
    psd = _psd_stack(s)
    m, p = psd.shape[0], psd.shape[-1]
    dtype = complex if np.iscomplexobj(psd) else float

    phi = np.broadcast_to(np.eye(p, dtype=dtype), (m, p, p)).copy()
    w = np.zeros((m, p, p), dtype=dtype)
    u = np.zeros((m, p, p), dtype=dtype)
    rho = cfg.rho0

    converged = False
    d_p = d_d = t_pri = t_dual = np.inf
    it = 0
    for it in range(1, cfg.max_iter + 1):
        phi = update_phi(psd, w, u, rho)
        w_prev = w
        w = update_w(phi, u, cfg.lam, cfg.alpha, rho)
        u = update_u(u, phi, w)

        state = PrecisionState(phi=phi, w=w, u=u, rho=rho, iterations=it)
        d_p, d_d = residuals(state, w_prev)
        t_pri, t_dual = tolerances(state, cfg.tau_abs, cfg.tau_rel)
        if d_p <= t_pri and d_d <= t_dual:
            converged = True
            break

        rho_new = adapt_rho(rho, d_p, d_d, cfg.mu)
        if rho_new != rho:
            u = u * (rho / rho_new)
            rho = rho_new

    state = PrecisionState(phi=phi, w=w, u=u, rho=rho, iterations=it)
    report = SolverReport(
        converged=converged,
        iterations=it,
        primal_residual=d_p,
        dual_residual=d_d,
        tau_primal=t_pri,
        tau_dual=t_dual,
        objective=objective(phi, psd, cfg.lam, cfg.alpha),
    )
    return state, report


def kkt_residuals(state: PrecisionState, s, lam: float, alpha: float) -> dict:
    """Optimality diagnostics at an iterate, all stacked Frobenius norms.

    ``stationarity`` plugs the iterate back into the likelihood-update
    optimality equation at ``a = w - u``;  ``prox_gap`` re-applies the
    penalty update at the iterate; ``primal`` is the splitting constraint
    violation.  All three vanish at an exact solution.
    """
    psd = _psd_stack(s)
    inv_phi = np.linalg.inv(state.phi)
    stationarity = psd - inv_phi + state.rho * (state.phi - (state.w - state.u))
    w_again = update_w(state.phi, state.u, lam, alpha, state.rho)
    return {
        "stationarity": float(np.linalg.norm(symmetrize(stationarity))),
        "prox_gap": float(np.linalg.norm(state.w - w_again)),
        "primal": float(np.linalg.norm(state.phi - state.w)),
    }
