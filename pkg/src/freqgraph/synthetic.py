"""Clustered VAR(3) benchmark generator with exact spectral ground truth.

Communities are disjoint blocks of nodes driven by independent sparse
VAR(3) processes with unit-variance Gaussian innovations, so the true
conditional independence graph has no cross-community edges.  The exact
PSD follows from the transfer function of each block, and ground-truth
edges come from scanning the inverse PSD over a fixed frequency grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericFailureError, UnstableModelError
from .hermitian import symmetrize

BURN_IN = 100
STABILITY_BOUND = 0.95
SUPPORT_FRACTION = 0.10
COEFF_RANGE = 0.8
MAX_REDRAWS = 500
EDGE_TOL = 1e-6
GENERATOR_NAME = "numpy.random.Generator(PCG64)"


@dataclass(frozen=True)
class VarModel:
    """Block-diagonal VAR(3) model: ``coefficients[q, i]`` is lag ``i+1`` of block ``q``."""

    community_size: int
    coefficients: np.ndarray
    seed: int
    generator: str = GENERATOR_NAME

    @property
    def num_communities(self) -> int:
        return self.coefficients.shape[0]

    @property
    def order(self) -> int:
        return self.coefficients.shape[1]

    @property
    def dim(self) -> int:
        return self.num_communities * self.community_size

    @property
    def communities(self) -> list:
        s = self.community_size
        return [list(range(q * s, (q + 1) * s)) for q in range(self.num_communities)]


@dataclass(frozen=True)
class GroundTruth:
    """True edge set plus the PSD and inverse PSD sampled on the scan grid."""

    edges: frozenset
    freqs: np.ndarray
    psd: np.ndarray
    inverse_psd: np.ndarray


def companion_matrix(coeffs: np.ndarray) -> np.ndarray:
    """Companion form of one block's lag matrices ``(order, s, s)``."""
    order, s = coeffs.shape[0], coeffs.shape[-1]
    comp = np.zeros((order * s, order * s))
    comp[:s] = np.concatenate(list(coeffs), axis=1)
    comp[s:, :-s] = np.eye((order - 1) * s)
    return comp


def spectral_radius(a: np.ndarray) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(a))))


def generate_model(seed: int, num_communities: int, community_size: int) -> VarModel:
    """Draw a stable clustered VAR(3) model, deterministically from ``seed``.

    Each lag matrix gets 10% of its entries (rounded to nearest) set to
    independent uniform values on [-0.8, 0.8]; a community is redrawn
    until its companion spectral radius is at most 0.95.
    """
    if num_communities < 1 or community_size < 1:
        raise ValueError("community count and size must be positive")
    rng = np.random.default_rng(seed)
    s = community_size
    nnz = int(round(SUPPORT_FRACTION * s * s))
    coeffs = np.zeros((num_communities, 3, s, s))
    for q in range(num_communities):
        for attempt in range(MAX_REDRAWS + 1):
            block = np.zeros((3, s, s))
            for i in range(3):
                support = rng.choice(s * s, size=nnz, replace=False)
                values = rng.uniform(-COEFF_RANGE, COEFF_RANGE, size=nnz)
                flat = np.zeros(s * s)
                flat[support] = values
                block[i] = flat.reshape(s, s)
            if spectral_radius(companion_matrix(block)) <= STABILITY_BOUND:
                coeffs[q] = block
                break
        else:
            raise UnstableModelError(
                f"community {q}: no stable draw in {MAX_REDRAWS} attempts"
            )
    return VarModel(community_size=s, coefficients=coeffs, seed=int(seed))


def simulate(model: VarModel, n: int, seed: int) -> np.ndarray:
    """Simulate ``n`` post-burn-in samples of the full series.

    Each community runs independently from a zero initial state with
    standard Gaussian innovations; the first ``BURN_IN`` samples are
    discarded to remove the transient.
    """
    if n < 1:
        raise ValueError(f"need a positive sample count, got {n}")
    rng = np.random.default_rng(seed)
    s = model.community_size
    order = model.order
    total = BURN_IN + n
    out = np.empty((n, model.dim))
    for q in range(model.num_communities):
        coeffs = model.coefficients[q]
        noise = rng.standard_normal((total, s))
        x = np.zeros((total + order, s))
        for t in range(total):
            acc = noise[t]
            for i in range(order):
                acc = acc + coeffs[i] @ x[t + order - 1 - i]
            x[t + order] = acc
        out[:, q * s : (q + 1) * s] = x[order + BURN_IN :]
    return out


def _block_transfer(coeffs: np.ndarray, f: float) -> np.ndarray:
    s = coeffs.shape[-1]
    a = np.eye(s, dtype=complex)
    for i in range(coeffs.shape[0]):
        a = a - coeffs[i] * np.exp(-2j * np.pi * f * (i + 1))
    return a


def true_psd(model: VarModel, f: float) -> np.ndarray:
    """Exact PSD ``S(f) = A(f)^{-1} A(f)^{-H}`` assembled block-diagonally."""
    p = model.dim
    s = model.community_size
    out = np.zeros((p, p), dtype=complex)
    for q in range(model.num_communities):
        a = _block_transfer(model.coefficients[q], f)
        try:
            inv_a = np.linalg.inv(a)
        except np.linalg.LinAlgError as exc:
            raise NumericFailureError(f"singular transfer function at f={f}") from exc
        out[q * s : (q + 1) * s, q * s : (q + 1) * s] = inv_a @ np.conj(inv_a.T)
    return symmetrize(out)


def true_inverse_psd(model: VarModel, f: float) -> np.ndarray:
    """Exact inverse PSD ``A(f)^H A(f)`` assembled block-diagonally."""
    p = model.dim
    s = model.community_size
    out = np.zeros((p, p), dtype=complex)
    for q in range(model.num_communities):
        a = _block_transfer(model.coefficients[q], f)
        out[q * s : (q + 1) * s, q * s : (q + 1) * s] = np.conj(a.T) @ a
    return symmetrize(out)


def true_edges(model: VarModel, freq_step: float = 0.01, tol: float = EDGE_TOL) -> GroundTruth:
    """Ground-truth edges: pairs whose inverse PSD magnitude sums above ``tol``.

    The scan covers ``f = 0, freq_step, ..., 0.5``.  Cross-community pairs
    are exactly zero by construction and never enter the edge set.
    """
    freqs = np.arange(0.0, 0.5 + freq_step / 2, freq_step)
    p = model.dim
    psd = np.empty((freqs.size, p, p), dtype=complex)
    inv = np.empty((freqs.size, p, p), dtype=complex)
    for idx, f in enumerate(freqs):
        psd[idx] = true_psd(model, float(f))
        inv[idx] = true_inverse_psd(model, float(f))
    score = np.sum(np.abs(inv), axis=0)
    iu, ju = np.triu_indices(p, 1)
    present = score[iu, ju] > tol
    edges = frozenset((int(i), int(j)) for i, j in zip(iu[present], ju[present]))
    return GroundTruth(edges=edges, freqs=freqs, psd=psd, inverse_psd=inv)


def f1_score(estimated, truth) -> float:
    """Harmonic mean of edge precision and recall; 1.0 when both sets are empty."""
    est = {tuple(sorted(e)) for e in estimated}
    ref = {tuple(sorted(e)) for e in truth}
    if not est and not ref:
        return 1.0
    if not est or not ref:
        return 0.0
    overlap = len(est & ref)
    if overlap == 0:
        return 0.0
    precision = overlap / len(est)
    recall = overlap / len(ref)
    return 2.0 * precision * recall / (precision + recall)
