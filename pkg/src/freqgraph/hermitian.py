"""Dense complex Hermitian matrix primitives.

Everything here is a pure function of its inputs: eigendecomposition with
a canonical ordering/phase, positive-definite log-determinant via a
Cholesky factorization, and symmetrization for roundoff control.
Matrices are plain ``numpy`` arrays; Hermitian symmetry is a contract
checked (and restored) at the boundaries rather than a wrapper type.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import EigenDecompositionError, NotPositiveDefiniteError

# Hermitian defect allowed on freshly constructed/symmetrized matrices.
HERMITIAN_TOL = 1e-12

# Looser gate used when validating operation inputs that have been
# through arithmetic since their last symmetrization.
HERMITIAN_CHECK_TOL = 1e-8


class EigenPair(NamedTuple):
    """Eigendecomposition ``H = V diag(values) V^H`` of a Hermitian matrix.

    ``values`` is real and sorted non-increasing; ``vectors`` holds the
    eigenvectors as columns of a unitary matrix, each column phased so
    that its largest-magnitude component is real positive.
    """

    values: np.ndarray
    vectors: np.ndarray


def hermitian_defect(a: np.ndarray) -> float:
    """Largest entrywise deviation of ``a`` from its conjugate transpose."""
    a = np.asarray(a)
    return float(np.max(np.abs(a - np.conj(np.swapaxes(a, -1, -2)))))


def is_hermitian(a: np.ndarray, tol: float = HERMITIAN_CHECK_TOL) -> bool:
    return hermitian_defect(a) <= tol


def symmetrize(a: np.ndarray) -> np.ndarray:
    """Return ``(a + a^H)/2`` with an exactly real diagonal.

    Accepts a single ``(p, p)`` matrix or a stack ``(..., p, p)``; the
    Hermitian average is applied to every matrix in the stack.
    """
    a = np.asarray(a)
    s = 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))
    if np.iscomplexobj(s):
        d = np.arange(s.shape[-1])
        s[..., d, d] = s[..., d, d].real
    return s


def eigh(h: np.ndarray) -> EigenPair:
    """Eigendecomposition of a Hermitian matrix with canonical output.

    Eigenvalues are returned in non-increasing order.  Each eigenvector is
    rescaled by a unit phase so that its largest-magnitude component is
    real positive, which makes the output reproducible across runs.

    Raises
    ------
    ValueError
        If ``h`` is not Hermitian within ``HERMITIAN_CHECK_TOL``.
    EigenDecompositionError
        If the underlying iterative diagonalization fails to converge; the
        off-diagonal residual norm is attached.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    defect = hermitian_defect(h)
    if defect > HERMITIAN_CHECK_TOL:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")
    try:
        values, vectors = np.linalg.eigh(symmetrize(h))
    except np.linalg.LinAlgError as exc:
        off = h - np.diag(np.diag(h))
        raise EigenDecompositionError(float(np.linalg.norm(off))) from exc

    # np.linalg.eigh sorts ascending; flip to non-increasing.
    values = np.ascontiguousarray(values[::-1])
    vectors = np.ascontiguousarray(vectors[:, ::-1])

    p = h.shape[0]
    lead = vectors[np.argmax(np.abs(vectors), axis=0), np.arange(p)]
    mag = np.abs(lead)
    # Unitary columns cannot vanish, but guard the division anyway.
    phase = np.where(mag > 0, lead / np.where(mag > 0, mag, 1.0), 1.0)
    vectors = vectors * np.conj(phase)[np.newaxis, :]
    if np.iscomplexobj(vectors):
        # Strip the residual imaginary part of the phased leading entries.
        vectors[np.argmax(np.abs(vectors), axis=0), np.arange(p)] = np.abs(lead)
    return EigenPair(values.real if np.iscomplexobj(values) else values, vectors)


def logdet_hpd(h: np.ndarray) -> float:
    """``ln det(H)`` of a Hermitian positive definite matrix.

    Computed through a Cholesky factorization; a non-positive pivot raises
    :class:`NotPositiveDefiniteError` carrying the failing index.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    p = h.shape[0]
    lower = np.zeros_like(h, dtype=complex if np.iscomplexobj(h) else float)
    acc = 0.0
    for j in range(p):
        pivot = float(h[j, j].real - np.sum(np.abs(lower[j, :j]) ** 2))
        if not np.isfinite(pivot) or pivot <= 0.0:
            raise NotPositiveDefiniteError(j, pivot)
        ljj = np.sqrt(pivot)
        lower[j, j] = ljj
        if j + 1 < p:
            lower[j + 1 :, j] = (h[j + 1 :, j] - lower[j + 1 :, :j] @ np.conj(lower[j, :j])) / ljj
        acc += np.log(ljj)
    return 2.0 * acc
