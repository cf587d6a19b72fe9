"""Dense rank-revealing primitives shared by the reduction algorithms.

All rank decisions in the package funnel through the same tolerance rule:
a positive ``tol`` is used verbatim as an absolute cutoff on singular
values, while ``tol = 0`` requests the default ``max(q, r) * eps * s₁``
for a ``q x r`` matrix with largest singular value ``s₁`` (zero when the
matrix itself is zero).  Keeping the rule in one place makes the rank
behaviour of the staircase reductions reproducible and easy to reason
about.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import ReductionError, ShapeError

__all__ = [
    "EPS",
    "col_compress",
    "generalized_eigenvalues",
    "rank_svd",
    "rank_threshold",
    "row_compress",
]

EPS = float(np.finfo(float).eps)


def _svd(mat, full_matrices):
    # gesdd occasionally fails to converge on structured input; fall back
    # to the slower but sturdier gesvd driver.
    try:
        return np.linalg.svd(mat, full_matrices=full_matrices)
    except np.linalg.LinAlgError:
        return scipy.linalg.svd(mat, full_matrices=full_matrices, lapack_driver="gesvd")


def rank_threshold(sigma, shape, tol: float = 0.0) -> float:
    """Effective cutoff below which singular values count as zero.

    Parameters
    ----------
    sigma : ndarray
        Singular values in decreasing order (may be empty).
    shape : tuple of int
        Shape of the matrix the values came from.
    tol : float, optional
        Absolute cutoff; ``0`` selects the default rule described in the
        module docstring.
    """
    if tol > 0.0:
        return float(tol)
    if len(sigma) == 0:
        return 0.0
    return max(shape) * EPS * float(sigma[0])


def rank_svd(mat, tol: float = 0.0) -> int:
    """Numerical rank: singular values strictly above the effective cutoff.

    Empty matrices (either dimension zero) have rank 0, as do matrices
    whose singular values all sit at or below the cutoff.
    """
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    sigma = _svd(mat, full_matrices=False)[1]
    return int(np.count_nonzero(sigma > rank_threshold(sigma, mat.shape, tol)))


def row_compress(mat, tol: float = 0.0):
    """Orthogonally compress the rows of ``mat`` to the top.

    Returns ``(Q, R, rank)`` with ``Q`` square orthogonal such that
    ``Q.T @ mat`` equals ``[R; 0]`` up to discarded singular values below
    the cutoff; ``R`` has ``rank`` rows and full row rank.
    """
    mat = np.asarray(mat, dtype=float)
    q, r = mat.shape
    if q == 0 or r == 0:
        return np.eye(q), np.zeros((0, r)), 0
    U, sigma, Vt = _svd(mat, full_matrices=True)
    k = int(np.count_nonzero(sigma > rank_threshold(sigma, mat.shape, tol)))
    compressed = sigma[:k, None] * Vt[:k, :]
    return U, compressed, k


def col_compress(mat, tol: float = 0.0):
    """Orthogonally compress the columns of ``mat`` to the right.

    Returns ``(Z, R, rank)`` with ``Z`` square orthogonal such that
    ``mat @ Z`` equals ``[0, R]`` up to discarded singular values below
    the cutoff; ``R`` has ``rank`` columns and full column rank.
    """
    mat = np.asarray(mat, dtype=float)
    q, r = mat.shape
    if q == 0 or r == 0:
        return np.eye(r), np.zeros((q, 0)), 0
    U, sigma, Vt = _svd(mat, full_matrices=True)
    k = int(np.count_nonzero(sigma > rank_threshold(sigma, mat.shape, tol)))
    Z = Vt.T[:, ::-1]
    compressed = (U[:, :k] * sigma[:k])[:, ::-1]
    return Z, compressed, k


def generalized_eigenvalues(A, E):
    """Eigenvalues of the regular pencil ``A - lam*E``.

    Parameters
    ----------
    A, E : array_like
        Square matrices of equal order ``n``.

    Returns
    -------
    finite : ndarray of complex
        The finite eigenvalues (multiset, order unspecified).
    infinite : int
        How many eigenvalues lie at infinity; rank deficiency of ``E``
        shows up here rather than as IEEE infinities.

    Raises
    ------
    ReductionError
        If the pencil is singular, signalled by indeterminate ``0/0``
        eigenvalue ratios in the underlying QZ decomposition.
    """
    A = np.asarray(A, dtype=float)
    E = np.asarray(E, dtype=float)
    n = A.shape[0]
    if A.ndim != 2 or A.shape != (n, n) or E.shape != (n, n):
        raise ShapeError(f"expected square matrices of equal order, got {A.shape} and {E.shape}")
    if n == 0:
        return np.zeros(0, dtype=complex), 0
    w = scipy.linalg.eig(A, E, right=False, homogeneous_eigvals=True)
    alpha, beta = w[0], w[1]
    cut = 100.0 * n * EPS
    tiny_a = cut * np.linalg.norm(A, "fro")
    tiny_e = cut * np.linalg.norm(E, "fro")
    a_small = np.abs(alpha) <= tiny_a
    b_small = np.abs(beta) <= tiny_e
    if np.any(a_small & b_small):
        raise ReductionError("singular pencil: indeterminate generalized eigenvalue")
    infinite = int(np.count_nonzero(b_small))
    finite = alpha[~b_small] / beta[~b_small]
    return finite, infinite
