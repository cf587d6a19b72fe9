"""Orthogonal structure extraction for realizations and matrix pencils.

Three families of reductions live here, all driven by SVD rank decisions
under the single tolerance rule from :mod:`nullrank.kernels`:

* staircase deflation of uncontrollable / unobservable dynamics,
* elimination of non-dynamic modes (state directions in the kernel of
  ``E`` that carry no dynamics) by residualization,
* block-triangularization of a general rectangular pencil into a full
  row rank part, a regular square core, and a full column rank part,
  from which the normal rank of the pencil can be read off.

Everything uses plain dense orthogonal transformations; the aim is
maximal transparency and reliability at moderate order, not large-scale
performance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import DescriptorSystem, LinearPencil, transpose
from .errors import ReductionError
from .kernels import EPS, col_compress, rank_svd, row_compress

__all__ = [
    "KroneckerStructure",
    "MinimalizationReport",
    "ctrb_staircase",
    "kronecker_like",
    "minimal_realization",
    "obsv_staircase",
    "pencil_normal_rank",
    "remove_nondynamic",
    "system_pencil",
]


@dataclass(frozen=True)
class MinimalizationReport:
    """Order bookkeeping for :func:`minimal_realization`."""

    original_order: int
    removed_uncontrollable: int
    removed_unobservable: int
    removed_nondynamic: int
    final_order: int


@dataclass(frozen=True)
class KroneckerStructure:
    """Result of :func:`kronecker_like`.

    The transformed pencil ``Q.T @ (M - lam*N) @ Z`` is block upper
    triangular with three diagonal blocks:

    * a ``right_rows x right_cols`` pencil of full row rank for every
      ``lam`` (``right_rows <= right_cols``),
    * a regular square core of order ``regular_order``,
    * a ``left_rows x left_cols`` pencil of full column rank for every
      ``lam`` (``left_cols <= left_rows``).
    """

    right_rows: int
    right_cols: int
    regular_order: int
    left_rows: int
    left_cols: int
    Q: np.ndarray
    Z: np.ndarray
    reduced: LinearPencil


def system_pencil(sys: DescriptorSystem) -> LinearPencil:
    """Stack a realization into the ``(n+p) x (n+m)`` system pencil.

    The pencil is ``[[A - lam*E, B], [C, D]]``; away from the poles its
    rank exceeds the normal rank of the rational matrix by exactly the
    order ``n``, which is what the pencil-based rank checks exploit.
    """
    n, m, p = sys.n, sys.m, sys.p
    M = np.block([[sys.A, sys.B], [sys.C, sys.D]])
    N = np.block(
        [[sys.E, np.zeros((n, m))], [np.zeros((p, n)), np.zeros((p, m))]]
    )
    return LinearPencil(M, N)


def _anchored_tol(tol, *mats):
    """Absolute rank threshold shared by every decision of a reduction.

    A staircase repeatedly takes ranks of sub-blocks of orthogonally
    transformed data.  Judging each block against its own largest
    singular value would declare a block of pure rounding noise full
    rank, so when the caller does not fix ``tol`` the decisions are
    anchored to the scale of the original matrices instead.
    """
    if tol > 0.0:
        return tol
    dim = max([1, *(max(mat.shape) for mat in mats if mat.size)])
    scale = max([0.0, *(np.linalg.norm(mat) for mat in mats if mat.size)])
    return dim * dim * EPS * scale


def _ctrb_reduce(sys: DescriptorSystem, tol: float):
    """Deflate uncontrollable dynamics; shared core of the staircase ops.

    Returns the reduced matrices, the number of removed states and the
    accumulated orthogonal transforms ``Q``, ``Z`` (full original size)
    satisfying ``Q.T A Z``, ``Q.T E Z``, ``Q.T B``, ``C Z`` block upper
    triangular with the kept part leading.
    """
    tol = _anchored_tol(tol, sys.A, sys.E, sys.B)
    n0 = sys.n
    A = np.array(sys.A)
    E = np.array(sys.E)
    B = np.array(sys.B)
    C = np.array(sys.C)
    Q = np.eye(n0)
    Z = np.eye(n0)

    # Pass 1: peel off state directions unreachable through [E B]; these
    # carry uncontrollable infinite eigenvalues.  One compression can
    # expose further deficiency, so iterate to a fixed point.
    while True:
        nc = A.shape[0]
        if nc == 0:
            break
        Qk, comp, rho = row_compress(np.hstack([E, B]), tol)
        if rho == nc:
            break
        E = np.vstack([comp[:, :nc], np.zeros((nc - rho, nc))])
        B = np.vstack([comp[:, nc:], np.zeros((nc - rho, B.shape[1]))])
        A = Qk.T @ A
        Q[:, :nc] = Q[:, :nc] @ Qk
        lower = A[rho:, :]
        Zk, _, tau = col_compress(lower, tol)
        if tau < nc - rho:
            raise ReductionError("pole pencil is numerically singular")
        A = A @ Zk
        E = E @ Zk
        C = C @ Zk
        Z[:, :nc] = Z[:, :nc] @ Zk
        A[rho:, :rho] = 0.0
        # The trailing block is constant and invertible: all infinite,
        # none of it fed by the inputs.  Keep the leading part.
        A = A[:rho, :rho]
        E = E[:rho, :rho]
        B = B[:rho, :]
        C = C[:, :rho]

    removed_inf = n0 - A.shape[0]
    n2 = A.shape[0]

    # Pass 2: isolate what is left of the infinite structure in a leading
    # block.  Kernel directions of E are pushed to the front and the
    # corresponding algebraic equations compressed on top, leaving exact
    # zeros below, so the trailing block has a nonsingular E.  Without
    # this the finite stairs would mix near-kernel directions of E into
    # their rank decisions, with unbounded growth factors.
    j = 0
    while j < n2:
        na = n2 - j
        Zk, _, re = col_compress(E[j:, j:], tol)
        w = na - re
        if w == 0:
            break
        E[:, j:] = E[:, j:] @ Zk
        A[:, j:] = A[:, j:] @ Zk
        C[:, j:] = C[:, j:] @ Zk
        Z[:, j:n2] = Z[:, j:n2] @ Zk
        E[j:, j : j + w] = 0.0
        Uk, _, rho = row_compress(A[j:, j : j + w], tol)
        if rho < w:
            raise ReductionError("pole pencil is numerically singular")
        A[j:, :] = Uk.T @ A[j:, :]
        E[j:, j:] = Uk.T @ E[j:, j:]
        B[j:, :] = Uk.T @ B[j:, :]
        Q[:, j:n2] = Q[:, j:n2] @ Uk
        A[j + w :, j : j + w] = 0.0
        j += w
    ninf = j

    # Pass 3: staircase on the finite trailing block.  Its E is kept
    # upper triangular so that the sub-diagonal coupling blocks of A are
    # the constant "inputs" of each successive stair.
    nf = n2 - ninf
    kept_f = nf
    if nf > 0:
        sl = slice(ninf, n2)
        Qe, Re = scipy.linalg.qr(E[sl, sl])
        A[sl, :] = Qe.T @ A[sl, :]
        B[sl, :] = Qe.T @ B[sl, :]
        E[sl, sl] = Re
        Q[:, sl] = Q[:, sl] @ Qe
        k = 0
        prev = 0  # width of the previous stair
        while k < nf:
            rem = nf - k
            o = ninf + k
            stair = B[o:n2, :] if k == 0 else A[o:n2, o - prev : o]
            U, _, nu = row_compress(stair, tol)
            if nu == rem:
                k = nf
                break
            if nu == 0:
                break
            A[o:n2, :] = U.T @ A[o:n2, :]
            E[o:n2, o:n2] = U.T @ E[o:n2, o:n2]
            if k == 0:
                B[o:n2, :] = U.T @ B[o:n2, :]
                B[o + nu : n2, :] = 0.0
            else:
                A[o + nu : n2, o - prev : o] = 0.0
            Q[:, o:n2] = Q[:, o:n2] @ U
            # Left-multiplying spoiled the triangular form of the
            # trailing block of E; restore it from the right.
            Rt, Zt = scipy.linalg.rq(E[o:n2, o:n2])
            E[o:n2, o:n2] = Rt
            E[:o, o:n2] = E[:o, o:n2] @ Zt.T
            A[:, o:n2] = A[:, o:n2] @ Zt.T
            C[:, o:n2] = C[:, o:n2] @ Zt.T
            Z[:, o:n2] = Z[:, o:n2] @ Zt.T
            prev = nu
            k += nu
        kept_f = k

    kept = ninf + kept_f
    if kept < n2:
        A = A[:kept, :kept]
        E = E[:kept, :kept]
        B = B[:kept, :]
        C = C[:, :kept]

    removed_fin = n2 - kept
    out = DescriptorSystem(A, E, B, C, sys.D, sys.timing)
    return out, removed_inf + removed_fin, Q, Z


def ctrb_staircase(sys: DescriptorSystem, tol: float = 0.0, *, return_transforms=False):
    """Restrict a realization to its controllable part.

    Alternating compressions deflate the uncontrollable infinite
    eigenvalues (directions missing from the row space of ``[E B]``),
    isolate the controllable infinite part in a leading block, and then
    deflate the uncontrollable finite eigenvalues by the staircase on
    the trailing block, leaving an orthogonally similar realization of
    the same rational matrix whose remaining dynamics are completely
    controllable.

    Parameters
    ----------
    sys : DescriptorSystem
        Realization with a regular pole pencil.
    tol : float, optional
        Rank tolerance shared by every decision in the reduction.
    return_transforms : bool, optional
        Also return the accumulated orthogonal ``Q`` and ``Z``.

    Returns
    -------
    reduced : DescriptorSystem
    removed : int
        How many states were deflated.

    Raises
    ------
    ReductionError
        If the rank decisions expose a singular pole pencil.
    """
    out, removed, Q, Z = _ctrb_reduce(sys, tol)
    if return_transforms:
        return out, removed, Q, Z
    return out, removed


def obsv_staircase(sys: DescriptorSystem, tol: float = 0.0, *, return_transforms=False):
    """Restrict a realization to its observable part.

    Dual of :func:`ctrb_staircase`: the reduction is applied to the
    transposed realization and the result transposed back.
    """
    red, removed, Qt, Zt = _ctrb_reduce(transpose(sys), tol)
    out = transpose(red)
    if return_transforms:
        # The transforms swap roles under transposition.
        return out, removed, Zt, Qt
    return out, removed


def remove_nondynamic(sys: DescriptorSystem, tol: float = 0.0, *, return_transforms=False):
    """Eliminate non-dynamic modes by residualization.

    In coordinates where ``E = diag(E11, 0)`` with ``E11`` nonsingular,
    states in the kernel of ``E`` satisfy purely algebraic relations and
    can be solved out exactly::

        A -> A11 - A12 inv(A22) A21      E -> E11
        B -> B1 - A12 inv(A22) B2        C -> C1 - C2 inv(A22) A21
        D -> D - C2 inv(A22) B2

    The rational matrix is unchanged.  The realization should already be
    controllable and observable at infinity for the removed modes to be
    exactly the non-dynamic ones.

    Raises
    ------
    ReductionError
        If the trailing block ``A22`` is numerically singular, which
        means the realization is improper or not reduced.
    """
    n = sys.n
    if n == 0:
        if return_transforms:
            return sys, 0, np.eye(0), np.eye(0)
        return sys, 0
    tol = _anchored_tol(tol, sys.A, sys.E)
    U, sigma, Vt = np.linalg.svd(sys.E)
    r = int(np.count_nonzero(sigma > tol))
    if r == n:
        if return_transforms:
            return sys, 0, np.eye(n), np.eye(n)
        return sys, 0
    V = Vt.T
    Ab = U.T @ sys.A @ V
    Bb = U.T @ sys.B
    Cb = sys.C @ V
    A11, A12 = Ab[:r, :r], Ab[:r, r:]
    A21, A22 = Ab[r:, :r], Ab[r:, r:]
    B1, B2 = Bb[:r, :], Bb[r:, :]
    C1, C2 = Cb[:, :r], Cb[:, r:]
    if rank_svd(A22, tol) < n - r:
        raise ReductionError("improper or non-reduced realization")
    X = scipy.linalg.solve(A22, np.hstack([A21, B2]))
    XA, XB = X[:, :r], X[:, r:]
    out = DescriptorSystem(
        A11 - A12 @ XA,
        np.diag(sigma[:r]),
        B1 - A12 @ XB,
        C1 - C2 @ XA,
        sys.D - C2 @ XB,
        sys.timing,
    )
    if return_transforms:
        return out, n - r, U, V
    return out, n - r


def minimal_realization(sys: DescriptorSystem, tol: float = 0.0):
    """Compute a minimal realization of the same rational matrix.

    Runs the controllability staircase, the observability staircase and
    the non-dynamic mode elimination, in that fixed order, under one
    shared tolerance.

    Returns
    -------
    reduced : DescriptorSystem
    report : MinimalizationReport
        Per-stage removal counts; ``original_order`` always equals
        ``final_order`` plus the three removal counts.
    """
    # Resolve the default threshold once, against the original data, so
    # later stages judge the rounding residue left behind by earlier ones
    # on the scale at which it was created.
    tol = _anchored_tol(tol, sys.A, sys.E, sys.B, sys.C)
    s1, removed_c = ctrb_staircase(sys, tol)
    s2, removed_o = obsv_staircase(s1, tol)
    s3, removed_n = remove_nondynamic(s2, tol)
    report = MinimalizationReport(
        original_order=sys.n,
        removed_uncontrollable=removed_c,
        removed_unobservable=removed_o,
        removed_nondynamic=removed_n,
        final_order=s3.n,
    )
    return s3, report


def _extract_row_structure(M, N, tol):
    """Staircase extraction of the full-row-rank part of ``M - lam*N``.

    Mutates ``M`` and ``N`` in place into ``Q.T (M - lam*N) Z`` of shape::

        [ R   X  ]
        [ 0   P' ]

    where ``R`` spans the returned number of stair ``rows`` and ``cols``,
    has full row rank for every ``lam``, and the trailing ``P'`` has an
    ``N``-part of full column rank.  Returns ``(Q, Z, rows, cols)``.
    """
    q, r = M.shape
    Q = np.eye(q)
    Z = np.eye(r)
    i = 0
    j = 0
    while True:
        rt = r - j
        if rt == 0:
            break
        Zk, _, rho = col_compress(N[i:, j:], tol)
        if rho == rt:
            break
        width = rt - rho
        M[:, j:] = M[:, j:] @ Zk
        N[:, j:] = N[:, j:] @ Zk
        Z[:, j:] = Z[:, j:] @ Zk
        N[i:, j : j + width] = 0.0
        Qk, _, tau = row_compress(M[i:, j : j + width], tol)
        M[i:, j:] = Qk.T @ M[i:, j:]
        N[i:, j:] = Qk.T @ N[i:, j:]
        Q[:, i:] = Q[:, i:] @ Qk
        M[i + tau :, j : j + width] = 0.0
        i += tau
        j += width
    return Q, Z, i, j


def kronecker_like(pencil: LinearPencil, tol: float = 0.0) -> KroneckerStructure:
    """Block-triangularize a rectangular pencil by its Kronecker structure.

    Computes orthogonal ``Q``, ``Z`` such that ``Q.T (M - lam*N) Z`` is
    block upper triangular with a full row rank pencil on top, a regular
    square core in the middle and a full column rank pencil at the
    bottom (see :class:`KroneckerStructure`).  The normal rank of the
    input is then the sum ``right_rows + regular_order + left_cols``.

    The reduction is the SVD-based staircase variant: dependable rank
    decisions at ``O(n^4)`` worst-case cost, which is the right trade at
    the orders this package targets.

    Raises
    ------
    ReductionError
        If the block bookkeeping comes out inconsistent, which indicates
        rank decisions at war with each other; try a different tolerance.
    """
    q, r = pencil.shape
    tol = _anchored_tol(tol, pencil.M, pencil.N)
    # Left structure first: run the row extraction on the transposed
    # pencil, transpose back, and flip row/column order so the extracted
    # full-column-rank part lands in the bottom-right corner.
    Mt = pencil.M.T.copy()
    Nt = pencil.N.T.copy()
    Qt, Zt, left_cols, left_rows = _extract_row_structure(Mt, Nt, tol)
    M2 = Mt.T[::-1, ::-1].copy()
    N2 = Nt.T[::-1, ::-1].copy()
    QA = (Zt @ np.eye(q)[::-1])  # row transform: transpose then reversal
    ZA = (Qt @ np.eye(r)[::-1])
    # Right structure on what is left of the pencil.
    qb = q - left_rows
    rb = r - left_cols
    Msub = M2[:qb, :rb].copy()
    Nsub = N2[:qb, :rb].copy()
    QB, ZB, right_rows, right_cols = _extract_row_structure(Msub, Nsub, tol)
    M2[:qb, :rb] = Msub
    N2[:qb, :rb] = Nsub
    M2[:qb, rb:] = QB.T @ M2[:qb, rb:]
    N2[:qb, rb:] = QB.T @ N2[:qb, rb:]
    Q = QA @ scipy.linalg.block_diag(QB, np.eye(left_rows))
    Z = ZA @ scipy.linalg.block_diag(ZB, np.eye(left_cols))
    core_rows = qb - right_rows
    core_cols = rb - right_cols
    if core_rows != core_cols:
        raise ReductionError(
            "inconsistent rank decisions while splitting the pencil "
            f"(regular core would be {core_rows} x {core_cols}); "
            "try a different tolerance"
        )
    return KroneckerStructure(
        right_rows=right_rows,
        right_cols=right_cols,
        regular_order=core_rows,
        left_rows=left_rows,
        left_cols=left_cols,
        Q=Q,
        Z=Z,
        reduced=LinearPencil(M2, N2),
    )


def pencil_normal_rank(structure: KroneckerStructure) -> int:
    """Normal rank of a pencil from its extracted block structure."""
    return structure.right_rows + structure.regular_order + structure.left_cols
