"""Generalized state-space (descriptor) realizations and their algebra.

A realization bundles five real matrices ``(A, E, B, C, D)`` where
``A - lam*E`` is a square pencil of order ``n``, together with a timing
flag that selects the frequency variable: the Laplace variable ``s``
for continuous-time systems or the Z-transform variable ``z`` for
discrete-time ones.  The rational matrix represented is::

    G(lam) = C (lam*E - A)^-1 B + D

``E`` may be singular, the realization need not be minimal, and ``n = 0``
(a purely static gain ``D``) is legal.  Regularity of the pole pencil,
``det(A - lam*E)`` not identically zero, is required by most downstream
operations but deliberately not enforced at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import kernels
from .errors import PoleEvaluationError, ReductionError, ShapeError

__all__ = [
    "CONTINUOUS",
    "DISCRETE",
    "DescriptorSystem",
    "LinearPencil",
    "PoleEvaluationError",
    "ReductionError",
    "ShapeError",
    "conjugate",
    "is_regular",
    "make_system",
    "subtract",
    "transpose",
]

CONTINUOUS = "continuous"
DISCRETE = "discrete"
_TIMINGS = (CONTINUOUS, DISCRETE)


def _as_matrix(value, name):
    """Coerce ``value`` to a real 2-D array, naming the offender on failure."""
    try:
        mat = np.array(value, dtype=float, copy=True)
    except (TypeError, ValueError) as exc:
        raise ShapeError(f"{name} is not a real matrix: {exc}") from None
    if mat.ndim == 0:
        mat = mat.reshape(1, 1)
    elif mat.ndim == 1:
        mat = mat.reshape(0, 0) if mat.size == 0 else mat.reshape(1, -1)
    elif mat.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise ShapeError(f"{name} contains non-finite entries")
    mat.flags.writeable = False
    return mat


@dataclass(frozen=True)
class DescriptorSystem:
    """Immutable descriptor realization ``(A, E, B, C, D)`` plus timing.

    Attributes
    ----------
    A, E : ndarray
        Square ``n x n`` matrices forming the pole pencil ``A - lam*E``.
    B : ndarray
        Input map, ``n x m``.
    C : ndarray
        Output map, ``p x n``.
    D : ndarray
        Feedthrough, ``p x m``.
    timing : str
        Either ``"continuous"`` or ``"discrete"``.

    The stored arrays are defensive read-only copies; operations always
    return new systems instead of mutating.
    """

    A: np.ndarray
    E: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    timing: str = CONTINUOUS

    def __post_init__(self):
        A = _as_matrix(self.A, "A")
        E = _as_matrix(self.E, "E")
        B = _as_matrix(self.B, "B")
        C = _as_matrix(self.C, "C")
        D = _as_matrix(self.D, "D")
        n = A.shape[0]
        if A.shape[1] != n:
            raise ShapeError(f"A must be square, got shape {A.shape}")
        if E.shape != (n, n):
            raise ShapeError(f"E shape {E.shape} does not match A shape {A.shape}")
        if B.shape[0] != n:
            raise ShapeError(f"B row count {B.shape[0]} != n = {n}")
        if C.shape[1] != n:
            raise ShapeError(f"C column count {C.shape[1]} != n = {n}")
        if D.shape != (C.shape[0], B.shape[1]):
            raise ShapeError(
                f"D shape {D.shape} != (p, m) = ({C.shape[0]}, {B.shape[1]})"
            )
        if self.timing not in _TIMINGS:
            raise ValueError(f"timing must be one of {_TIMINGS}, got {self.timing!r}")
        for field, mat in zip("AEBCD", (A, E, B, C, D)):
            object.__setattr__(self, field, mat)

    @property
    def n(self) -> int:
        """State (order) dimension."""
        return self.A.shape[0]

    @property
    def m(self) -> int:
        """Input dimension."""
        return self.B.shape[1]

    @property
    def p(self) -> int:
        """Output dimension."""
        return self.C.shape[0]

    def __repr__(self):
        return (
            f"DescriptorSystem(n={self.n}, m={self.m}, p={self.p}, "
            f"timing={self.timing!r})"
        )


@dataclass(frozen=True)
class LinearPencil:
    """A (possibly rectangular) matrix pencil ``M - lam*N``."""

    M: np.ndarray
    N: np.ndarray

    def __post_init__(self):
        M = _as_matrix(self.M, "M")
        N = _as_matrix(self.N, "N")
        if M.shape != N.shape:
            raise ShapeError(f"M shape {M.shape} != N shape {N.shape}")
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "N", N)

    @property
    def shape(self):
        return self.M.shape


def make_system(A, E, B, C, D, timing=CONTINUOUS) -> DescriptorSystem:
    """Build a validated descriptor realization.

    Parameters
    ----------
    A, E : array_like
        Square matrices of equal order ``n`` (``n = 0`` is allowed, in
        which case the system is the static gain ``D``).
    B : array_like
        ``n x m`` input matrix.
    C : array_like
        ``p x n`` output matrix.
    D : array_like
        ``p x m`` feedthrough matrix.
    timing : str, optional
        ``"continuous"`` (default) or ``"discrete"``.

    Returns
    -------
    DescriptorSystem

    Raises
    ------
    ShapeError
        If any dimension is inconsistent; the message names the matrix.

    Notes
    -----
    Regularity of ``A - lam*E`` is *not* checked here; use
    :func:`is_regular` when it matters.
    """
    return DescriptorSystem(A, E, B, C, D, timing)


def is_regular(sys: DescriptorSystem, tol: float = 0.0) -> bool:
    """Probabilistically test regularity of the pole pencil.

    Evaluates the pencil at three fixed pseudo-random real points and
    reports ``True`` when every sample has full rank at the given
    tolerance.  A pencil with ``det(A - lam*E)`` identically zero fails
    at any sample point; a regular pencil can only be misjudged if a
    sample happens to hit an eigenvalue, which has probability zero.

    Order zero counts as regular.
    """
    if sys.n == 0:
        return True
    rng = np.random.default_rng(0x5EED)
    for _ in range(3):
        lam = rng.uniform(0.0, 1.0)
        if kernels.rank_svd(sys.A - lam * sys.E, tol) < sys.n:
            return False
    return True


def subtract(left: DescriptorSystem, right: DescriptorSystem) -> DescriptorSystem:
    """Realize the difference of two systems.

    The result represents ``G_left(lam) - G_right(lam)`` on the combined
    state space: pole pencils are stacked block-diagonally, the inputs
    are shared and the second output path enters with a sign flip.  The
    order is the sum of the operand orders; no cancellation is attempted.

    Raises
    ------
    ShapeError
        If the input or output dimensions differ.
    ValueError
        If the timings differ.
    """
    if left.m != right.m or left.p != right.p:
        raise ShapeError(
            f"dimension mismatch: ({left.p} x {left.m}) vs ({right.p} x {right.m})"
        )
    if left.timing != right.timing:
        raise ValueError(f"timing mismatch: {left.timing} vs {right.timing}")
    A = scipy.linalg.block_diag(left.A, right.A)
    E = scipy.linalg.block_diag(left.E, right.E)
    B = np.vstack([left.B, right.B])
    C = np.hstack([left.C, -right.C])
    D = left.D - right.D
    return DescriptorSystem(A, E, B, C, D, left.timing)


def transpose(sys: DescriptorSystem) -> DescriptorSystem:
    """Realize the transposed rational matrix ``G(lam)^T``.

    Swaps the roles of inputs and outputs: the result has realization
    ``(A^T, E^T, C^T, B^T, D^T)`` with ``m`` and ``p`` interchanged and
    the same order and timing.
    """
    return DescriptorSystem(
        sys.A.T, sys.E.T, sys.C.T, sys.B.T, sys.D.T, sys.timing
    )


def conjugate(sys: DescriptorSystem) -> DescriptorSystem:
    """Realize the conjugate system ``G(z)~ = G(1/z)^T`` of a discrete system.

    Implemented as the substitution ``z -> 1/z`` applied to the transposed
    realization, which augments the order by the number of outputs of the
    original system (the inputs of the transpose), so the result has order
    ``n + p``.

    Raises
    ------
    ValueError
        If the system is continuous-time; the substitution implemented
        here is the discrete-time one.
    """
    if sys.timing != DISCRETE:
        raise ValueError("conjugate is only defined for discrete-time systems")
    from .analysis import BilinearMap, bilinear

    return bilinear(transpose(sys), BilinearMap(0.0, 1.0, 1.0, 0.0))
