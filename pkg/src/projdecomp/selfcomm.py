"""Zero-trace Hermitian matrices as self-commutators ``X* X - X X*``.

Construction: rotate ``B`` to a zero-diagonal matrix ``B0 = U* B U``, then
with ``P = diag(1, ..., n)`` solve ``2i [P, Q] = B0`` entrywise for a
Hermitian ``Q``.  ``X0 = P + iQ`` satisfies ``X0* X0 - X0 X0* = 2i [P, Q]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import PreconditionError
from .linalg import as_hermitian, max_abs, operator_norm, spectral_norm

TRACE_TOL = 1e-9


@dataclass
class SelfCommutatorWitness:
    """``X`` with ``X* X - X X* = B``; ``X = U (diag(pdiag) + iQ) U* + t_shift I``."""

    X: np.ndarray
    U: np.ndarray
    pdiag: np.ndarray
    Q: np.ndarray
    t_shift: float = 0.0

    def commutator(self):
        X = self.X
        return X.conj().T @ X - X @ X.conj().T


def _check_trace(B, tol):
    n = B.shape[0]
    tr = float(np.trace(B).real)
    bound = tol * n * (1.0 + operator_norm(B))
    if abs(tr) > bound:
        raise PreconditionError(f"|trace| = {abs(tr):.3e} exceeds {bound:.3e}")
    if n:
        B = B - (tr / n) * np.eye(n)
    return B


def _zeroing_tangent(alpha, gamma, b):
    """Positive root ``t`` of ``gamma t^2 + 2 b t + alpha = 0`` for ``alpha > 0 > gamma``."""
    root = np.sqrt(b * b - alpha * gamma)
    if b >= 0:
        return (b + root) / -gamma
    return alpha / (root - b)


def zero_diag_reduce(B, trace_tol=TRACE_TOL):
    """Real orthogonal ``U`` with ``diag(U* B U) = 0`` for a zero-trace Hermitian ``B``.

    Each step takes the largest diagonal entry ``i`` and the smallest ``j``
    (opposite signs since the trace vanishes) and applies the Givens rotation
    in the ``(i, j)`` plane that sends entry ``(i, i)`` to zero.  Zeroed entries
    are never touched again, so at most ``n - 1`` steps are needed.
    """
    B = _check_trace(as_hermitian(B, name="B"), trace_tol)
    n = B.shape[0]
    U = np.eye(n)
    A = B.copy()
    floor = 8 * np.finfo(float).eps * n * (1.0 + max_abs(B))
    for _ in range(max(n - 1, 0)):
        d = A.diagonal().real
        i, j = int(np.argmax(d)), int(np.argmin(d))
        if d[i] <= floor and -d[j] <= floor:
            break
        alpha, gamma, b = d[i], d[j], A[i, j].real
        t = _zeroing_tangent(alpha, gamma, b)
        c = 1.0 / np.sqrt(1.0 + t * t)
        s = t * c
        G = np.eye(n)
        G[i, i], G[j, i], G[i, j], G[j, j] = c, s, -s, c
        A = G.T @ A @ G
        A[i, i] = 0.0
        A = 0.5 * (A + A.conj().T)
        U = U @ G
    return U


def _solve_commutator(B0):
    n = B0.shape[0]
    pdiag = np.arange(1, n + 1, dtype=float)
    Q = np.zeros((n, n), dtype=complex)
    for j in range(n):
        for k in range(j + 1, n):
            Q[j, k] = B0[j, k] / (2j * (j - k))
            Q[k, j] = np.conj(Q[j, k])
    return pdiag, Q


def witness(B, trace_tol=TRACE_TOL):
    """Construct ``X`` with ``X* X - X X* = B`` for Hermitian ``B`` of zero trace."""
    B = _check_trace(as_hermitian(B, name="B"), trace_tol)
    U = zero_diag_reduce(B, trace_tol)
    B0 = U.T @ B @ U
    pdiag, Q = _solve_commutator(B0)
    X0 = np.diag(pdiag) + 1j * Q
    X = U @ X0 @ U.T
    return SelfCommutatorWitness(X=X, U=U, pdiag=pdiag, Q=Q)


def shifted_witness(B, level, trace_tol=TRACE_TOL):
    """Witness shifted by ``t I`` so that ``X* X > level``; the commutator is unchanged.

    ``t = ||X|| + sqrt(level) + 1`` gives ``sigma_min(X + t I) >= t - ||X||``.
    """
    if level < 0:
        raise PreconditionError("level must be nonnegative")
    w = witness(B, trace_tol)
    n = w.X.shape[0]
    t = spectral_norm(w.X) + np.sqrt(level) + 1.0
    w.X = w.X + t * np.eye(n)
    w.t_shift = float(t)
    return w
