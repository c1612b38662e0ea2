"""Dense complex linear algebra used by every decomposition routine.

The Hermitian eigensolver is a cyclic Jacobi method.  Each sweep visits all
index pairs in round-robin (tournament) order so that the ``n/2`` rotations of
one round act on disjoint index pairs and can be applied together with array
operations.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .exceptions import SingularityError, ValidationError

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10
IDEMPOTENT_TOL = 1e-9
JACOBI_TOL = 1e-14
MAX_SWEEPS = 60


class EigenSystem(NamedTuple):
    """Ascending eigenvalues and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    vectors: np.ndarray


class SingularSystem(NamedTuple):
    """``X = left @ diag(singular_values) @ right.conj().T``, values descending."""

    singular_values: np.ndarray
    left: np.ndarray
    right: np.ndarray


class ProjectionDefects(NamedTuple):
    hermiticity: float
    idempotency: float


def as_square(M, name="matrix"):
    """Return ``M`` as a finite complex square array or raise ValidationError."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValidationError(f"{name} has non-finite entries")
    return M


def max_abs(M):
    return float(np.max(np.abs(M))) if M.size else 0.0


def hermiticity_defect(M):
    return max_abs(M - M.conj().T)


def as_hermitian(H, tol=HERMITIAN_TOL, name="matrix"):
    """Validate Hermiticity relative to ``1 + max|H|`` and return ``(H + H*)/2``."""
    H = as_square(H, name)
    defect = hermiticity_defect(H)
    if defect > tol * (1.0 + max_abs(H)):
        raise ValidationError(f"{name} is not Hermitian (defect {defect:.3e})")
    return 0.5 * (H + H.conj().T)


@lru_cache(maxsize=None)
def _round_robin(n):
    """Rounds of disjoint index pairs covering every pair once (circle method)."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for k in range(m // 2):
            p, q = players[k], players[m - 1 - k]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1], *players[1:-1]]
    return tuple(rounds)


def _off_norm(A):
    off = A.copy()
    np.fill_diagonal(off, 0.0)
    return np.linalg.norm(off)


def _rotate_round(A, V, ps, qs):
    alpha = A[ps, ps].real
    gamma = A[qs, qs].real
    beta = A[ps, qs]
    r = np.abs(beta)
    phase = np.exp(1j * np.angle(beta))
    theta = 0.5 * np.arctan2(2.0 * r, alpha - gamma)
    c, s = np.cos(theta), np.sin(theta)
    # per-pair 2x2 unitary [[g11, g12], [g21, g22]] acting on columns (p, q)
    g11, g12 = c, -s
    g21, g22 = np.conj(phase) * s, np.conj(phase) * c

    Ap, Aq = A[:, ps], A[:, qs]
    A[:, ps] = Ap * g11 + Aq * g21
    A[:, qs] = Ap * g12 + Aq * g22
    Ap, Aq = A[ps, :], A[qs, :]
    A[ps, :] = np.conj(g11)[:, None] * Ap + np.conj(g21)[:, None] * Aq
    A[qs, :] = np.conj(g12)[:, None] * Ap + np.conj(g22)[:, None] * Aq
    A[ps, qs] = 0.0
    A[qs, ps] = 0.0

    Vp, Vq = V[:, ps], V[:, qs]
    V[:, ps] = Vp * g11 + Vq * g21
    V[:, qs] = Vp * g12 + Vq * g22


def hermitian_eigen(H, tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    H : array_like, shape (n, n)
        Hermitian matrix (validated to ``1e-12 * (1 + max|H|)``).
    tol : float
        Sweeps stop once the off-diagonal Frobenius mass is at most
        ``tol * ||H||_F``.

    Returns
    -------
    EigenSystem
        Eigenvalues in ascending order (ties keep their original column
        order) and the unitary matrix of eigenvectors.
    """
    A = as_hermitian(H).copy()
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    if n == 0:
        return EigenSystem(np.zeros(0), V)
    scale = np.linalg.norm(A)
    target = tol * scale
    rounds = _round_robin(n)
    previous = np.inf
    for _ in range(max_sweeps):
        off = _off_norm(A)
        if off <= target:
            break
        # rounding floor: the off-diagonal mass stopped shrinking
        if off >= previous and off <= 1e3 * np.finfo(float).eps * scale * n:
            break
        previous = off
        for ps, qs in rounds:
            if ps.size:
                _rotate_round(A, V, ps, qs)
        A = 0.5 * (A + A.conj().T)
    values = A.diagonal().real.copy()
    order = np.argsort(values, kind="stable")
    return EigenSystem(values[order], V[:, order])


def eigvalsh(H):
    return hermitian_eigen(H).eigenvalues


def operator_norm(H):
    """Spectral norm of a Hermitian matrix: the largest eigenvalue modulus."""
    values = eigvalsh(H)
    return float(np.max(np.abs(values))) if values.size else 0.0


def spectral_norm(X):
    """Largest singular value of an arbitrary square matrix."""
    X = as_square(X)
    if X.size == 0:
        return 0.0
    top = eigvalsh(X.conj().T @ X)[-1]
    return float(np.sqrt(max(top, 0.0)))


def _complete_basis(U, n):
    """Extend orthonormal columns ``U`` (n x k) to an n x n unitary."""
    k = U.shape[1]
    if k == n:
        return U
    complement = np.eye(n, dtype=complex) - U @ U.conj().T
    # pick the coordinate directions least covered by U
    order = np.argsort(-np.linalg.norm(complement, axis=0), kind="stable")
    Q, _ = np.linalg.qr(np.hstack([U, complement[:, order[: n - k]]]))
    # QR may flip signs of the leading columns; restore the given ones
    Q[:, :k] = U
    return Q


def svd_paired(X, invertible=True):
    """Singular value decomposition with left vectors paired to right ones.

    Right vectors come from the eigenvectors of ``X* X``; each left vector is
    then ``X v_i / sigma_i``.  This keeps ``(v_i, u_i)`` consistent inside
    degenerate singular subspaces, which an independent factorisation of
    ``X X*`` would not.

    Raises
    ------
    SingularityError
        If ``invertible`` and ``sigma_min < 1e-12 * ||X||``.
    """
    X = as_square(X)
    n = X.shape[0]
    eig = hermitian_eigen(X.conj().T @ X)
    sigma = np.sqrt(np.clip(eig.eigenvalues[::-1], 0.0, None))
    right = eig.vectors[:, ::-1].copy()
    top = sigma[0] if n else 0.0
    cutoff = 1e-12 * top
    if invertible and n and sigma[-1] <= cutoff:
        raise SingularityError(
            f"sigma_min = {sigma[-1]:.3e} is below 1e-12 * ||X|| = {cutoff:.3e}"
        )
    good = sigma > cutoff if n else np.zeros(0, dtype=bool)
    left = np.zeros((n, n), dtype=complex)
    left[:, good] = (X @ right[:, good]) / sigma[good]
    if not np.all(good):
        k = int(np.count_nonzero(good))
        left = _complete_basis(left[:, :k], n)
    return SingularSystem(sigma, left, right)


def is_orthoprojection(M, tol=IDEMPOTENT_TOL):
    """Check ``M = M* = M^2`` entrywise to ``tol``.

    Returns ``(ok, ProjectionDefects)`` where the defects are the max-norms of
    ``M - M*`` and ``M^2 - M``.
    """
    M = as_square(M)
    defects = ProjectionDefects(hermiticity_defect(M), max_abs(M @ M - M))
    return bool(defects.hermiticity <= tol and defects.idempotency <= tol), defects


def projection_rank(P):
    return int(round(float(np.trace(P).real)))


def check_unitary(U, tol=UNITARY_TOL):
    U = as_square(U)
    return max_abs(U.conj().T @ U - np.eye(U.shape[0])) <= tol


def conj_by_unitary(H, U):
    """``U H U*``, re-symmetrised so the result is exactly Hermitian."""
    H = as_square(H)
    U = as_square(U, "unitary")
    M = U @ H @ U.conj().T
    return 0.5 * (M + M.conj().T)


def _rng(seed):
    return np.random.default_rng(seed)


def random_unitary(n, seed=None):
    """Haar-distributed unitary from the QR factorisation of a Gaussian matrix."""
    rng = _rng(seed)
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(G)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_hermitian(n, seed=None, scale=1.0):
    rng = _rng(seed)
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * 0.5 * (G + G.conj().T)


def random_projection(n, rank, seed=None):
    """Rank-``rank`` orthoprojection ``U diag(I_rank, 0) U*`` for a random unitary U."""
    if not 0 <= rank <= n:
        raise ValueError(f"rank must lie in [0, {n}], got {rank}")
    U = random_unitary(n, seed)[:, :rank]
    P = U @ U.conj().T
    return 0.5 * (P + P.conj().T)


def range_projector(M, cutoff=1e-10):
    """Orthoprojection onto the span of eigenvectors of Hermitian ``M`` with |eigenvalue| > cutoff."""
    eig = hermitian_eigen(M)
    W = eig.vectors[:, np.abs(eig.eigenvalues) > cutoff]
    return W @ W.conj().T, W


def weyl_violation(A, B, k):
    """Largest violation of ``l_j(A+B) <= l_{j+k}(A) <= l_{j+2k}(A+B)`` for rank B <= k.

    Eigenvalues are 1-indexed ascending; the chain is checked for
    ``j = 1 .. n - 2k``.  A non-positive return value means the chain holds.
    """
    a = eigvalsh(A)
    s = eigvalsh(np.asarray(A) + np.asarray(B))
    n = a.size
    worst = -np.inf
    for j in range(n - 2 * k):
        worst = max(worst, s[j] - a[j + k], a[j + k] - s[j + 2 * k])
    return float(worst)


def interlace_violation(K, P, t):
    """Largest violation of eigenvalue interlacing for ``K + t P`` with P rank one.

    For ``t > 0`` and both spectra descending, ``g_1 >= m_1 >= g_2 >= m_2 >= ...``;
    for ``t < 0`` the chain runs the other way.
    """
    m = eigvalsh(K)[::-1]
    g = eigvalsh(np.asarray(K) + t * np.asarray(P))[::-1]
    if t < 0:
        g, m = m, g
    gaps = [g[i] - m[i] for i in range(m.size)]
    gaps += [m[i] - g[i + 1] for i in range(m.size - 1)]
    return float(-min(gaps)) if gaps else -np.inf
