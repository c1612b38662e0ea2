"""Independent reference computations used to check the package."""

import numpy as np


def charpoly(A):
    """Characteristic polynomial coefficients by Faddeev-LeVerrier, highest degree first."""
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    coeffs = [1.0 + 0j]
    M = np.zeros_like(A)
    I = np.eye(n)
    for k in range(1, n + 1):
        M = A @ M + coeffs[-1] * I
        coeffs.append(-np.trace(A @ M) / k)
    return np.array(coeffs)


def charpoly_eigenvalues(A):
    return np.sort(np.roots(charpoly(A)).real)


def power_norm(A, iters=5000, seed=0):
    """Largest singular value by power iteration on ``A* A``."""
    A = np.asarray(A, dtype=complex)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(A.shape[1]) + 1j * rng.standard_normal(A.shape[1])
    G = A.conj().T @ A
    est = 0.0
    for _ in range(iters):
        w = G @ v
        nrm = np.linalg.norm(w)
        if nrm == 0:
            return 0.0
        v = w / nrm
        new = np.sqrt(np.vdot(v, G @ v).real)
        if abs(new - est) <= 1e-15 * max(new, 1.0):
            break
        est = new
    return float(new)


def grid_minimize(objective, k, centre=None, width=10.0, points=11, rounds=60):
    """Minimise ``objective`` over R^k by repeatedly refining a uniform grid."""
    centre = np.zeros(k) if centre is None else np.asarray(centre, dtype=float)
    offsets = np.linspace(-1.0, 1.0, points)
    mesh = np.stack(np.meshgrid(*[offsets] * k, indexing="ij"), axis=-1).reshape(-1, k)
    for _ in range(rounds):
        trial = centre + width * mesh
        values = [objective(x) for x in trial]
        centre = trial[int(np.argmin(values))]
        width *= 0.5
    return centre


def zero_trace_hermitian(n, seed):
    from projdecomp.linalg import random_hermitian

    H = random_hermitian(n, seed)
    return H - np.trace(H).real / n * np.eye(n)


def combo_residual(A, coefficients, projections):
    R = np.asarray(A, dtype=complex).copy()
    for c, P in zip(coefficients, projections):
        R = R - c * P
    return float(np.linalg.norm(R))
