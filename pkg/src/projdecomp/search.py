"""Local search for ``A ~ sum_i alpha_i P_i`` with projections of fixed ranks.

Each restart alternates a least-squares fit of the coefficients with
block-coordinate updates of the projections: with everything else fixed,
``||R - alpha P||_F`` over rank-``r`` projections is minimised by the top
``r`` eigenvectors of ``R`` when ``alpha > 0`` and the bottom ``r`` when
``alpha < 0``.  Nothing here certifies non-existence; a residual floor is
empirical evidence only.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from .linalg import as_hermitian, random_projection, spectral_norm

log = logging.getLogger(__name__)

SURROGATE_LABEL = "structure-analogous float surrogate, not certified"


@dataclass
class SearchConfig:
    ranks: tuple
    restarts: int = 10
    max_iters: int = 2000
    seed: int = 0
    target_residual: float = 1e-10
    stall_window: int = 50
    stall_ratio: float = 0.999

    def validate(self, n):
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be positive")
        if any(r < 0 or r > n for r in self.ranks):
            raise ValueError(f"ranks {self.ranks} must lie in [0, {n}]")


@dataclass
class SearchResult:
    coefficients: np.ndarray
    projections: list
    residual: float
    iterations: int
    converged: bool
    ranks: tuple = ()
    restart: int = 0
    history: list = field(default_factory=list, repr=False)


def _inner(X, Y):
    return float(np.vdot(X, Y).real)


def fit_coefficients(A, projections):
    """Real ``alpha`` minimising ``||A - sum alpha_i P_i||_F``.

    Solves the Gram system ``G alpha = r`` with ``G_ij = <P_i, P_j>`` and
    ``r_i = <P_i, A>``; the pseudo-inverse handles rank-deficient ``G``.
    """
    k = len(projections)
    G = np.empty((k, k))
    r = np.empty(k)
    for i, P in enumerate(projections):
        r[i] = _inner(P, A)
        for j in range(i, k):
            G[i, j] = G[j, i] = _inner(P, projections[j])
    return np.linalg.pinv(G, rcond=1e-12) @ r


def relative_residual(A, coefficients, projections, scale=None):
    """``||A - sum alpha_i P_i||_F / (1 + ||A||)``."""
    R = np.asarray(A, dtype=complex).copy()
    for a, P in zip(coefficients, projections):
        R -= a * P
    if scale is None:
        scale = 1.0 + spectral_norm(A)
    return float(np.linalg.norm(R)) / scale


def _spectral_projector(R, rank, top):
    _, vecs = np.linalg.eigh(R)
    W = vecs[:, -rank:] if top else vecs[:, :rank]
    if rank == 0:
        W = vecs[:, :0]
    return W @ W.conj().T


def _run_restart(A, config, restart, scale):
    n = A.shape[0]
    rng = np.random.default_rng([config.seed, restart])
    projs = [random_projection(n, r, rng) for r in config.ranks]
    best = None
    history = []
    for it in range(1, config.max_iters + 1):
        alpha = fit_coefficients(A, projs)
        res = relative_residual(A, alpha, projs, scale)
        history.append(res)
        if best is None or res < best[0]:
            best = (res, alpha.copy(), [P.copy() for P in projs], it)
        if res <= config.target_residual:
            break
        w = config.stall_window
        if it > w and history[-1] > config.stall_ratio * history[-1 - w]:
            break
        for i, rank in enumerate(config.ranks):
            if abs(alpha[i]) <= 1e-12 or rank in (0, n):
                continue
            R = A.copy()
            for j, P in enumerate(projs):
                if j != i:
                    R -= alpha[j] * P
            projs[i] = _spectral_projector(0.5 * (R + R.conj().T), rank, alpha[i] > 0)
    res, alpha, projs, it = best
    return SearchResult(
        coefficients=alpha,
        projections=projs,
        residual=res,
        iterations=len(history),
        converged=res <= config.target_residual,
        ranks=tuple(config.ranks),
        restart=restart,
        history=history,
    )


def search_three(A, config):
    """Best fixed-rank decomposition found over ``config.restarts`` seeded restarts.

    Works for any number of ranks, not only three.  Restarts are independent;
    ties in residual go to the lower restart index.
    """
    A = as_hermitian(A, name="A")
    config.validate(A.shape[0])
    scale = 1.0 + spectral_norm(A)
    best = None
    for restart in range(config.restarts):
        result = _run_restart(A, config, restart, scale)
        if best is None or result.residual < best.residual:
            best = result
        if best.converged:
            break
    return best


def rank_triples(n):
    top = max(n - 1, 1)
    return list(combinations_with_replacement(range(1, top + 1), 3))


# every triple up to n = 12
TRIPLE_BUDGET = len(rank_triples(12))


def rank_sweep(A, restarts=3, seed=0, max_iters=2000, max_triples=TRIPLE_BUDGET, target_residual=1e-10):
    """Best search result for each rank triple ``1 <= r1 <= r2 <= r3 <= n - 1``.

    With more triples than ``max_triples``, an evenly spaced subset is
    searched and the table is flagged partial (with a warning).  Returns
    ``(rows, partial)`` where ``rows`` is a list of SearchResult.
    """
    A = as_hermitian(A, name="A")
    triples = rank_triples(A.shape[0])
    partial = False
    if max_triples is not None and len(triples) > max_triples:
        picks = np.unique(np.linspace(0, len(triples) - 1, max_triples).round().astype(int))
        triples = [triples[i] for i in picks]
        partial = True
        warnings.warn(
            f"rank sweep truncated to {len(triples)} of {len(rank_triples(A.shape[0]))} triples",
            RuntimeWarning,
            stacklevel=2,
        )
    rows = []
    for ranks in triples:
        cfg = SearchConfig(
            ranks=ranks,
            restarts=restarts,
            max_iters=max_iters,
            seed=seed,
            target_residual=target_residual,
        )
        rows.append(search_three(A, cfg))
        log.debug("ranks %s residual %.3e", ranks, rows[-1].residual)
    return rows, partial


def family_surrogate():
    """Float matrix with the block structure of the 76-point family.

    ``mu_i = 1 - 0.05 * 10^-i`` and ``gamma_i = 1 + 0.05 * 10^(i-5)`` with
    multiplicities ``(1, 1, 1, 1, 18, 18, 18, 18)``.  The true constants
    underflow doubles; this matrix only mimics their layout.
    """
    mu = [1 - 0.05 * 10.0 ** (-i) for i in range(1, 5)]
    gamma = [1 + 0.05 * 10.0 ** (i - 5) for i in range(1, 5)]
    diag = mu + [g for g in gamma for _ in range(18)]
    return np.diag(diag).astype(complex)
