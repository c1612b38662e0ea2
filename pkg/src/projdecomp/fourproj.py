"""Decomposition of Hermitian matrices into ``a P1 - b P2 + c P3 - c P4``.

Even size ``2m``, in the eigenbasis of ``A`` with ``A = diag(D1, D2)``:

1. ``lam = tr(A) / m`` and ``B = D1 + D2 - lam I`` has zero trace, so
   ``B = X* X - X X*`` with ``X* X > |lam| + 1`` after a shift.
2. ``diag(X* X, lam I - X X*)`` is ``a P1 - b P2`` with ``a - b = lam``:
   pair ``v_i (+) 0`` with ``0 (+) u_i`` from the paired SVD of ``X``.
3. What is left, ``A - (a P1 - b P2) = diag(T, -T)`` with ``T = D1 - X* X``,
   is ``c (Q1 - Q2)`` for ``c >= ||T||``.

Odd sizes put the eigenvalue of largest modulus in a 1x1 corner fed by
``a - c``; see :func:`decompose4`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import UnsupportedInputError, ValidationError
from .linalg import (
    as_hermitian,
    as_square,
    hermitian_eigen,
    is_orthoprojection,
    max_abs,
    operator_norm,
    projection_rank,
    spectral_norm,
    svd_paired,
)
from .selfcomm import SelfCommutatorWitness, shifted_witness
from .twoproj import block_pair, halmos_difference


@dataclass
class ProjectionCombination:
    """``sum_i coefficients[i] * projections[i]`` on ``C^n``."""

    coefficients: list
    projections: list

    @property
    def n(self):
        return self.projections[0].shape[0] if self.projections else 0

    @property
    def ranks(self):
        return [projection_rank(P) for P in self.projections]

    def __len__(self):
        return len(self.coefficients)

    def evaluate(self):
        n = self.n
        out = np.zeros((n, n), dtype=complex)
        for c, P in zip(self.coefficients, self.projections):
            out += c * P
        return out

    def is_real(self):
        return all(np.isrealobj(c) or np.imag(c) == 0 for c in self.coefficients)

    def negated(self):
        return ProjectionCombination([-c for c in self.coefficients], list(self.projections))


@dataclass
class FourProjPlan:
    """Parameters of one run of the pipeline (see module docstring)."""

    lam: float
    split: tuple
    t_shift: float
    a: float
    b: float
    c: float
    T: np.ndarray
    witness: SelfCommutatorWitness | None
    s_squared: list = field(default_factory=list)
    mu: float | None = None
    negated: bool = False

    def as_dict(self):
        out = {
            "lambda": self.lam,
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "t": self.t_shift,
        }
        if self.mu is not None:
            out["mu"] = self.mu
        if self.negated:
            out["negated"] = True
        return out


@dataclass
class VerificationReport:
    residual_max: float
    residual_fro: float
    scale: float
    hermiticity_defects: list
    idempotency_defects: list
    ranks: list
    trace_defect: float

    @property
    def relative_residual(self):
        return self.residual_fro / self.scale

    def as_dict(self):
        return {
            "residual_max": self.residual_max,
            "residual_fro": self.residual_fro,
            "relative_residual": self.relative_residual,
            "scale": self.scale,
            "hermiticity_defects": self.hermiticity_defects,
            "idempotency_defects": self.idempotency_defects,
            "ranks": self.ranks,
            "trace_defect": self.trace_defect,
        }


def verify_combination(A, combo):
    """Residual, projection defects, ranks and trace identity of a combination.

    ``scale`` is ``1 + ||A||`` (spectral norm); the trace identity defect is
    ``|tr(A) - sum c_i rank(P_i)|``.
    """
    A = as_square(A)
    if combo.projections and combo.n != A.shape[0]:
        raise ValidationError("combination and matrix sizes differ")
    R = A - combo.evaluate()
    herm, idem = [], []
    for P in combo.projections:
        _, d = is_orthoprojection(P)
        herm.append(d.hermiticity)
        idem.append(d.idempotency)
    ranks = combo.ranks
    predicted = sum(c * r for c, r in zip(combo.coefficients, ranks))
    return VerificationReport(
        residual_max=max_abs(R),
        residual_fro=float(np.linalg.norm(R)),
        scale=1.0 + spectral_norm(A),
        hermiticity_defects=herm,
        idempotency_defects=idem,
        ranks=ranks,
        trace_defect=float(abs(np.trace(A) - predicted)),
    )


def _default_coefficients(s_norm, lam, t_norm):
    a = s_norm + abs(lam) + 1.0
    c = t_norm if t_norm > 0 else 1.0
    return a, c


def _block_pipeline(d, choose=_default_coefficients, lam=None):
    """Run the pipeline on ``diag(d)`` (length ``2m``, ascending).

    ``choose(||S||, lam, ||T||) -> (a, c)`` picks the free coefficients; ``b``
    is always ``a - lam``.  Returns the four projections in the eigenbasis
    and the plan.
    """
    d = np.asarray(d, dtype=float)
    m = d.size // 2
    D1, D2 = np.diag(d[:m]), np.diag(d[m:])
    if lam is None:
        lam = float(d.sum() / m)
    B = D1 + D2 - lam * np.eye(m)
    w = shifted_witness(B, abs(lam) + 1.0)
    X = w.X
    S = X.conj().T @ X
    S = 0.5 * (S + S.conj().T)
    s_norm = operator_norm(S)
    T = D1 - S
    t_norm = operator_norm(T)
    a, c = choose(s_norm, lam, t_norm)
    b = a - lam

    svd = svd_paired(X, invertible=True)
    n = 2 * m
    P1 = np.zeros((n, n), dtype=complex)
    P2 = np.zeros((n, n), dtype=complex)
    s_squared = []
    for i in range(m):
        s_i = svd.singular_values[i] ** 2
        p1, p2 = block_pair(a, -b, s_i)
        s_squared.append(s_i * (s_i - lam) / (a * b))
        W = np.zeros((n, 2), dtype=complex)
        W[:m, 0] = svd.right[:, i]
        W[m:, 1] = svd.left[:, i]
        P1 += W @ p1 @ W.conj().T
        P2 += W @ p2 @ W.conj().T
    Q1, Q2 = halmos_difference(T / c)
    plan = FourProjPlan(
        lam=lam,
        split=(tuple(range(m)), tuple(range(m, n))),
        t_shift=w.t_shift,
        a=float(a),
        b=float(b),
        c=float(c),
        T=T,
        witness=w,
        s_squared=s_squared,
    )
    return [P1, P2, Q1, Q2], plan


def _back(P, V):
    M = V @ P @ V.conj().T
    return 0.5 * (M + M.conj().T)


def decompose4_even(A):
    """Four-term decomposition of an even-sized Hermitian matrix.

    Returns ``(ProjectionCombination, FourProjPlan)`` with coefficients
    ``[a, -b, c, -c]``.
    """
    A = as_hermitian(A, name="A")
    n = A.shape[0]
    if n == 0 or n % 2:
        raise ValidationError(f"size must be even and positive, got {n}; use decompose4")
    eig = hermitian_eigen(A)
    projs, plan = _block_pipeline(eig.eigenvalues)
    projs = [_back(P, eig.vectors) for P in projs]
    combo = ProjectionCombination([plan.a, -plan.b, plan.c, -plan.c], projs)
    return combo, plan


def _corner_embed(P, corner):
    n = P.shape[0] + 1
    out = np.zeros((n, n), dtype=complex)
    out[0, 0] = corner
    out[1:, 1:] = P
    return out


def _decompose4_odd(A):
    eig = hermitian_eigen(A)
    values, V = eig.eigenvalues, eig.vectors
    negated = bool(abs(values[0]) > abs(values[-1]))
    if negated:
        values, V = -values[::-1], V[:, ::-1]
    mu = float(values[-1])
    n = values.size
    # top eigenvalue into the corner, the rest ascending
    order = [n - 1, *range(n - 1)]
    values, V = values[order], V[:, order]
    rest = values[1:]
    if rest.size == 0:
        c = 1.0
        a = mu + c
        blocks = [np.zeros((0, 0))] * 4
        plan = FourProjPlan(lam=0.0, split=((), ()), t_shift=0.0, a=a, b=a, c=c,
                            T=np.zeros((0, 0)), witness=None, mu=mu)
    else:
        def choose(s_norm, lam, t_norm):
            c = max(t_norm, s_norm + max(lam, 0.0) - mu + 1.0)
            return mu + c, c

        blocks, plan = _block_pipeline(rest, choose)
        plan.mu = mu
    P1, P2, P3, P4 = (
        _corner_embed(blocks[0], 1.0),
        _corner_embed(blocks[1], 0.0),
        _corner_embed(blocks[2], 0.0),
        _corner_embed(blocks[3], 1.0),
    )
    projs = [_back(P, V) for P in (P1, P2, P3, P4)]
    coeffs = [plan.a, -plan.b, plan.c, -plan.c]
    if negated:
        coeffs = [-x for x in coeffs]
        plan.negated = True
    return ProjectionCombination(coeffs, projs), plan


def decompose4(A, return_plan=False):
    """``A = a P1 - b P2 + c P3 - c P4`` for any Hermitian ``A``.

    Odd sizes: after a global sign flip if needed, the largest eigenvalue
    ``mu = ||A||`` sits in a 1x1 corner where ``P1`` and ``P4`` are 1 and
    ``P2``, ``P3`` are 0, so the corner receives ``a - c``.  The even pipeline
    runs on the remaining block with ``c`` raised until ``a = mu + c``
    exceeds ``||X* X||``.
    """
    A = as_hermitian(A, name="A")
    n = A.shape[0]
    if n == 0:
        raise ValidationError("empty matrix")
    if n % 2 == 0:
        combo, plan = decompose4_even(A)
    else:
        combo, plan = _decompose4_odd(A)
    return (combo, plan) if return_plan else combo


def decompose5_integral_even(A, return_plan=False):
    """Integer-coefficient decomposition ``d P5 + a P1 - b P2 + c P3 - c P4``.

    Needs even size and integral trace (necessary, since the trace equals
    ``sum c_i rank(P_i)``).  ``P5`` is the spectral projector of the top
    eigenvector; ``d = tr(A) mod n`` makes ``tr(A - d P5) = n q`` so the shift
    ``lam = 2q`` is an integer.
    """
    A = as_hermitian(A, name="A")
    n = A.shape[0]
    if n == 0 or n % 2:
        raise UnsupportedInputError(f"integral decomposition needs even size, got {n}")
    tr = float(np.trace(A).real)
    tr_int = round(tr)
    if abs(tr - tr_int) > 1e-9 * n:
        raise UnsupportedInputError(f"trace {tr!r} is not an integer")
    m = n // 2
    q = tr_int // n
    d = tr_int - n * q
    eig = hermitian_eigen(A)
    values = eig.eigenvalues.copy()
    values[-1] -= d
    order = np.argsort(values, kind="stable")
    values, V = values[order], eig.vectors[:, order]
    top = eig.vectors[:, -1:]
    P5 = top @ top.conj().T

    def choose(s_norm, lam, t_norm):
        return math.ceil(s_norm + abs(lam)) + 1, math.ceil(t_norm) + 1

    lam = 2 * q
    blocks, plan = _block_pipeline(values, choose, lam=lam)
    plan.a, plan.c = int(plan.a), int(plan.c)
    plan.b = plan.a - lam
    projs = [_back(P, V) for P in blocks]
    combo = ProjectionCombination(
        [int(d), plan.a, -plan.b, plan.c, -plan.c],
        [0.5 * (P5 + P5.conj().T), *projs],
    )
    return (combo, plan) if return_plan else combo


def decompose8_complex(B):
    """Complex combination of eight projections for an arbitrary square matrix.

    ``B = H1 + i H2`` with Hermitian parts decomposed separately.
    """
    B = as_square(B, "B")
    H1 = 0.5 * (B + B.conj().T)
    H2 = (B - B.conj().T) / 2j
    first = decompose4(H1)
    second = decompose4(H2)
    coeffs = [complex(c) for c in first.coefficients]
    coeffs += [1j * c for c in second.coefficients]
    return ProjectionCombination(coeffs, first.projections + second.projections)
