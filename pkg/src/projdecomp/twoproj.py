"""Real linear combinations ``c1 P1 + c2 P2`` of two orthoprojections.

Two projections in general position split the space into 1x1 blocks (joint
eigenvectors, eigenvalue in ``{0, c1, c2, c1 + c2}``) and 2x2 blocks carrying
an eigenvalue pair ``x, c1 + c2 - x``.  The routines here analyse a spectrum
for such a pairing and synthesise projections realising it.

The pairing logic is written once over plain Python numbers so the exact
(``fractions.Fraction``) decider in :mod:`projdecomp.exact` can share it with
the floating point one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exceptions import InfeasibleError, PreconditionError, ValidationError
from .linalg import as_hermitian, eigvalsh, hermitian_eigen, range_projector

# Joint eigenvalue pattern (P1 eigenvalue, P2 eigenvalue) for each fixed value.
_FIXED_PATTERNS = ((0, 0), (1, 0), (0, 1), (1, 1))


@dataclass
class PairingPlan:
    """How a spectrum splits into joint eigenvectors and 2x2 blocks.

    ``fixed`` maps a spectrum index to the joint eigenvalues ``(e1, e2)`` of
    ``(P1, P2)`` so that the value is ``c1*e1 + c2*e2``.  ``pairs`` holds
    ``(index_x, index_y, s_squared)`` with ``value_x + value_y = c1 + c2``
    and ``value_x <= value_y``.  ``values`` is the spectrum the plan was made
    for, in index order.
    """

    fixed: dict = field(default_factory=dict)
    pairs: list = field(default_factory=list)
    values: list = field(default_factory=list)

    def indices(self):
        out = list(self.fixed)
        for i, j, _ in self.pairs:
            out += [i, j]
        return sorted(out)


def pair_s_squared(x, c1, c2):
    """Squared sine of the block angle producing eigenvalues ``x`` and ``c1+c2-x``."""
    return x * (c1 + c2 - x) / (c1 * c2)


def block_pair(c1, c2, x, tol=1e-12):
    """Two rank-one 2x2 projections with ``c1 p1 + c2 p2 = diag(x, c1 + c2 - x)``.

    Start from ``p2 = diag(1, 0)`` and ``p1`` the projection onto
    ``(cos, sin)`` with ``sin^2 = x (c1 + c2 - x) / (c1 c2)``; the sum then has
    the right trace and determinant, and a real rotation onto its eigenvectors
    makes it diagonal in the requested order.

    Raises
    ------
    InfeasibleError
        If ``sin^2`` falls outside ``[0, 1]`` by more than ``tol``.
    """
    if c1 == 0 or c2 == 0:
        raise ValidationError("coefficients must be nonzero")
    s2 = pair_s_squared(x, c1, c2)
    if s2 < -tol:
        raise InfeasibleError(f"s^2 = {s2} < 0", bound="s2>=0", value=s2)
    if s2 > 1 + tol:
        raise InfeasibleError(f"s^2 = {s2} > 1", bound="s2<=1", value=s2)
    s2 = min(max(s2, 0.0), 1.0)
    s, c = np.sqrt(s2), np.sqrt(1.0 - s2)
    p1 = np.array([[c * c, c * s], [c * s, s * s]])
    p2 = np.array([[1.0, 0.0], [0.0, 0.0]])
    M = c1 * p1 + c2 * p2
    # eigenvector of M for x from either row of (M - x I)
    va = np.array([M[0, 1], x - M[0, 0]])
    vb = np.array([x - M[1, 1], M[1, 0]])
    v = va if np.linalg.norm(va) >= np.linalg.norm(vb) else vb
    norm = np.linalg.norm(v)
    if norm <= 1e-15 * (1.0 + abs(c1) + abs(c2)):
        W = np.eye(2)
    else:
        v = v / norm
        W = np.array([[v[0], -v[1]], [v[1], v[0]]])
    return W.T @ p1 @ W, W.T @ p2 @ W


def _fixed_pattern(value, c1, c2, close):
    for e1, e2 in _FIXED_PATTERNS:
        if close(value, c1 * e1 + c2 * e2):
            return e1, e2
    return None


def pairing_plan(values, c1, c2, close, in_unit):
    """Shared core of the float and exact feasibility tests.

    ``close(u, v)`` decides equality of two values and ``in_unit(s2)`` decides
    ``0 <= s2 <= 1``; both encode the tolerance (or its absence).
    Returns a PairingPlan or None.
    """
    plan = PairingPlan(values=list(values))
    rest = []
    for idx, v in enumerate(values):
        pattern = _fixed_pattern(v, c1, c2, close)
        if pattern is None:
            rest.append(idx)
        else:
            plan.fixed[idx] = pattern
    if len(rest) % 2:
        return None
    rest.sort(key=lambda i: values[i])
    total = c1 + c2
    lo, hi = 0, len(rest) - 1
    # the pairing is an involution, so the smallest remaining value pairs with the largest
    while lo < hi:
        i, j = rest[lo], rest[hi]
        if not close(values[i] + values[j], total):
            return None
        s2 = pair_s_squared(values[i], c1, c2)
        if not in_unit(s2):
            return None
        plan.pairs.append((i, j, s2))
        lo += 1
        hi -= 1
    return plan


def default_tol(c1, c2):
    return 1e-9 * (1.0 + abs(c1) + abs(c2))


def two_comb_feasible(spectrum, c1, c2, tol=None):
    """Decide whether a real spectrum is that of some ``c1 P1 + c2 P2``.

    Values within ``tol`` of ``{0, c1, c2, c1 + c2}`` become joint eigenvectors;
    the rest must pair as ``x <-> c1 + c2 - x`` with ``s^2`` in ``[0, 1]``.
    Returns a PairingPlan, or None when infeasible.
    """
    if c1 == 0 or c2 == 0:
        raise ValidationError("coefficients must be nonzero")
    values = [float(v) for v in spectrum]
    tol = default_tol(c1, c2) if tol is None else tol
    return pairing_plan(
        values,
        float(c1),
        float(c2),
        close=lambda u, v: abs(u - v) <= tol,
        in_unit=lambda s2: -tol <= s2 <= 1 + tol,
    )


def candidate_coefficients(values):
    """Finite family of ``(c1, c2)`` covering every feasible pattern of ``values``.

    Works over floats or Fractions.  Three situations are covered:

    * every value is a joint eigenvalue: ``c1`` is a nonzero value, ``c2`` is
      a value, a difference ``v - c1``, or free (a representative is used);
    * some value is paired: the pair sum ``S = c1 + c2`` equals the smallest
      plus the largest paired value, so ``S`` ranges over pairwise sums, and
      either ``c1`` or ``c2`` is a spectrum value (``c1`` in ``values`` or
      ``S - values``);
    * or neither coefficient is a spectrum value: the pairing is then fixed and
      ``c1 c2`` ranges over an interval, represented by ``c1 = c2 = S/2`` for a
      positive product and by a large rational ``c1`` for a negative one.

    Every candidate still has to pass the feasibility test; the family is
    exhaustive in the sense that the spectrum is a two-combination for some
    real coefficients iff some candidate passes.
    """
    distinct = sorted(set(values))
    nonzero = [v for v in distinct if v != 0]
    span = max((abs(v) for v in distinct), default=0)
    out = []

    def add(c1, c2):
        if c1 != 0 and c2 != 0:
            out.append((c1, c2))
            out.append((c2, c1))

    if not nonzero:
        add(1, 1)
    free = 2 * span if span else 1
    for c1 in nonzero:
        add(c1, free)
        for v in distinct:
            add(c1, v)
            add(c1, v - c1)
    for v in nonzero:
        add(v / 2, v / 2)
        add(2 * v, -v)

    sums = sorted({u + v for i, u in enumerate(distinct) for v in distinct[i:]})
    excluded = set(distinct)
    for S in sums:
        for v in distinct:
            add(v, S - v)
        if S != 0:
            add(S / 2, S / 2)
        # negative product: any c1 far enough out; step past spectrum values
        q_max = max((abs(v * (S - v)) for v in distinct), default=0)
        t = abs(S) + q_max + 1
        while t in excluded or (S - t) in excluded:
            t += 1
        add(t, S - t)
    return out


def _dedupe(pairs, key):
    seen = set()
    out = []
    for c1, c2 in pairs:
        k = key(c1, c2)
        if k not in seen:
            seen.add(k)
            out.append((c1, c2))
    return out


def two_comb_enumerate(spectrum, tol=None):
    """All candidate coefficient pairs for which the spectrum is feasible.

    Returns a list of ``((c1, c2), PairingPlan)``; an empty list means the
    spectrum is not the spectrum of any real two-combination.
    """
    values = [float(v) for v in spectrum]
    cands = candidate_coefficients(values)
    cands = _dedupe(cands, key=lambda a, b: (round(a, 9), round(b, 9)))
    found = []
    for c1, c2 in cands:
        plan = two_comb_feasible(values, c1, c2, tol)
        if plan is not None:
            found.append(((c1, c2), plan))
    return found


def two_comb_synthesize(plan, c1, c2, basis):
    """Build ``P1, P2`` with ``c1 P1 + c2 P2 = basis diag(plan.values) basis*``.

    ``basis`` columns are orthonormal and indexed like the plan.  Fixed
    indices become joint eigenvectors; each pair becomes a :func:`block_pair`
    embedded on its two basis columns.
    """
    basis = np.asarray(basis, dtype=complex)
    n = basis.shape[0]
    if sorted(plan.indices()) != list(range(basis.shape[1])):
        raise ValidationError("plan indices do not match the basis columns")
    P1 = np.zeros((n, n), dtype=complex)
    P2 = np.zeros((n, n), dtype=complex)
    for idx, (e1, e2) in plan.fixed.items():
        v = basis[:, idx : idx + 1]
        outer = v @ v.conj().T
        P1 += e1 * outer
        P2 += e2 * outer
    for i, j, s2 in plan.pairs:
        p1, p2 = block_pair(c1, c2, float(plan.values[i]))
        W = basis[:, [i, j]]
        P1 += W @ p1 @ W.conj().T
        P2 += W @ p2 @ W.conj().T
    return 0.5 * (P1 + P1.conj().T), 0.5 * (P2 + P2.conj().T)


def _sqrt_psd(values, V):
    return (V * np.sqrt(np.clip(values, 0.0, None))) @ V.conj().T


def halmos_difference(T1, tol=1e-12):
    """Projections ``Q1, Q2`` with ``Q1 - Q2 = diag(T1, -T1)`` for ``||T1|| <= 1``.

    ``Q1 = [[(I+T)/2, R/2], [R/2, (I-T)/2]]`` and ``Q2`` the same with ``T``
    negated, where ``R = sqrt(I - T^2)``.
    """
    T = as_hermitian(T1, name="T1")
    k = T.shape[0]
    eig = hermitian_eigen(T)
    worst = float(np.max(np.abs(eig.eigenvalues))) if k else 0.0
    if worst > 1 + tol:
        raise PreconditionError(f"||T1|| = {worst} exceeds 1")
    R = _sqrt_psd(1.0 - np.clip(eig.eigenvalues, -1.0, 1.0) ** 2, eig.vectors)
    I = np.eye(k)
    Q1 = 0.5 * np.block([[I + T, R], [R, I - T]])
    Q2 = 0.5 * np.block([[I - T, R], [R, I + T]])
    return Q1, Q2


def halmos_sum(T2, tol=1e-12):
    """Projections ``R1, R2`` with ``R1 + R2 = diag(T2, 2I - T2)`` for spectrum in ``[0, 2]``."""
    T = as_hermitian(T2, name="T2")
    k = T.shape[0]
    eig = hermitian_eigen(T)
    if k and (eig.eigenvalues[0] < -tol or eig.eigenvalues[-1] > 2 + tol):
        raise PreconditionError("spectrum of T2 must lie in [0, 2]")
    t = np.clip(eig.eigenvalues, 0.0, 2.0)
    S = _sqrt_psd(t * (2.0 - t), eig.vectors)
    I = np.eye(k)
    R1 = 0.5 * np.block([[T, S], [S, 2 * I - T]])
    R2 = 0.5 * np.block([[T, -S], [-S, 2 * I - T]])
    return R1, R2


def lower_bound_check(coefficients, projections, c, tol=1e-8, rank_cutoff=1e-10):
    """Check the lower operator bound for a positive combination below ``c I``.

    If ``M = sum a_i P_i <= c I`` with all ``a_i > 0``, then ``M`` restricted
    to the span of the ranges is at least ``sum a_i - (k - 1) c``.

    Raises
    ------
    PreconditionError
        If some coefficient is not positive or ``M <= c I`` fails.
    """
    if any(a <= 0 for a in coefficients):
        raise PreconditionError("coefficients must be positive")
    M = sum(a * np.asarray(P) for a, P in zip(coefficients, projections))
    M = as_hermitian(M)
    if eigvalsh(M)[-1] > c + tol:
        raise PreconditionError("combination is not bounded above by c I")
    _, W = range_projector(sum(np.asarray(P) for P in projections), rank_cutoff)
    if W.shape[1] == 0:
        return True
    floor = sum(coefficients) - (len(coefficients) - 1) * c
    restricted = W.conj().T @ M @ W
    return bool(eigvalsh(restricted)[0] >= floor - tol)


def exact_in_unit(s2):
    return 0 <= s2 <= 1


def exact_pairing_plan(values, c1, c2):
    """Exact-arithmetic variant of :func:`two_comb_feasible` (zero tolerance)."""
    c1, c2 = Fraction(c1), Fraction(c2)
    return pairing_plan(values, c1, c2, close=lambda u, v: u == v, in_unit=exact_in_unit)
