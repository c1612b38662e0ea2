"""Exact rational spectra and the arithmetic certificate for the 76-point family.

The family ``diag(mu_1..mu_4, gamma_1 I_18, ..., gamma_4 I_18)`` has
``gamma_1 - 1 = 10^-400 theta``, far below the smallest subnormal double, so
everything here stays in :class:`fractions.Fraction` and is never converted
to floating point.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .exceptions import PreconditionError, ValidationError
from .twoproj import candidate_coefficients, exact_pairing_plan

BASE_SIZE = 76
BLOCK = 18


def to_fraction(value):
    """Parse ints, Fractions or ``"p/q"`` strings; floats are rejected."""
    if isinstance(value, float):
        raise ValidationError("floats are not accepted as exact rationals")
    return Fraction(value)


@dataclass(frozen=True)
class RationalSpectrum:
    """Sorted ``(value, multiplicity)`` pairs with strictly increasing values."""

    entries: tuple

    def __post_init__(self):
        values = [v for v, _ in self.entries]
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValidationError("spectrum values must be strictly increasing")
        if any(k < 1 for _, k in self.entries):
            raise ValidationError("multiplicities must be positive")

    @classmethod
    def from_values(cls, values):
        counts = Counter(to_fraction(v) for v in values)
        return cls(tuple(sorted(counts.items())))

    @property
    def n(self):
        return sum(k for _, k in self.entries)

    def values(self):
        """All eigenvalues, ascending, repeated by multiplicity."""
        return [v for v, k in self.entries for _ in range(k)]

    def distinct(self):
        return [v for v, _ in self.entries]

    def multiplicity(self, value):
        return dict(self.entries).get(Fraction(value), 0)

    def scaled(self, factor):
        factor = to_fraction(factor)
        return RationalSpectrum.from_values(factor * v for v in self.values())

    def extended(self, value, count):
        return RationalSpectrum.from_values(self.values() + [to_fraction(value)] * count)


@dataclass(frozen=True)
class FamilyParams:
    """Constants of the 76-point family for one ``theta``.

    ``mu[i] = 1 - 10^(-10(i+1)) theta`` and ``gamma[i] = 1 + 10^(100(i-4)) theta``
    for ``i = 0..3``; ``spread = gamma_4 - gamma_1`` and ``eps = 1 - mu_1``.
    ``n`` is the matrix size the certificate reasons about.
    """

    theta: Fraction
    mu: tuple
    gamma: tuple
    n: int = BASE_SIZE

    @property
    def spread(self):
        return self.gamma[3] - self.gamma[0]

    @property
    def eps(self):
        return 1 - self.mu[0]


def family_params(theta=1, n=BASE_SIZE):
    theta = to_fraction(theta)
    if not 0 < theta <= 1:
        raise PreconditionError(f"theta must lie in (0, 1], got {theta}")
    mu = tuple(1 - Fraction(1, 10 ** (10 * i)) * theta for i in range(1, 5))
    gamma = tuple(1 + Fraction(1, 10 ** (100 * (5 - i))) * theta for i in range(1, 5))
    return FamilyParams(theta=theta, mu=mu, gamma=gamma, n=n)


def params_from_spectrum(spectrum, theta):
    """Read ``mu`` (four lowest values) and ``gamma`` (four highest) off a spectrum."""
    distinct = spectrum.distinct()
    if len(distinct) != 8:
        raise ValidationError("expected eight distinct eigenvalues")
    return FamilyParams(
        theta=to_fraction(theta), mu=tuple(distinct[:4]), gamma=tuple(distinct[4:]), n=spectrum.n
    )


def family_spectrum(theta=1):
    """Parameters and spectrum of the 76 x 76 family (4 simple mus, 4 gammas of multiplicity 18)."""
    params = family_params(theta)
    entries = tuple((m, 1) for m in params.mu) + tuple((g, BLOCK) for g in params.gamma)
    return params, RationalSpectrum(entries)


def padded_family_spectrum(theta=1, m=BASE_SIZE):
    """The 76-point spectrum padded with ``m - 76`` extra copies of ``gamma_4``."""
    if m < BASE_SIZE:
        raise PreconditionError(f"m must be at least {BASE_SIZE}, got {m}")
    params, spectrum = family_spectrum(theta)
    return spectrum.extended(params.gamma[3], m - BASE_SIZE)


@dataclass(frozen=True)
class Check:
    name: str
    statement: str
    passed: bool


@dataclass
class CertificateReport:
    theta: Fraction
    n: int
    checks: list

    HEADER = (
        "Exact arithmetic premises of the no-three-projection argument.\n"
        "Only these inequalities are machine-checked; the case analysis over\n"
        "hypothetical projections is a proof, not a finite computation."
    )

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failing(self):
        return [c.name for c in self.checks if not c.passed]

    def to_text(self):
        lines = [self.HEADER, f"theta = {self.theta}   n = {self.n}"]
        for c in self.checks:
            lines.append(f"{c.name}\t{c.statement}\t{'PASS' if c.passed else 'FAIL'}")
        lines.append(f"overall\t{'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def gamma_pair_sums_distinct(gamma):
    sums = [a + b for a, b in combinations_with_replacement(gamma, 2)]
    return len(set(sums)) == len(sums)


def family_certificate(params):
    """Evaluate the six exact inequalities the non-decomposability argument relies on."""
    mu, g, n = params.mu, params.gamma, params.n
    spread, eps = params.spread, params.eps
    checks = [
        Check(
            "c1",
            "gamma_i + gamma_j distinct over the 10 unordered pairs with repetition",
            gamma_pair_sums_distinct(g),
        ),
        Check("c2", "2 gamma_1 + mu_4 - 2 gamma_4 > mu_3", 2 * g[0] + mu[3] - 2 * g[3] > mu[2]),
        Check(
            "c3",
            "|mu_i - mu_j| > 8 (gamma_4 - gamma_1) for i != j",
            all(abs(a - b) > 8 * spread for a, b in combinations(mu, 2)),
        ),
        Check(
            "c4",
            "(n + 1)(gamma_4 - gamma_1) - (gamma_4 - mu_1) < 0",
            (n + 1) * spread - (g[3] - mu[0]) < 0,
        ),
        Check(
            "c5",
            "10 (gamma_4 - gamma_1) < mu_4 - mu_3 < mu_3 - mu_2 <= (1 - mu_1) / 18",
            10 * spread < mu[3] - mu[2] < mu[2] - mu[1] <= eps / 18,
        ),
        Check("c6", "2 gamma_1 - gamma_4 > mu_4", 2 * g[0] - g[3] > mu[3]),
    ]
    return CertificateReport(theta=params.theta, n=n, checks=checks)


def ordering_holds(params):
    chain = list(params.mu) + list(params.gamma)
    return all(a < b for a, b in zip(chain, chain[1:]))


def two_comb_feasible_exact(spectrum):
    """Every exact ``(c1, c2)`` from the candidate family with a valid pairing.

    Zero tolerance throughout; ``s^2`` membership in ``[0, 1]`` is a rational
    comparison.  Returns a list of ``((c1, c2), PairingPlan)``; empty means the
    spectrum is not that of any real combination of two projections.
    """
    if not isinstance(spectrum, RationalSpectrum):
        spectrum = RationalSpectrum.from_values(spectrum)
    values = spectrum.values()
    seen = set()
    found = []
    for c1, c2 in candidate_coefficients(values):
        key = (Fraction(c1), Fraction(c2))
        if key in seen:
            continue
        seen.add(key)
        plan = exact_pairing_plan(values, *key)
        if plan is not None:
            found.append((key, plan))
    return found


def four_point_spectrum():
    """Four-point spectrum {9/10, 1, 101/100, 10001/10000}, not a two-combination."""
    return RationalSpectrum.from_values(
        [Fraction(9, 10), 1, Fraction(101, 100), Fraction(10001, 10000)]
    )
