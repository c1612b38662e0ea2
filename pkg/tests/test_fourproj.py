import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projdecomp.exceptions import UnsupportedInputError, ValidationError
from projdecomp.fourproj import (
    ProjectionCombination,
    decompose4,
    decompose4_even,
    decompose5_integral_even,
    decompose8_complex,
    verify_combination,
)
from projdecomp.linalg import random_hermitian, random_projection


def assert_valid(A, combo, rel=1e-8):
    report = verify_combination(A, combo)
    assert report.relative_residual <= rel
    assert max(report.hermiticity_defects) <= 1e-9
    assert max(report.idempotency_defects) <= 1e-9
    n = A.shape[0]
    assert report.trace_defect <= 1e-7 * n * report.scale
    return report


def test_zero_matrix():
    combo, plan = decompose4_even(np.zeros((2, 2)))
    assert verify_combination(np.zeros((2, 2)), combo).residual_max <= 1e-12
    assert plan.lam == 0


def test_diag_two():
    A = np.diag([1.0, 2.0])
    combo, plan = decompose4(A, return_plan=True)
    assert plan.lam == pytest.approx(3.0)
    assert verify_combination(A, combo).residual_fro <= 1e-10


def test_scalar():
    combo, plan = decompose4(np.array([[5.0]]), return_plan=True)
    assert len(combo) == 4
    assert plan.a - plan.c == pytest.approx(5.0)
    assert_valid(np.array([[5.0]]), combo)
    combo = decompose4(np.array([[-5.0]]))
    assert_valid(np.array([[-5.0]]), combo)


def test_diag_three():
    A = np.diag([1.0, 2.0, 3.0])
    assert_valid(A, decompose4(A))


@pytest.mark.parametrize("n", [2, 4, 6, 10, 16, 40])
def test_even_plan_invariants(n):
    A = random_hermitian(n, n)
    combo, plan = decompose4(A, return_plan=True)
    assert_valid(A, combo)
    assert combo.coefficients == [plan.a, -plan.b, plan.c, -plan.c]
    assert plan.a - plan.b == pytest.approx(plan.lam)
    assert plan.lam == pytest.approx(np.trace(A).real / (n // 2), abs=1e-9 * (1 + np.abs(A).max()))
    S = plan.witness.X.conj().T @ plan.witness.X
    s_norm = np.linalg.norm(S, 2)
    assert plan.a > s_norm and plan.b > s_norm
    assert plan.c >= np.linalg.norm(plan.T, 2) * (1 - 1e-12)
    assert all(1e-12 < s2 < 1 - 1e-12 for s2 in plan.s_squared)


@pytest.mark.parametrize("n", [3, 5, 7, 11, 21])
def test_odd_sizes(n):
    A = random_hermitian(n, 100 + n)
    combo, plan = decompose4(A, return_plan=True)
    assert_valid(A, combo)
    assert plan.mu is not None


def test_even_rejects_odd():
    with pytest.raises(ValidationError):
        decompose4_even(np.eye(3))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 14), st.integers(0, 10**6), st.floats(0.01, 100))
def test_negation_and_scale(n, seed, scale):
    A = random_hermitian(n, seed, scale)
    assert_valid(A, decompose4(A))
    assert_valid(-A, decompose4(A).negated())


def test_integral_examples():
    combo, plan = decompose5_integral_even(2 * np.eye(2), return_plan=True)
    assert combo.coefficients[0] == 0
    A = np.diag([1.0, 2.0, 3.0, 4.0])
    combo, plan = decompose5_integral_even(A, return_plan=True)
    assert combo.coefficients[0] == 2
    assert plan.lam == 4
    assert all(isinstance(c, int) for c in combo.coefficients)
    assert verify_combination(A, combo).residual_fro <= 1e-8


@pytest.mark.parametrize("seed", range(4))
def test_integral_random(seed):
    A = random_hermitian(6, seed)
    A = A + (7 - np.trace(A).real) / 6 * np.eye(6)
    combo = decompose5_integral_even(A)
    assert all(isinstance(c, int) for c in combo.coefficients)
    assert_valid(A, combo)


def test_integral_unsupported():
    with pytest.raises(UnsupportedInputError):
        decompose5_integral_even(np.eye(3))
    with pytest.raises(UnsupportedInputError):
        decompose5_integral_even(np.diag([0.5, 0.0]))


def test_decompose8_hermitian_input():
    B = random_hermitian(4, 0)
    combo = decompose8_complex(B)
    assert len(combo) == 8
    H2 = combo.coefficients[4:]
    tail = sum(c * P for c, P in zip(H2, combo.projections[4:]))
    assert np.linalg.norm(tail) <= 4 * max(abs(c) for c in H2) * 1e-12 * 10


def test_decompose8_imaginary_identity():
    B = 1j * np.eye(3)
    combo = decompose8_complex(B)
    head = sum(c * P for c, P in zip(combo.coefficients[:4], combo.projections[:4]))
    assert np.max(np.abs(head)) <= 1e-12
    assert verify_combination(B, combo).relative_residual <= 2e-8


def test_decompose8_random():
    rng = np.random.default_rng(0)
    B = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    assert verify_combination(B, decompose8_complex(B)).relative_residual <= 2e-8


def test_verify_identity_and_corruption():
    I = np.eye(3)
    report = verify_combination(I, ProjectionCombination([1.0], [I]))
    assert report.residual_max == 0 and report.idempotency_defects == [0.0]
    assert report.trace_defect == 0
    bad = random_projection(3, 1, 0) + 0.01 * np.eye(3)
    report = verify_combination(I, ProjectionCombination([1.0], [bad]))
    assert report.idempotency_defects[0] > 1e-9
