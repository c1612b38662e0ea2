import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import zero_trace_hermitian
from projdecomp.exceptions import PreconditionError
from projdecomp.linalg import eigvalsh, operator_norm
from projdecomp.selfcomm import shifted_witness, witness, zero_diag_reduce


def test_reduce_zero_matrix():
    assert np.array_equal(zero_diag_reduce(np.zeros((3, 3))), np.eye(3))


def test_reduce_two_by_two():
    U = zero_diag_reduce(np.diag([1.0, -1.0]))
    B0 = U.T @ np.diag([1.0, -1.0]) @ U
    assert np.allclose(np.abs(B0), [[0, 1], [1, 0]], atol=1e-15)
    assert np.allclose(np.abs(U), np.full((2, 2), np.sqrt(0.5)))


@pytest.mark.parametrize("seed", range(5))
def test_reduce_random(seed):
    B = zero_trace_hermitian(6, seed)
    U = zero_diag_reduce(B)
    assert np.allclose(U.T @ U, np.eye(6), atol=1e-14)
    assert np.max(np.abs(np.diag(U.T @ B @ U))) <= 1e-11 * operator_norm(B)


def test_witness_zero():
    w = witness(np.zeros((4, 4)))
    assert np.array_equal(w.X, np.diag([1.0, 2.0, 3.0, 4.0]).astype(complex))


def test_witness_exact_example():
    B = np.array([[0.0, 1.0], [1.0, 0.0]])
    w = witness(B)
    assert np.array_equal(w.pdiag, [1.0, 2.0])
    assert np.array_equal(w.Q, [[0, 0.5j], [-0.5j, 0]])
    assert np.array_equal(w.X, [[1, -0.5], [0.5, 2]])
    assert np.array_equal(w.commutator(), B)


@pytest.mark.parametrize("seed", range(4))
def test_witness_random(seed):
    B = zero_trace_hermitian(8, seed)
    w = witness(B)
    assert np.linalg.norm(w.commutator() - B, 2) <= 1e-10 * (1 + operator_norm(B))


def test_nonzero_trace_rejected():
    with pytest.raises(PreconditionError):
        witness(np.diag([1.0, 0.0]))


def test_shifted_witness_levels():
    w = shifted_witness(np.zeros((3, 3)), 1.0)
    assert np.allclose(w.X, np.diag([1.0, 2.0, 3.0]) + w.t_shift * np.eye(3))
    assert eigvalsh(w.X.conj().T @ w.X)[0] > 1
    w = shifted_witness(np.array([[0.0, 1.0], [1.0, 0.0]]), 2.0)
    assert eigvalsh(w.X.conj().T @ w.X)[0] > 2
    assert np.allclose(w.commutator(), [[0, 1], [1, 0]], atol=1e-12)
    with pytest.raises(PreconditionError):
        shifted_witness(np.zeros((2, 2)), -1.0)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10**6), st.floats(0, 50))
def test_shifted_witness_property(n, seed, level):
    B = zero_trace_hermitian(n, seed)
    w = shifted_witness(B, level)
    # the shift cancels in the commutator, up to rounding of order t^2
    assert np.linalg.norm(w.commutator() - B, 2) <= 1e-12 * n * (1 + w.t_shift) ** 2
    assert eigvalsh(w.X.conj().T @ w.X)[0] > level
