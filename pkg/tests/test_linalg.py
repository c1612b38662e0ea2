import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import charpoly_eigenvalues, power_norm
from projdecomp.exceptions import SingularityError, ValidationError
from projdecomp.linalg import (
    as_hermitian,
    hermitian_eigen,
    interlace_violation,
    is_orthoprojection,
    operator_norm,
    random_hermitian,
    random_projection,
    random_unitary,
    spectral_norm,
    svd_paired,
    weyl_violation,
)


def hermitian_from(parts):
    re, im = parts
    G = re + 1j * im
    return 0.5 * (G + G.conj().T)


def square_pairs(max_n=8):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(
            *[arrays(float, (n, n), elements=st.floats(-10, 10, width=64)) for _ in range(2)]
        )
    )


def test_identity_eigen():
    eig = hermitian_eigen(np.eye(3))
    assert np.array_equal(eig.eigenvalues, [1.0, 1.0, 1.0])
    V = eig.vectors
    assert np.allclose(V @ V.conj().T, np.eye(3), atol=1e-14)


def test_diagonal_sorted():
    eig = hermitian_eigen(np.diag([3.0, 1.0, 2.0]))
    assert np.array_equal(eig.eigenvalues, [1.0, 2.0, 3.0])


@pytest.mark.parametrize("seed", range(5))
def test_eigenvalues_match_charpoly(seed):
    H = random_hermitian(5, seed)
    got = hermitian_eigen(H).eigenvalues
    assert np.max(np.abs(got - charpoly_eigenvalues(H))) <= 1e-8


def test_eigen_large_residual():
    H = random_hermitian(76, 3)
    eig = hermitian_eigen(H)
    V, d = eig.vectors, eig.eigenvalues
    assert np.linalg.norm(H @ V - V * d) <= 1e-11 * np.linalg.norm(H)
    assert np.linalg.norm(V.conj().T @ V - np.eye(76)) <= 1e-12


def test_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        as_hermitian(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValidationError):
        hermitian_eigen(np.ones((2, 3)))
    with pytest.raises(ValidationError):
        as_hermitian(np.array([[np.nan]]))


@settings(max_examples=60, deadline=None)
@given(square_pairs())
def test_eigen_reconstructs(parts):
    H = hermitian_from(parts)
    eig = hermitian_eigen(H)
    V, d = eig.vectors, eig.eigenvalues
    scale = 1.0 + np.linalg.norm(H)
    assert np.all(np.diff(d) >= 0)
    assert np.linalg.norm(V.conj().T @ V - np.eye(len(d))) <= 1e-12 * len(d)
    assert np.linalg.norm(V @ np.diag(d) @ V.conj().T - H) <= 1e-12 * scale * len(d)


def test_svd_trivial():
    s = svd_paired(2 * np.eye(2))
    assert np.allclose(s.singular_values, [2, 2])
    assert np.allclose(s.left, s.right)
    assert np.allclose(svd_paired(np.diag([3.0, 1.0])).singular_values, [3, 1])


@pytest.mark.parametrize("seed", range(4))
def test_svd_reconstruction(seed):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    s = svd_paired(X)
    nrm = np.linalg.norm(X, 2)
    U, V, sig = s.left, s.right, s.singular_values
    assert np.linalg.norm(X - U @ np.diag(sig) @ V.conj().T) <= 1e-9 * nrm
    assert np.linalg.norm(X.conj().T @ X - V @ np.diag(sig**2) @ V.conj().T) <= 1e-9 * nrm**2
    assert np.all(np.diff(sig) <= 0)


def test_svd_singular():
    with pytest.raises(SingularityError):
        svd_paired(np.diag([1.0, 0.0]))
    s = svd_paired(np.diag([1.0, 0.0]), invertible=False)
    assert np.allclose(s.left.conj().T @ s.left, np.eye(2))


def test_norms():
    assert operator_norm(np.zeros((3, 3))) == 0
    assert operator_norm(np.diag([-3.0, 2.0])) == pytest.approx(3.0, abs=1e-14)
    for seed in range(3):
        H = random_hermitian(7, seed)
        assert abs(operator_norm(H) - power_norm(H)) <= 1e-8
        X = H + 1j * random_hermitian(7, seed + 10) @ H
        assert abs(spectral_norm(X) - power_norm(X)) <= 1e-8 * power_norm(X)


def test_is_orthoprojection_examples():
    assert is_orthoprojection(np.eye(3))[0]
    assert is_orthoprojection(0.5 * np.ones((2, 2)))[0]
    ok, defects = is_orthoprojection(np.diag([1.0, 0.5]))
    assert not ok
    assert defects.idempotency == pytest.approx(0.25)


def test_random_projection_extremes():
    assert np.array_equal(random_projection(4, 0, 1), np.zeros((4, 4)))
    assert np.allclose(random_projection(4, 4, 1), np.eye(4), atol=1e-14)
    assert is_orthoprojection(random_projection(5, 2, 1), 1e-10)[0]
    with pytest.raises(ValueError):
        random_projection(3, 4, 0)


def test_random_unitary():
    U = random_unitary(6, 0)
    assert np.linalg.norm(U.conj().T @ U - np.eye(6)) <= 1e-12


def test_weyl_chain_detects_violation():
    A = np.diag([0.0, 1.0, 2.0, 3.0])
    # rank-2 B, but claimed k = 1: chain must fail
    B = np.diag([5.0, 5.0, 0.0, 0.0])
    assert weyl_violation(A, B, 2) <= 1e-12
    assert weyl_violation(A, B, 1) > 0


def test_interlace_rank_one():
    K = np.diag([1.0, 2.0, 3.0])
    v = np.ones((3, 1)) / np.sqrt(3)
    P = v @ v.T
    assert interlace_violation(K, P, 0.7) <= 1e-12
    assert interlace_violation(K, P, -0.7) <= 1e-12
