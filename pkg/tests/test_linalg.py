import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hopfp3.field import build_extension, get_field, prime_field
from hopfp3.linalg import (Subspace, invert, left_kernel, left_kernel_dense, matrix_power, preimage, rank,
                           relative_complement, rref, solve_left)

SPECS = [prime_field(2), prime_field(3), prime_field(5), build_extension(2, 2)]


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    spec = draw(st.sampled_from(SPECS))
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    vals = draw(st.lists(st.integers(0, spec.q - 1), min_size=m * n, max_size=m * n))
    return get_field(spec), np.array(vals, dtype=np.int64).reshape(m, n)


def brute_kernel_size(F, A):
    """Count v with v A = 0 by enumerating every vector."""
    m = A.shape[0]
    count = 0
    for v in itertools.product(range(F.q), repeat=m):
        if not np.any(F.matmul(np.array(v, dtype=np.int64)[None, :], A)):
            count += 1
    return count


@given(matrices())
def test_rref_is_reduced_and_same_row_space(data):
    F, A = data
    R, piv = rref(F, A)
    assert len(piv) == R.shape[0]
    for i, c in enumerate(piv):
        assert R[i, c] == 1
        assert np.count_nonzero(R[:, c]) == 1
        assert not np.any(R[i, :c])
    assert piv == sorted(piv)
    # same row space: each side reduces to zero modulo the other
    assert Subspace(F, A.shape[1], R, reduced=True).contains(A)
    assert Subspace(F, A.shape[1], A).contains(R) if R.shape[0] else not np.any(A)


@given(matrices())
def test_kernel_matches_enumeration(data):
    F, A = data
    K = left_kernel_dense(F, A)
    assert not np.any(F.matmul(K, A)) if K.shape[0] else True
    assert F.q ** K.shape[0] == brute_kernel_size(F, A)
    assert K.shape[0] + rank(F, A) == A.shape[0]
    if K.shape[0]:
        R, _ = rref(F, K)
        assert np.array_equal(R, K)


def test_projected_kernel_equals_dense():
    F = get_field(prime_field(3))
    rng = np.random.default_rng(1)
    B = F.random(rng, (6, 200))
    A = np.concatenate([B, F.add(B[:2], B[2:4])], axis=0)  # two dependent rows
    K1 = left_kernel(F, A)
    K2 = left_kernel_dense(F, A)
    assert K1.shape[0] == 2
    assert np.array_equal(K1, K2)


@given(matrices(), st.integers(0, 10**6))
def test_solve_left(data, seed):
    F, A = data
    rng = np.random.default_rng(seed)
    x = F.random(rng, (A.shape[0],))
    b = F.matmul(x[None, :], A)[0]
    sol = solve_left(F, A, b)
    assert sol is not None
    assert np.array_equal(F.matmul(sol[None, :], A)[0], b)


def test_solve_left_inconsistent():
    F = get_field(prime_field(3))
    assert solve_left(F, np.array([[1, 0]]), np.array([0, 1])) is None


@given(matrices(max_rows=4, max_cols=4))
def test_invert_and_power(data):
    F, A = data
    n = min(A.shape)
    A = A[:n, :n]
    if rank(F, A) < n:
        with pytest.raises(np.linalg.LinAlgError):
            invert(F, A)
        return
    Ai = invert(F, A)
    assert np.array_equal(F.matmul(A, Ai), np.eye(n, dtype=np.int64))
    P = np.eye(n, dtype=np.int64)
    for e in range(5):
        assert np.array_equal(matrix_power(F, A, e), P)
        P = F.matmul(P, A)


@given(matrices(max_rows=3, max_cols=4), matrices(max_rows=3, max_cols=4))
def test_subspace_lattice(d1, d2):
    F, A = d1
    _, B = d2
    n = A.shape[1]
    B = B % F.q
    if B.shape[1] != n:
        B = np.resize(B, (B.shape[0], n))
    U, V = Subspace(F, n, A), Subspace(F, n, B)
    S, I = U + V, U.intersect(V)
    assert U <= S and V <= S
    assert I <= U and I <= V
    assert S.dim + I.dim == U.dim + V.dim
    ann = U.annihilator()
    assert ann.dim == n - U.dim
    if U.dim and ann.dim:
        assert not np.any(F.matmul(U.rows, ann.rows.T))
    C = relative_complement(F, S, U)
    assert C.shape[0] == S.quotient_dim(U)
    assert (U + Subspace(F, n, C)) == S if C.shape[0] else U == S


@given(matrices(max_rows=4, max_cols=3))
def test_preimage_and_image(data):
    F, A = data
    m, n = A.shape
    W = Subspace(F, n, A[:1])
    P = preimage(F, A, W)
    # every vector of the preimage maps into W, and the count matches enumeration
    if P.dim:
        assert W.contains(F.matmul(P.rows, A))
    count = sum(1 for v in itertools.product(range(F.q), repeat=m)
                if W.contains(F.matmul(np.array(v, dtype=np.int64)[None, :], A)))
    assert F.q ** P.dim == count
    assert Subspace.full(F, m).image(A) == Subspace(F, n, A)
