"""Exact linear algebra over a finite field, on numpy arrays of field codes.

Row-vector convention throughout: a matrix ``A`` of shape (m, n) is the
linear map ``v -> v A`` from F^m to F^n, and subspaces are spanned by rows.
"""

from __future__ import annotations

import numpy as np

from .field import Field

_PROJECTION_SEED = 20240917


def _as_codes(A) -> np.ndarray:
    return np.array(A, dtype=np.int64, copy=True)


def rref(F: Field, A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    A = _as_codes(A)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    m, n = A.shape
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r, c:] = F.mul(A[r, c:], F.s_inv(lead))
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            if F.k == 1:
                A[rows, c:] = (A[rows, c:] - col[rows, None] * A[r, c:][None, :]) % F.p
            else:
                A[rows, c:] = F.sub(A[rows, c:], F.mul(col[rows, None], A[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(F: Field, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    # rank of the smaller orientation is cheaper
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(rref(F, A)[1])


def left_kernel_dense(F: Field, A) -> np.ndarray:
    """Basis (rows, in RREF) of {v : v A = 0}.

    Row reduces A^T with its columns reversed: each free column then gives a
    kernel vector whose leading entry is that column, so the basis comes out
    already reduced.
    """
    A = np.asarray(A, dtype=np.int64)
    m = A.shape[0]
    if A.shape[1] == 0:
        return np.eye(m, dtype=np.int64)
    R, piv = rref(F, A.T[:, ::-1])
    free = [c for c in range(m) if c not in set(piv)]
    if not free:
        return np.zeros((0, m), dtype=np.int64)
    V = np.zeros((len(free), m), dtype=np.int64)
    V[np.arange(len(free)), free] = 1
    if piv:
        V[:, piv] = F.neg(R[:, free].T)
    return V[::-1, ::-1].copy()


def left_kernel(F: Field, A, seed: int = _PROJECTION_SEED) -> np.ndarray:
    """Left kernel, using an exact-verified random projection for wide maps.

    For A of shape (m, n) with n much larger than m, the kernel of ``A R`` for a
    random (n, m + 8) matrix R contains ker A, with equality unless R is
    unlucky.  The candidate kernel is checked against A itself and the
    projection is redrawn on failure, so the result is always exact.
    """
    if hasattr(A, "tocsr"):
        m, n = A.shape
    else:
        A = np.asarray(A, dtype=np.int64)
        m, n = A.shape
    if n <= 2 * m + 16:
        dense = A.toarray() if hasattr(A, "toarray") else A
        return left_kernel_dense(F, dense % F.q if F.k == 1 else dense)
    rng = np.random.default_rng(seed)
    for _ in range(8):
        R = F.random(rng, (n, m + 8))
        K = left_kernel_dense(F, F.matmul(A, R))
        if K.shape[0] == 0 or not np.any(F.matmul(K, A)):
            return K
    dense = A.toarray() if hasattr(A, "toarray") else A
    return left_kernel_dense(F, dense)  # pragma: no cover


def solve_left(F: Field, A, b) -> np.ndarray | None:
    """One solution x of x A = b (b a vector), or None if inconsistent."""
    X = solve_left_many(F, A, np.asarray(b)[None, :])
    return None if X is None else X[0]


def solve_left_many(F: Field, A, B) -> np.ndarray | None:
    """Solve X A = B row by row; None if any row is inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    m = A.shape[0]
    aug = np.concatenate([A.T, B.T], axis=1)
    R, piv = rref(F, aug)
    if piv and piv[-1] >= m:
        return None
    X = np.zeros((B.shape[0], m), dtype=np.int64)
    for i, c in enumerate(piv):
        X[:, c] = R[i, m:]
    return X


def invert(F: Field, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R, piv = rref(F, np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1))
    if len(piv) < n or piv[n - 1] != n - 1:
        raise np.linalg.LinAlgError("matrix is singular")
    return R[:, n:]


def matrix_power(F: Field, A, e: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    result = np.eye(A.shape[0], dtype=np.int64)
    while e:
        if e & 1:
            result = F.matmul(result, A)
        A = F.matmul(A, A)
        e >>= 1
    return result


class Subspace:
    """Subspace of F^n stored as RREF rows."""

    def __init__(self, F: Field, n: int, rows=None, *, reduced: bool = False):
        self.F = F
        self.n = n
        if rows is None or len(rows) == 0:
            self.rows = np.zeros((0, n), dtype=np.int64)
            self.pivots: list[int] = []
        elif reduced:
            self.rows = np.asarray(rows, dtype=np.int64)
            self.pivots = [int(np.flatnonzero(r)[0]) for r in self.rows]
        else:
            self.rows, self.pivots = rref(F, np.asarray(rows, dtype=np.int64).reshape(-1, n))

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, np.eye(n, dtype=np.int64), reduced=True)

    @property
    def dim(self) -> int:
        return self.rows.shape[0]

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.n})"

    def reduce(self, V) -> np.ndarray:
        """Normal form of each row of V modulo the subspace."""
        V = np.asarray(V, dtype=np.int64)
        if self.dim == 0:
            return V.copy()
        single = V.ndim == 1
        V2 = V[None, :] if single else V
        out = self.F.sub(V2, self.F.matmul(V2[:, self.pivots], self.rows))
        return out[0] if single else out

    def contains(self, V) -> bool:
        """True iff every row of V (or the vector V) lies in the subspace."""
        return not np.any(self.reduce(V))

    def coordinates(self, V) -> np.ndarray:
        """Coordinates of rows of V in the RREF basis (assumes membership)."""
        V = np.asarray(V, dtype=np.int64)
        return V[..., self.pivots]

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.F, self.n, np.concatenate([self.rows, other.rows]))

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and self.dim == other.dim \
            and np.array_equal(self.rows, other.rows)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self.rows)

    def annihilator(self) -> "Subspace":
        """{c : c . v = 0 for all v in the subspace}."""
        if self.dim == 0:
            return Subspace.full(self.F, self.n)
        return Subspace(self.F, self.n, left_kernel_dense(self.F, self.rows.T), reduced=True)

    def intersect(self, other: "Subspace") -> "Subspace":
        return (self.annihilator() + other.annihilator()).annihilator()

    def complement_basis(self) -> np.ndarray:
        """Unit vectors on the non-pivot coordinates (a complement)."""
        free = [c for c in range(self.n) if c not in set(self.pivots)]
        E = np.zeros((len(free), self.n), dtype=np.int64)
        E[np.arange(len(free)), free] = 1
        return E

    def quotient_dim(self, sub: "Subspace") -> int:
        return self.dim - sub.dim

    def image(self, A) -> "Subspace":
        A = np.asarray(A, dtype=np.int64)
        return Subspace(self.F, A.shape[1], self.F.matmul(self.rows, A) if self.dim else None)


def preimage(F: Field, A, W: Subspace) -> Subspace:
    """{v : v A in W} for A of shape (m, n)."""
    A = np.asarray(A, dtype=np.int64)
    C = W.annihilator()
    if C.dim == 0:
        return Subspace.full(F, A.shape[0])
    return Subspace(F, A.shape[0], left_kernel(F, F.matmul(A, C.rows.T)), reduced=True)


def relative_complement(F: Field, big: Subspace, small: Subspace) -> np.ndarray:
    """Rows spanning a complement of ``small`` inside ``big``.

    The rows of ``big`` are reduced modulo ``small`` and echelonised, giving a
    deterministic basis of vectors in ``big`` whose classes span big/small.
    """
    if big.dim == 0:
        return np.zeros((0, big.n), dtype=np.int64)
    red = small.reduce(big.rows)
    R, _ = rref(F, red)
    return R
