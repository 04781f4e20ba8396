"""Finite-dimensional associative algebras given by structure constants.

An algebra of dimension n stores a dense tensor ``M`` of shape (n, n, n) with
``e_i e_j = sum_k M[i, j, k] e_k`` (entries are field codes).  Elements are
coefficient vectors; the wrapper :class:`Element` adds operators.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .field import FieldSpec, Scalar, get_field
from .linalg import Subspace, left_kernel, rank, rref

MAX_TENSOR_DIM = 2 * 10**6


class AlgebraError(ValueError):
    pass


class FDAlgebra:
    """Associative unital algebra on a labelled basis."""

    def __init__(self, spec: FieldSpec, M, labels=None, one=None, presentation=None,
                 generators=None, name: str = ""):
        self.spec = spec
        self.F = get_field(spec)
        self.M = np.asarray(M, dtype=np.int64)
        n = self.M.shape[0]
        if self.M.shape != (n, n, n):
            raise AlgebraError("structure tensor must have shape (n, n, n)")
        self.dim = n
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(n)]
        if one is None:
            one = np.zeros(n, dtype=np.int64)
            if n:
                one[0] = 1
        self.one = np.asarray(one, dtype=np.int64)
        self.presentation = presentation
        self.generators = list(generators) if generators is not None else []
        self.name = name
        self._sparse = None

    def __repr__(self):
        return f"FDAlgebra({self.name or '?'}, dim={self.dim}, over {self.spec})"

    # basic access
    def basis_vec(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def element(self, v) -> "Element":
        return Element(self, np.asarray(v, dtype=np.int64))

    def basis(self, i: int) -> "Element":
        return Element(self, self.basis_vec(i))

    def unit(self) -> "Element":
        return Element(self, self.one.copy())

    def zero(self) -> "Element":
        return Element(self, np.zeros(self.dim, dtype=np.int64))

    def gen(self, name: str) -> "Element":
        if self.presentation is None:
            raise AlgebraError("algebra has no presentation")
        return self.basis(self.generators[self.presentation.gens.index(name)])

    def gens(self) -> list["Element"]:
        return [self.basis(g) for g in self.generators]

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    # products
    @property
    def sparse_table(self):
        """(n*n, n) sparse matrix of structure constants (prime field only)."""
        if self._sparse is None:
            n = self.dim
            self._sparse = sp.csr_matrix(self.M.reshape(n * n, n).astype(np.float64))
        return self._sparse

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        F, n = self.F, self.dim
        ia, ib = np.flatnonzero(a), np.flatnonzero(b)
        if ia.size == 0 or ib.size == 0:
            return np.zeros(n, dtype=np.int64)
        coef = F.mul(a[ia][:, None], b[ib][None, :])
        return F.matmul(coef.reshape(1, -1), self.M[np.ix_(ia, ib)].reshape(-1, n))[0]

    def mul_batch(self, A, B) -> np.ndarray:
        """Row-wise products A[m] * B[m]."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        n = self.dim
        if self.F.k == 1:
            out = np.empty((A.shape[0], n), dtype=np.int64)
            S = self.sparse_table
            step = max(1, 2_000_000 // max(1, n * n))
            for s in range(0, A.shape[0], step):
                outer = (A[s:s + step, :, None] * B[s:s + step, None, :]).reshape(-1, n * n)
                out[s:s + step] = np.rint(S.T.dot(outer.T.astype(np.float64)).T).astype(np.int64) % self.F.p
            return out
        return np.stack([self.mul(a, b) for a, b in zip(A, B)])

    def right_mult_matrix(self, b) -> np.ndarray:
        """R with v R = v * b."""
        n = self.dim
        return self.F.matmul(np.asarray(b)[None, :], self.M.transpose(1, 0, 2).reshape(n, n * n)).reshape(n, n)

    def left_mult_matrix(self, a) -> np.ndarray:
        """L with v L = a * v."""
        n = self.dim
        return self.F.matmul(np.asarray(a)[None, :], self.M.reshape(n, n * n)).reshape(n, n)

    def power(self, a, e: int) -> np.ndarray:
        if e < 0:
            raise AlgebraError("negative power")
        result = self.one.copy()
        base = np.asarray(a, dtype=np.int64)
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def commutator(self, a, b) -> np.ndarray:
        return self.F.sub(self.mul(a, b), self.mul(b, a))

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.M, self.M.transpose(1, 0, 2)))

    # serialisation
    def table_triplets(self):
        i, j, k = np.nonzero(self.M)
        return [(int(a), int(b), int(c), int(self.M[a, b, c])) for a, b, c in zip(i, j, k)]

    def to_json(self) -> dict:
        coeff = (lambda c: c) if self.spec.k == 1 else (lambda c: Scalar(self.spec, c).coeffs)
        table = [[i, j, k, coeff(c)] for i, j, k, c in self.table_triplets()]
        body = {"p": self.spec.p, "k": self.spec.k, "modulus": list(self.spec.modulus),
                "dim": self.dim, "basis": self.labels, "table": table}
        body["hash"] = content_hash(body)
        return body

    @classmethod
    def from_json(cls, d: dict) -> "FDAlgebra":
        spec = FieldSpec(int(d["p"]), int(d["k"]), tuple(d.get("modulus", (0, 1))))
        n = int(d["dim"])
        M = np.zeros((n, n, n), dtype=np.int64)
        for i, j, k, c in d["table"]:
            M[i, j, k] = c if isinstance(c, int) else Scalar.from_coeffs(spec, c).code
        return cls(spec, M, d["basis"])

    def content_hash(self) -> str:
        return self.to_json()["hash"]


def content_hash(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


class Element:
    """Immutable-ish wrapper of a coefficient vector (or matrix, for tensors)."""

    __slots__ = ("alg", "vec")

    def __init__(self, alg, vec):
        self.alg = alg
        self.vec = np.asarray(vec, dtype=np.int64)

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.alg is not self.alg:
                raise AlgebraError("elements of different algebras")
            return other
        if isinstance(other, (int, np.integer, Scalar)):
            return Element(self.alg, self.alg.F.mul(self.alg.unit().vec, self.alg.F.element(other)))
        raise TypeError(f"cannot combine Element with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        return Element(self.alg, self.alg.F.add(self.vec, o.vec))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Element(self.alg, self.alg.F.sub(self.vec, o.vec))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Element(self.alg, self.alg.F.neg(self.vec))

    def __mul__(self, other):
        if isinstance(other, (int, np.integer, Scalar)):
            return Element(self.alg, self.alg.F.mul(self.vec, self.alg.F.element(other)))
        o = self._coerce(other)
        return Element(self.alg, self.alg.mul(self.vec, o.vec))

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer, Scalar)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        return Element(self.alg, self.alg.power(self.vec, int(e)))

    def bracket(self, other) -> "Element":
        return self * other - other * self

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, AlgebraError):
            return NotImplemented
        return bool(np.array_equal(self.vec, o.vec))

    def __hash__(self):
        return hash(self.vec.tobytes())

    def is_zero(self) -> bool:
        return not np.any(self.vec)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return self.alg.format(self.vec) if hasattr(self.alg, "format") else format_vector(self.alg, self.vec)


def format_vector(alg, vec) -> str:
    terms = []
    for i in np.flatnonzero(vec):
        c = Scalar(alg.spec, int(vec[i]))
        lab = alg.labels[i]
        if lab == "1":
            terms.append(repr(c))
        elif int(vec[i]) == 1:
            terms.append(lab)
        else:
            cs = repr(c) if alg.spec.k == 1 else f"({c!r})"
            terms.append(f"{cs}*{lab}")
    return " + ".join(terms) or "0"


FDAlgebra.format = format_vector


# -- tensor products --------------------------------------------------------------------

class TensorProductAlgebra:
    """A (x) B without a materialised table; elements are (dim A, dim B) matrices.

    The product of X and Y is sum_{k,l} Y[k,l] R^A_k^T X R^B_l with R_k the right
    multiplication by e_k, evaluated directly when Y is sparse and by three
    reshaped matrix products otherwise.
    """

    def __init__(self, A: FDAlgebra, B: FDAlgebra, max_dim: int = MAX_TENSOR_DIM):
        if A.spec != B.spec:
            raise AlgebraError("tensor factors over different fields")
        if A.dim * B.dim > max_dim:
            raise AlgebraError(f"tensor dimension {A.dim * B.dim} exceeds bound {max_dim}")
        self.A, self.B = A, B
        self.spec = A.spec
        self.F = A.F
        self.dim = A.dim * B.dim
        self.shape = (A.dim, B.dim)

    def __repr__(self):
        return f"TensorProductAlgebra({self.A.name or '?'} (x) {self.B.name or '?'})"

    def unit(self) -> Element:
        return Element(self, self.pure(self.A.one, self.B.one))

    def one_matrix(self) -> np.ndarray:
        return self.pure(self.A.one, self.B.one)

    def zero(self) -> Element:
        return Element(self, np.zeros(self.shape, dtype=np.int64))

    def pure(self, a, b) -> np.ndarray:
        return self.F.mul(np.asarray(a)[:, None], np.asarray(b)[None, :])

    def tensor(self, a, b) -> Element:
        a = a.vec if isinstance(a, Element) else a
        b = b.vec if isinstance(b, Element) else b
        return Element(self, self.pure(a, b))

    def left(self, a) -> Element:
        return self.tensor(a, self.B.one)

    def right(self, b) -> Element:
        return self.tensor(self.A.one, b)

    def mul(self, X, Y) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        Y = np.asarray(Y, dtype=np.int64)
        F = self.F
        nA, nB = self.shape
        MA, MB = self.A.M, self.B.M
        ks, ls = np.nonzero(Y)
        if ks.size == 0 or not X.any():
            return np.zeros(self.shape, dtype=np.int64)
        if ks.size < 1.5 * max(nA, nB):
            out = np.zeros(self.shape, dtype=np.int64)
            for k, l in zip(ks, ls):
                T = F.matmul(F.matmul(MA[:, k, :].T, X), MB[:, l, :])
                out = F.add(out, F.mul(T, int(Y[k, l])))
            return out
        # Z[j, k, a] = sum_i X[i, j] MA[i, k, a]
        Z = F.matmul(X.T, MA.reshape(nA, nA * nA)).reshape(nB, nA, nA)
        # U[j, a, l] = sum_k Z[j, k, a] Y[k, l]
        U = F.matmul(Z.transpose(0, 2, 1).reshape(nB * nA, nA), Y).reshape(nB, nA, nB)
        # out[a, b] = sum_{j, l} U[j, a, l] MB[j, l, b]
        return F.matmul(U.transpose(1, 0, 2).reshape(nA, nB * nB), MB.reshape(nB * nB, nB))

    def power(self, X, e: int) -> np.ndarray:
        result = self.one_matrix()
        base = np.asarray(X, dtype=np.int64)
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def format(self, X) -> str:
        terms = []
        for i, j in zip(*np.nonzero(X)):
            c = Scalar(self.spec, int(X[i, j]))
            t = f"{self.A.labels[i]}(x){self.B.labels[j]}"
            terms.append(t if X[i, j] == 1 else f"{c!r}*{t}")
        return " + ".join(terms) or "0"

    def to_fdalgebra(self) -> FDAlgebra:
        """Materialise the structure tensor (small factors only)."""
        nA, nB = self.shape
        n = nA * nB
        if n > 729:
            raise AlgebraError("refusing to materialise a tensor table of this size")
        M = _kron_table(self.F, self.A.M, self.B.M)
        labels = [f"{a}(x){b}" for a in self.A.labels for b in self.B.labels]
        return FDAlgebra(self.spec, M, labels, one=self.one_matrix().reshape(-1))


def _kron_table(F, MA, MB) -> np.ndarray:
    nA, nB = MA.shape[0], MB.shape[0]
    # (i,j)(k,l) -> sum MA[i,k,a] MB[j,l,b] (a,b)
    T = F.mul(MA[:, None, :, None, :, None], MB[None, :, None, :, None, :])
    return T.reshape(nA * nB, nA * nB, nA * nB)


def tensor_product(A: FDAlgebra, B: FDAlgebra, max_dim: int = MAX_TENSOR_DIM) -> TensorProductAlgebra:
    return TensorProductAlgebra(A, B, max_dim)


# -- structural computations --------------------------------------------------------------

def center(A: FDAlgebra, generators=None) -> Subspace:
    """Elements commuting with the given generators, verified against the whole basis."""
    F, n = A.F, A.dim
    gens = [g.vec if isinstance(g, Element) else np.asarray(g) for g in
            (generators if generators is not None else A.gens() or [A.basis_vec(i) for i in range(n)])]
    blocks = [F.sub(A.right_mult_matrix(g), A.left_mult_matrix(g)) for g in gens]
    K = left_kernel(F, np.concatenate(blocks, axis=1))
    Z = Subspace(F, n, K, reduced=True)
    if Z.dim and not commutes_with_all(A, Z.rows):
        raise AlgebraError("supplied generators do not generate the algebra: "
                           "an element commuting with them is not central")
    return Z


def commutes_with_all(A: FDAlgebra, C) -> bool:
    F, n = A.F, A.dim
    right = F.matmul(C, A.M.reshape(n, n * n))  # c e_b
    left = F.matmul(C, A.M.transpose(1, 0, 2).reshape(n, n * n))  # e_b c
    return bool(np.array_equal(right, left))


def products(A: FDAlgebra, U, V) -> np.ndarray:
    """All products u_r v_s (rows), shape (len(U) * len(V), n)."""
    F, n = A.F, A.dim
    U = np.asarray(U, dtype=np.int64).reshape(-1, n)
    V = np.asarray(V, dtype=np.int64).reshape(-1, n)
    if len(U) == 0 or len(V) == 0:
        return np.zeros((0, n), dtype=np.int64)
    T = F.matmul(U, A.M.reshape(n, n * n)).reshape(len(U), n, n)  # u e_j
    out = F.matmul(T.transpose(0, 2, 1).reshape(len(U) * n, n), V.T)  # (r, k, s)
    return out.reshape(len(U), n, len(V)).transpose(0, 2, 1).reshape(-1, n)


def product_space(A: FDAlgebra, U: Subspace, V: Subspace) -> Subspace:
    return Subspace(A.F, A.dim, products(A, U.rows, V.rows))


def ideal_closure(A: FDAlgebra, gens) -> Subspace:
    """Two-sided ideal generated by the given vectors."""
    F, n = A.F, A.dim
    G = np.asarray([g.vec if isinstance(g, Element) else g for g in gens], dtype=np.int64).reshape(-1, n)
    I = Subspace(F, n, G)
    basis = np.eye(n, dtype=np.int64)
    frontier = I.rows
    while len(frontier):
        new = np.concatenate([products(A, frontier, basis), products(A, basis, frontier)])
        red = I.reduce(new)
        red = red[np.any(red, axis=1)]
        if len(red) == 0:
            break
        fresh, _ = rref(F, red)
        I = Subspace(F, n, np.concatenate([I.rows, fresh]))
        frontier = fresh
    return I


def is_ideal(A: FDAlgebra, I: Subspace) -> bool:
    basis = np.eye(A.dim, dtype=np.int64)
    return I.contains(products(A, I.rows, basis)) and I.contains(products(A, basis, I.rows))


@dataclass
class NilpotencyResult:
    ideal: Subspace
    nilpotent: bool
    index: int | None
    power_dims: list[int]


def ideal_nilpotency(A: FDAlgebra, gens, max_steps: int | None = None) -> NilpotencyResult:
    """Ideal generated by ``gens`` and whether its powers reach zero."""
    I = ideal_closure(A, gens)
    dims = [I.dim]
    P = I
    k = 1
    while P.dim:
        Q = product_space(A, P, I)
        k += 1
        if Q.dim == P.dim:
            return NilpotencyResult(I, False, None, dims)
        dims.append(Q.dim)
        P = Q
        if max_steps and k > max_steps:  # pragma: no cover
            break
    return NilpotencyResult(I, True, k if I.dim else 1, dims)


def quotient_algebra(A: FDAlgebra, I: Subspace, check: bool = True) -> FDAlgebra:
    """A / I on the complement spanned by the non-pivot basis vectors."""
    if check and not is_ideal(A, I):
        raise AlgebraError("subspace is not a two-sided ideal")
    n = A.dim
    free = [c for c in range(n) if c not in set(I.pivots)]
    m = len(free)
    M = A.M[np.ix_(free, free)].reshape(m * m, n)
    Mq = I.reduce(M)[:, free].reshape(m, m, m) if m else np.zeros((0, 0, 0), dtype=np.int64)
    one = I.reduce(A.one)[free]
    labels = [A.labels[c] for c in free]
    return FDAlgebra(A.spec, Mq, labels, one=one, name=f"{A.name}/I" if A.name else "")


def frobenius_matrix(A: FDAlgebra) -> np.ndarray:
    return np.stack([A.power(A.basis_vec(i), A.spec.p) for i in range(A.dim)]) if A.dim else \
        np.zeros((0, 0), dtype=np.int64)


def is_split_commutative_semisimple(A: FDAlgebra) -> bool:
    """True iff A is isomorphic to a product of copies of the prime field."""
    if not A.spec.is_prime_field:
        raise AlgebraError("split semisimplicity test is only valid over the prime field")
    if A.dim == 0:
        return True
    if not A.is_commutative():
        return False
    Fr = frobenius_matrix(A)
    # a^p = a on a basis, hence on every element since Frobenius is additive
    if not np.array_equal(Fr, np.eye(A.dim, dtype=np.int64)):
        return False
    # reducedness: Frobenius injective means no nonzero element with a^p = 0
    return rank(A.F, Fr) == A.dim


def scalar_extension(A: FDAlgebra, spec: FieldSpec) -> FDAlgebra:
    """Same structure constants reinterpreted over an extension of the prime field."""
    if spec == A.spec:
        return A
    if not A.spec.is_prime_field or spec.p != A.spec.p:
        raise AlgebraError(f"{spec} does not extend {A.spec} canonically")
    pres = A.presentation.scalar_extend(spec) if A.presentation is not None else None
    return FDAlgebra(spec, A.M.copy(), A.labels, one=A.one.copy(), presentation=pres,
                     generators=A.generators, name=A.name)


def subalgebra_closed(A: FDAlgebra, S: Subspace) -> bool:
    return S.contains(products(A, S.rows, S.rows))
