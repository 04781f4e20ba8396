"""Coalgebra and Hopf structure on top of :class:`FDAlgebra`.

The coproduct is a tensor ``D`` of shape (n, n, n) with
``Delta(e_h) = sum_{i,j} D[h, i, j] e_i (x) e_j``; the counit is a vector and
the antipode a matrix whose row i is S(e_i).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .algebra import (AlgebraError, Element, FDAlgebra, TensorProductAlgebra, content_hash,
                      ideal_closure, ideal_nilpotency, is_split_commutative_semisimple, products,
                      quotient_algebra, scalar_extension)
from .field import FieldSpec, Scalar, get_field
from .linalg import Subspace, left_kernel, rank, relative_complement, rref

# antipode connectivity is certified by the coradical filtration up to this dimension
FILTRATION_CHECK_DIM = 64
H2_MAX_DIM = 64


class HopfError(ValueError):
    pass


def omega_coefficients(p: int) -> list[int]:
    """(p-1)!/(i!(p-i)!) mod p for i = 1..p-1, i.e. binom(p, i)/p."""
    return [(math.comb(p, i) // p) % p for i in range(1, p)]


class HopfAlgebra:
    def __init__(self, alg: FDAlgebra, D, counit, antipode=None, name: str = ""):
        self.alg = alg
        self.D = np.asarray(D, dtype=np.int64)
        self.counit = np.asarray(counit, dtype=np.int64)
        self.S = None if antipode is None else np.asarray(antipode, dtype=np.int64)
        self.name = name or alg.name
        self.T = TensorProductAlgebra(alg, alg)
        self.meta: dict = {}
        self._filtration = None

    def __repr__(self):
        return f"HopfAlgebra({self.name or '?'}, dim={self.dim}, over {self.spec})"

    @property
    def F(self):
        return self.alg.F

    @property
    def spec(self) -> FieldSpec:
        return self.alg.spec

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def p(self) -> int:
        return self.spec.p

    def gen(self, name: str) -> Element:
        return self.alg.gen(name)

    def delta(self, v) -> np.ndarray:
        v = v.vec if isinstance(v, Element) else np.asarray(v)
        n = self.dim
        return self.F.matmul(v[None, :], self.D.reshape(n, n * n)).reshape(n, n)

    def eps(self, v) -> int:
        v = v.vec if isinstance(v, Element) else np.asarray(v)
        return int(self.F.dot(v, self.counit))

    def antipode(self, v) -> np.ndarray:
        if self.S is None:
            raise HopfError("antipode not computed")
        v = v.vec if isinstance(v, Element) else np.asarray(v)
        return self.F.matmul(v[None, :], self.S)[0]

    def omega(self, t) -> np.ndarray:
        return omega(self.alg, t)

    def reduced_delta(self, v) -> np.ndarray:
        """Delta(v) - v (x) 1 - 1 (x) v."""
        v = v.vec if isinstance(v, Element) else np.asarray(v)
        T = self.T
        return self.F.sub(self.F.sub(self.delta(v), T.pure(v, self.alg.one)), T.pure(self.alg.one, v))

    def to_json(self) -> dict:
        def trip(X):
            idx = np.argwhere(X)
            return [[*map(int, ix), _coeff_json(self.spec, int(X[tuple(ix)]))] for ix in idx]
        body = {"algebra": self.alg.to_json(), "delta": trip(self.D),
                "counit": trip(self.counit[:, None])}
        if self.S is not None:
            body["antipode"] = trip(self.S)
        body["hash"] = content_hash(body)
        return body

    def content_hash(self) -> str:
        return self.to_json()["hash"]

    def scalar_extension(self, spec: FieldSpec) -> "HopfAlgebra":
        if spec == self.spec:
            return self
        alg = scalar_extension(self.alg, spec)
        H = HopfAlgebra(alg, self.D.copy(), self.counit.copy(),
                        None if self.S is None else self.S.copy(), self.name)
        H.meta = dict(self.meta)
        return H


def _coeff_json(spec, c):
    return c if spec.k == 1 else Scalar(spec, c).coeffs


def omega(alg: FDAlgebra, t) -> np.ndarray:
    """sum_{i=1}^{p-1} (p-1)!/(i!(p-i)!) t^i (x) t^(p-i) as an (n, n) matrix."""
    t = t.vec if isinstance(t, Element) else np.asarray(t)
    F, p = alg.F, alg.spec.p
    powers = [alg.one]
    for _ in range(p):
        powers.append(alg.mul(powers[-1], t))
    out = np.zeros((alg.dim, alg.dim), dtype=np.int64)
    for i, c in enumerate(omega_coefficients(p), start=1):
        if c:
            out = F.add(out, F.mul(F.mul(powers[i][:, None], powers[p - i][None, :]), c))
    return out


# -- construction ---------------------------------------------------------------------

def _word_delta(T: TensorProductAlgebra, Dg, word) -> np.ndarray:
    out = T.one_matrix()
    for letter in word:
        out = T.mul(out, Dg[letter])
    return out


def extend_structure(alg: FDAlgebra, delta_gens, counit_gens=None, name: str = "") -> HopfAlgebra:
    """Extend coproduct and counit from generators to the whole algebra.

    ``delta_gens`` lists Delta(g) as (n, n) matrices in generator order.  Every
    defining relation is checked to be respected by the extension; the error
    names the first relation that is not.
    """
    pres = alg.presentation
    if pres is None:
        raise HopfError("algebra has no presentation")
    F, n, p = alg.F, alg.dim, alg.spec.p
    ng = pres.ngens
    Dg = [np.asarray(d, dtype=np.int64) for d in delta_gens]
    eg = [0] * ng if counit_gens is None else [F.element(c) for c in counit_gens]
    if len(Dg) != ng:
        raise HopfError("need one coproduct per generator")
    T = TensorProductAlgebra(alg, alg)

    for rname, lhs, rhs in pres.rules():
        if len(lhs) == 2 and rname.startswith("["):
            a, b = lhs
            left = F.sub(T.mul(Dg[a], Dg[b]), T.mul(Dg[b], Dg[a]))
            eleft = 0
        else:
            left = T.power(Dg[lhs[0]], p)
            eleft = F.s_pow(eg[lhs[0]], p)
        right = np.zeros((n, n), dtype=np.int64)
        eright = 0
        for w, c in rhs.items():
            right = F.add(right, F.mul(_word_delta(T, Dg, w), c))
            ew = 1
            for letter in w:
                ew = F.s_mul(ew, eg[letter])
            eright = F.s_add(eright, F.s_mul(ew, c))
        if not np.array_equal(left, right):
            raise HopfError(f"coproduct does not respect relation {rname} = {_rhs_text(pres, rhs)}")
        if eleft != eright:
            raise HopfError(f"counit does not respect relation {rname}")

    D = np.zeros((n, n, n), dtype=np.int64)
    eps = np.zeros(n, dtype=np.int64)
    D[0] = T.pure(alg.one, alg.one)
    eps[0] = 1
    for j in range(1, n):
        e = [(j // p**l) % p for l in range(ng)]
        last = min(l for l in range(ng) if e[l])
        e[last] -= 1
        jp = sum(v * p**l for l, v in enumerate(e))
        D[j] = T.mul(D[jp], Dg[last])
        eps[j] = F.s_mul(int(eps[jp]), eg[last])
    return HopfAlgebra(alg, D, eps, name=name or alg.name)


def _rhs_text(pres, rhs):
    from .rewrite import format_poly
    return format_poly(rhs, pres.gens, pres.spec)


def generator_triangular(H: HopfAlgebra) -> bool:
    """Each generator g has Delta(g) - g(x)1 - 1(x)g inside A_<g (x) A_<g.

    A_<g is the span of normal monomials in earlier generators.  This is a
    sufficient condition for connectedness (the coradical lies in the
    subalgebra generated by the coradical of the generating subcoalgebra).
    """
    pres = H.alg.presentation
    p = H.p
    for t, g in enumerate(H.alg.generators):
        W = H.reduced_delta(H.alg.basis_vec(g))
        lim = p**t
        if np.any(W[lim:, :]) or np.any(W[:, lim:]) or H.counit[g] != 0:
            return False
    return pres is not None


def compute_antipode(H: HopfAlgebra, check_connected: bool = True) -> np.ndarray:
    """Antipode as the convolution inverse of the identity, solved on generators.

    S(g) = eps(g) - g - sum S(g') g'' over the reduced coproduct of g, then S
    is extended anti-multiplicatively and both antipode laws are verified.
    """
    alg = H.alg
    F, n, p = H.F, H.dim, H.p
    pres = alg.presentation
    if pres is None:
        raise HopfError("antipode solver needs a presentation")
    if check_connected:
        if n <= FILTRATION_CHECK_DIM:
            if not is_connected(H):
                raise HopfError("Hopf algebra is not connected")
        elif not generator_triangular(H):
            raise HopfError("cannot certify connectedness")
    ng = pres.ngens
    S = np.zeros((n, n), dtype=np.int64)
    S[0] = alg.one
    for t, g in enumerate(alg.generators):
        W = H.reduced_delta(alg.basis_vec(g))
        lim = p**t
        if np.any(W[lim:, :]):
            raise HopfError(f"reduced coproduct of {pres.gens[t]} involves later generators")
        val = F.sub(F.mul(alg.one, int(H.counit[g])), alg.basis_vec(g))
        for i in np.flatnonzero(np.any(W, axis=1)):
            val = F.sub(val, alg.mul(S[i], W[i]))
        S[g] = val
        for j in range(lim, p ** (t + 1)):
            if j == g:
                continue
            e = [(j // p**l) % p for l in range(ng)]
            last = min(l for l in range(ng) if e[l])
            e[last] -= 1
            jp = sum(v * p**l for l, v in enumerate(e))
            S[j] = alg.mul(S[alg.generators[last]], S[jp])
    H.S = S
    bad = antipode_defects(H)
    if bad:
        H.S = None
        raise HopfError(f"antipode laws fail on {len(bad)} basis elements")
    return S


def build_hopf(alg: FDAlgebra, delta_gens, counit_gens=None, name: str = "") -> HopfAlgebra:
    H = extend_structure(alg, delta_gens, counit_gens, name)
    compute_antipode(H)
    return H


# -- axioms ---------------------------------------------------------------------------

@dataclass
class AxiomReport:
    coassociative: bool
    counit: bool
    bialgebra: bool
    antipode: bool
    cocommutative: bool
    failures: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.coassociative and self.counit and self.bialgebra and self.antipode

    def to_json(self) -> dict:
        return {"coassociative": self.coassociative, "counit": self.counit,
                "bialgebra": self.bialgebra, "antipode": self.antipode,
                "cocommutative": self.cocommutative, "ok": self.ok,
                "failures": {k: v[:10] for k, v in self.failures.items()}}


def coassociativity_defects(H: HopfAlgebra) -> list[int]:
    F, n, D = H.F, H.dim, H.D
    bad = []
    if F.k == 1:
        p = F.p
        Dflat = sp.csr_matrix(D.reshape(n, n * n).astype(np.float64))
        for h in range(n):
            Dh = sp.csr_matrix(D[h].astype(np.float64))
            k1 = _sparse_keys((Dh.T @ Dflat).tocoo(), p, lambda r, c: (c * n) + r, n)
            k2 = _sparse_keys((Dh @ Dflat).tocoo(), p, lambda r, c: r * n * n + c, n)
            if not (np.array_equal(k1[0], k2[0]) and np.array_equal(k1[1], k2[1])):
                bad.append(h)
        return bad
    Dflat = D.reshape(n, n * n)
    for h in range(n):
        t1 = F.matmul(D[h].T, Dflat).reshape(n, n, n).transpose(1, 2, 0)
        t2 = F.matmul(D[h], Dflat).reshape(n, n, n)
        if not np.array_equal(t1, t2):
            bad.append(h)
    return bad


def _sparse_keys(coo, p, keyfn, n):
    data = np.rint(coo.data).astype(np.int64) % p
    keep = data != 0
    keys = keyfn(coo.row[keep].astype(np.int64), coo.col[keep].astype(np.int64))
    order = np.argsort(keys, kind="stable")
    return keys[order], data[keep][order]


def counit_defects(H: HopfAlgebra) -> list[int]:
    F, n = H.F, H.dim
    I = np.eye(n, dtype=np.int64)
    left = F.matmul(H.counit[None, None, :], H.D)[:, 0, :]  # sum_i eps_i D[h, i, :]
    right = F.matmul(H.D, H.counit[None, :, None])[:, :, 0]
    return [int(h) for h in np.flatnonzero(np.any(left != I, axis=1) | np.any(right != I, axis=1))]


def bialgebra_defects(H: HopfAlgebra, all_pairs: bool | None = None) -> list[tuple[int, int]]:
    """Delta and eps multiplicative on basis pairs.

    With generators available, checking (a, g) for every basis a and generator
    g is complete: by induction on word length Delta(ab) = Delta(a)Delta(b).
    """
    alg, F, n = H.alg, H.F, H.dim
    if all_pairs is None:
        all_pairs = n <= 27 or not alg.generators
    right_set = range(n) if all_pairs else alg.generators
    bad = []
    T = H.T
    for b in right_set:
        prod = alg.M[:, b, :]  # row a: e_a e_b
        lhs = F.matmul(prod, H.D.reshape(n, n * n)).reshape(n, n, n)
        rhs = T.mul_left_batch(H.D, H.D[b]) if hasattr(T, "mul_left_batch") else \
            np.stack([T.mul(H.D[a], H.D[b]) for a in range(n)])
        diff = np.flatnonzero(np.any((lhs != rhs).reshape(n, -1), axis=1))
        bad.extend((int(a), int(b)) for a in diff)
        e_lhs = F.matmul(prod, H.counit[:, None])[:, 0]
        e_rhs = F.mul(H.counit, int(H.counit[b]))
        bad.extend((int(a), int(b)) for a in np.flatnonzero(e_lhs != e_rhs) if int(a) not in diff)
    return bad


def antipode_defects(H: HopfAlgebra) -> list[int]:
    if H.S is None:
        return list(range(H.dim))
    F, n, S, D = H.F, H.dim, H.S, H.D
    Mflat = H.alg.M.reshape(n * n, n)
    target = F.mul(H.counit[:, None], H.alg.one[None, :])
    left = F.matmul(F.matmul(S.T[None, :, :], D).reshape(n, n * n), Mflat)
    right = F.matmul(F.matmul(D, S[None, :, :]).reshape(n, n * n), Mflat)
    return [int(h) for h in np.flatnonzero(np.any(left != target, axis=1) | np.any(right != target, axis=1))]


def is_cocommutative(H: HopfAlgebra) -> bool:
    return bool(np.array_equal(H.D, H.D.transpose(0, 2, 1)))


def verify_axioms(H: HopfAlgebra) -> AxiomReport:
    fails = {}
    co = coassociativity_defects(H)
    cu = counit_defects(H)
    bi = bialgebra_defects(H)
    an = antipode_defects(H)
    if co:
        fails["coassociative"] = co
    if cu:
        fails["counit"] = cu
    if bi:
        fails["bialgebra"] = [list(x) for x in bi]
    if an:
        fails["antipode"] = an
    return AxiomReport(not co, not cu, not bi, not an, is_cocommutative(H), fails)


# -- primitives and the coradical filtration -----------------------------------------------

def primitive_space(H: HopfAlgebra) -> Subspace:
    F, n = H.F, H.dim
    one = H.alg.one
    Dm = H.D.copy()
    for h in range(n):
        e = H.alg.basis_vec(h)
        Dm[h] = F.sub(F.sub(Dm[h], H.T.pure(e, one)), H.T.pure(one, e))
    return Subspace(F, n, left_kernel(F, Dm.reshape(n, n * n)), reduced=True)


def _quotient_projection(U: Subspace) -> np.ndarray:
    """Matrix Q with (v Q) the coordinates of v modulo U on the free columns."""
    n = U.n
    P = np.zeros((n, n), dtype=np.int64)
    P[U.pivots] = U.rows
    Q = U.F.sub(np.eye(n, dtype=np.int64), P)
    free = [c for c in range(n) if c not in set(U.pivots)]
    return Q[:, free]


@dataclass
class Filtration:
    levels: list[Subspace]
    connected: bool

    @property
    def length(self) -> int:
        return len(self.levels) - 1

    def dims(self) -> list[int]:
        return [L.dim for L in self.levels]

    def degree(self, v) -> int | None:
        for d, L in enumerate(self.levels):
            if L.contains(v):
                return d
        return None


def coradical_filtration(H: HopfAlgebra, max_levels: int | None = None) -> Filtration:
    """H_0 = k1 and H_n = Delta^{-1}(H (x) H_{n-1} + H_0 (x) H).

    With H_0 = k1 the chain exhausts H exactly when H is connected; a
    stationary chain short of H means a larger coradical.
    """
    if H._filtration is not None:
        return H._filtration
    F, n = H.F, H.dim
    H0 = Subspace(F, n, H.alg.one[None, :])
    QL = _quotient_projection(H0)
    levels = [H0]
    connected = True
    while levels[-1].dim < n:
        if max_levels is not None and len(levels) > max_levels:
            connected = False
            break
        U = levels[-1]
        Q = _quotient_projection(U)
        # Phi(h) = QL^T D[h] Q, flattened
        X = F.matmul(F.matmul(QL.T[None, :, :], H.D), Q[None, :, :]).reshape(n, -1)
        nxt = Subspace(F, n, left_kernel(F, X), reduced=True)
        if nxt.dim == U.dim:
            connected = False
            break
        levels.append(nxt)
    filt = Filtration(levels, connected)
    if max_levels is None:
        H._filtration = filt
    return filt


def is_connected(H: HopfAlgebra) -> bool:
    return coradical_filtration(H).connected


def first_order(H: HopfAlgebra, K: Subspace) -> float:
    """Minimal n with K cap H_n strictly inside H_n, or inf when K = H."""
    filt = coradical_filtration(H)
    if not filt.connected:
        raise HopfError("first order is defined here for connected Hopf algebras")
    for d, L in enumerate(filt.levels):
        if L.intersect(K).dim < L.dim:
            return d
    return math.inf


def is_hopf_subspace(H: HopfAlgebra, K: Subspace) -> dict:
    """Closure of a subspace under product, coproduct and antipode."""
    from .algebra import subalgebra_closed
    F, n = H.F, H.dim
    prod = subalgebra_closed(H.alg, K) and K.contains(H.alg.one)
    C = K.annihilator()
    co = True
    for v in K.rows:
        X = H.delta(v)
        if C.dim and (np.any(F.matmul(C.rows, X)) or np.any(F.matmul(X, C.rows.T))):
            co = False
            break
    anti = H.S is not None and K.contains(F.matmul(K.rows, H.S))
    return {"subalgebra": bool(prod), "subcoalgebra": co, "antipode_stable": bool(anti),
            "ok": bool(prod and co and anti)}


def tensor_contains(K: Subspace, X) -> bool:
    """X in K (x) K, for X an (n, n) matrix."""
    C = K.annihilator()
    if C.dim == 0:
        return True
    F = K.F
    return not (np.any(F.matmul(C.rows, X)) or np.any(F.matmul(X, C.rows.T)))


# -- associated graded ------------------------------------------------------------------

@dataclass
class GradedData:
    hopf: HopfAlgebra
    degrees: list[int]
    basis: np.ndarray  # rows: adapted basis of H in original coordinates
    filtration: Filtration


def associated_graded(H: HopfAlgebra) -> GradedData:
    """gr H on an adapted basis (echelon complements of H_{n-1} in H_n)."""
    filt = coradical_filtration(H)
    if not filt.connected:
        raise HopfError("associated graded needs the coradical filtration to exhaust H")
    F, n = H.F, H.dim
    rows, degs = [], []
    prev = Subspace(F, n)
    for d, L in enumerate(filt.levels):
        C = relative_complement(F, L, prev)
        rows.append(C)
        degs.extend([d] * len(C))
        prev = L
    B = np.concatenate(rows)
    from .linalg import invert
    Binv = invert(F, B)
    degs_a = np.array(degs)
    alg = H.alg
    # products of adapted basis vectors, in adapted coordinates
    P = products(alg, B, B).reshape(n, n, n)
    Mg = F.matmul(P.reshape(n * n, n), Binv).reshape(n, n, n)
    target = degs_a[:, None] + degs_a[None, :]
    keep = degs_a[None, None, :] == target[:, :, None]
    lower = degs_a[None, None, :] < target[:, :, None]
    if np.any(Mg[~(keep | lower)]):
        raise HopfError("filtration is not multiplicative")
    Mg = np.where(keep, Mg, 0)
    # coproduct: Delta(b_e) = B^-T-transformed
    Dh = F.matmul(B, H.D.reshape(n, n * n)).reshape(n, n, n)
    Dg = F.matmul(F.matmul(Binv.T[None], Dh), Binv[None])
    dsum = degs_a[None, :, None] + degs_a[None, None, :]
    keepD = dsum == degs_a[:, None, None]
    if np.any(Dg[dsum > degs_a[:, None, None]]):
        raise HopfError("filtration is not a coalgebra filtration")
    Dg = np.where(keepD, Dg, 0)
    eps = F.matmul(B, H.counit[:, None])[:, 0]
    eps = np.where(degs_a == 0, eps, 0)
    one = F.matmul(alg.one[None], Binv)[0]
    galg = FDAlgebra(H.spec, Mg, [f"gr{i}" for i in range(n)], one=one, name=f"gr({H.name})")
    G = HopfAlgebra(galg, Dg, eps, name=f"gr({H.name})")
    if H.S is not None:
        Sg = F.matmul(F.matmul(B, H.S), Binv)
        same = degs_a[:, None] == degs_a[None, :]
        G.S = np.where(same, Sg, 0)
    return GradedData(G, degs, B, filt)


def graded_class(gd: GradedData, v) -> tuple[int, np.ndarray]:
    """(degree, adapted coordinates of the leading component) of a nonzero v."""
    F = gd.hopf.F
    from .linalg import invert
    d = gd.filtration.degree(v)
    coords = F.matmul(np.asarray(v)[None], invert(F, gd.basis))[0]
    coords = np.where(np.array(gd.degrees) == d, coords, 0)
    return d, coords


def graded_in_monomial_basis(H: HopfAlgebra) -> HopfAlgebra:
    """gr H rewritten on the classes of the normal monomials of H.

    Requires the classes of the monomials to form a basis of gr H, which holds
    for the filtrations of the catalog algebras; raises otherwise.
    """
    from .linalg import invert
    gd = associated_graded(H)
    F, n = H.F, H.dim
    G = np.stack([graded_class(gd, H.alg.basis_vec(j))[1] for j in range(n)])
    if rank(F, G) < n:
        raise HopfError("monomial classes do not form a basis of gr H")
    Ginv = invert(F, G)
    gh = gd.hopf
    P = products(gh.alg, G, G)
    M = F.matmul(P, Ginv).reshape(n, n, n)
    Dh = F.matmul(G, gh.D.reshape(n, n * n)).reshape(n, n, n)
    D = F.matmul(F.matmul(Ginv.T[None], Dh), Ginv[None])
    eps = F.matmul(G, gh.counit[:, None])[:, 0]
    one = F.matmul(gh.alg.one[None], Ginv)[0]
    alg = FDAlgebra(H.spec, M, [f"gr({l})" for l in H.alg.labels], one=one, name=f"gr({H.name})")
    out = HopfAlgebra(alg, D, eps, name=f"gr({H.name})")
    if gh.S is not None:
        out.S = F.matmul(F.matmul(G, gh.S), Ginv)
    return out


# -- Hochschild cohomology of the coalgebra ---------------------------------------------

def d1_matrix(H: HopfAlgebra) -> np.ndarray:
    """Row h: 1 (x) e_h - Delta(e_h) + e_h (x) 1, flattened."""
    F, n = H.F, H.dim
    one = H.alg.one
    out = F.neg(H.D).copy()
    for h in range(n):
        e = H.alg.basis_vec(h)
        out[h] = F.add(F.add(out[h], H.T.pure(one, e)), H.T.pure(e, one))
    return out.reshape(n, n * n)


def d2_matrix(H: HopfAlgebra) -> sp.csr_matrix:
    """Sparse (n^2, n^3) matrix of d2(h (x) g) = 1hg - Delta(h)g + h Delta(g) - hg1."""
    if not H.spec.is_prime_field:
        raise HopfError("Hochschild complex is implemented over the prime field")
    F, n, p = H.F, H.dim, H.p
    u = int(np.flatnonzero(H.alg.one)[0])
    if not np.array_equal(H.alg.one, H.alg.basis_vec(u)):
        raise HopfError("unit must be a basis vector")
    rows, cols, vals = [], [], []
    nz = [np.argwhere(H.D[h]) for h in range(n)]
    for h in range(n):
        for g in range(n):
            r = h * n + g
            rows.append(r); cols.append((u * n + h) * n + g); vals.append(1)
            for a, b in nz[h]:
                rows.append(r); cols.append((a * n + b) * n + g); vals.append(-int(H.D[h, a, b]))
            for b, c in nz[g]:
                rows.append(r); cols.append((h * n + b) * n + c); vals.append(int(H.D[g, b, c]))
            rows.append(r); cols.append((h * n + g) * n + u); vals.append(-1)
    M = sp.coo_matrix((np.array(vals, dtype=np.float64), (rows, cols)), shape=(n * n, n**3)).tocsr()
    M.sum_duplicates()
    M.data = np.mod(M.data, p)
    M.eliminate_zeros()
    return M


@dataclass
class H2Result:
    dim: int
    representatives: np.ndarray  # rows in H (x) H, flattened
    ker_d2: int
    rank_d1: int
    complex_ok: bool

    def to_json(self):
        reps = []
        for r in self.representatives:
            idx = np.flatnonzero(r)
            reps.append([[int(i), int(r[i])] for i in idx])
        return {"dim": self.dim, "ker_d2": self.ker_d2, "rank_d1": self.rank_d1,
                "d2_d1_zero": self.complex_ok, "representatives": reps}


def hochschild_h2(H: HopfAlgebra, max_dim: int = H2_MAX_DIM) -> H2Result:
    """H^2(k, H) = ker d2 / im d1 by exact ranks, with coset representatives."""
    if H.dim > max_dim:
        raise HopfError(f"dimension {H.dim} exceeds the H^2 bound {max_dim}")
    F = H.F
    d1 = d1_matrix(H)
    d2 = d2_matrix(H)
    ok = not np.any(F.matmul(d1, d2))
    K = Subspace(F, d1.shape[1], left_kernel(F, d2), reduced=True)
    im = Subspace(F, d1.shape[1], d1)
    red = im.reduce(K.rows)
    reps, _ = rref(F, red[np.any(red, axis=1)]) if len(red) else (red, [])
    return H2Result(K.dim - im.dim, reps, K.dim, im.dim, ok)


def d1_injection_check(H: HopfAlgebra, K: Subspace) -> dict:
    """d1 maps H_n / K_n injectively into H^2(k, K), n the first order of K in H."""
    F, n = H.F, H.dim
    fo = first_order(H, K)
    if fo == math.inf:
        return {"first_order": None, "vacuous": True, "ok": True}
    if fo < 2:
        raise HopfError(f"first order {fo} < 2")
    Hn = coradical_filtration(H).levels[fo]
    Kn = Hn.intersect(K)
    reps = relative_complement(F, Hn, Kn)
    d1 = d1_matrix(H)
    images = F.matmul(reps, d1)
    in_kk = all(tensor_contains(K, im.reshape(n, n)) for im in images)
    base = F.matmul(K.rows, d1)
    r0 = rank(F, base) if len(base) else 0
    r1 = rank(F, np.concatenate([base, images]))
    return {"first_order": int(fo), "quotient_dim": int(len(reps)), "image_in_KxK": bool(in_kk),
            "rank_increase": int(r1 - r0), "vacuous": False,
            "ok": bool(in_kk and r1 - r0 == len(reps))}


# -- morphisms, duals, grouplikes, locality -------------------------------------------------

def morphism_matrix(H1: HopfAlgebra, H2: HopfAlgebra, images) -> np.ndarray:
    """Matrix of the algebra map determined by generator images (rows = phi(e_j))."""
    pres = H1.alg.presentation
    p, ng, n1 = H1.p, pres.ngens, H1.dim
    imgs = [np.asarray(v.vec if isinstance(v, Element) else v, dtype=np.int64) for v in images]
    Phi = np.zeros((n1, H2.dim), dtype=np.int64)
    Phi[0] = H2.alg.one
    for j in range(1, n1):
        e = [(j // p**l) % p for l in range(ng)]
        last = min(l for l in range(ng) if e[l])
        e[last] -= 1
        jp = sum(v * p**l for l, v in enumerate(e))
        Phi[j] = H2.alg.mul(Phi[jp], imgs[last])
    return Phi


def hopf_morphism_check(H1: HopfAlgebra, H2: HopfAlgebra, images, claim_iso: bool = True) -> dict:
    """Is the map sending generators of H1 to ``images`` a Hopf (iso)morphism?"""
    if H1.spec != H2.spec:
        raise HopfError("morphism check needs both Hopf algebras over the same field")
    pres = H1.alg.presentation
    if pres is None:
        raise HopfError("source needs a presentation")
    F, p = H2.F, H2.p
    imgs = [np.asarray(v.vec if isinstance(v, Element) else v, dtype=np.int64) for v in images]
    A2 = H2.alg

    def word(w):
        out = A2.one
        for letter in w:
            out = A2.mul(out, imgs[letter])
        return out

    failed = []
    for rname, lhs, rhs in pres.rules():
        if rname.startswith("["):
            left = A2.commutator(imgs[lhs[0]], imgs[lhs[1]])
        else:
            left = A2.power(imgs[lhs[0]], p)
        right = np.zeros(A2.dim, dtype=np.int64)
        for w, c in rhs.items():
            right = F.add(right, F.mul(word(w), c))
        if not np.array_equal(left, right):
            failed.append(rname)
    algebra_ok = not failed
    Phi = morphism_matrix(H1, H2, imgs)
    coalg_fail = []
    for t, g in enumerate(H1.alg.generators):
        lhs = H2.delta(imgs[t])
        rhs = F.matmul(F.matmul(Phi.T, H1.D[g]), Phi)
        if not np.array_equal(lhs, rhs) or H2.eps(imgs[t]) != int(H1.counit[g]):
            coalg_fail.append(pres.gens[t])
    bij = None
    if claim_iso:
        bij = H1.dim == H2.dim and rank(F, Phi) == H1.dim
    ok = algebra_ok and not coalg_fail and (bij is not False)
    return {"algebra_map": algebra_ok, "failed_relations": failed,
            "coalgebra_map": not coalg_fail, "failed_generators": coalg_fail,
            "bijective": bij, "ok": bool(ok)}


def dual_hopf(H: HopfAlgebra) -> HopfAlgebra:
    """Linear dual on the dual basis: all structure tensors transposed."""
    n = H.dim
    M = H.D.transpose(1, 2, 0).copy()  # (f g)(e_k) = sum D[k,i,j] f_i g_j
    D = H.alg.M.transpose(2, 0, 1).copy()  # Delta f (e_i (x) e_j) = f(e_i e_j)
    alg = FDAlgebra(H.spec, M, [f"{l}*" for l in H.alg.labels], one=H.counit.copy(),
                    name=f"{H.name}*")
    Hd = HopfAlgebra(alg, D, H.alg.one.copy(), None if H.S is None else H.S.T.copy(),
                     name=f"{H.name}*")
    return Hd


def _field_elements(F):
    return list(range(F.q))


def characters(A: FDAlgebra) -> list[np.ndarray]:
    """All algebra maps A -> k (k the base field), as coefficient vectors chi_i = chi(e_i).

    A is reduced to its largest quotient of the form k x ... x k: first by the
    commutator ideal, then by the ideal generated by b^q - b; the remaining
    algebra is split by primitive idempotents.
    """
    F, n = A.F, A.dim
    q = F.q
    basis = np.eye(n, dtype=np.int64)
    comms = F.sub(products(A, basis, basis), products(A, basis, basis).reshape(n, n, n)
                  .transpose(1, 0, 2).reshape(n * n, n))
    I1 = ideal_closure(A, comms[np.any(comms, axis=1)])
    B1 = quotient_algebra(A, I1, check=False)
    free1 = [c for c in range(n) if c not in set(I1.pivots)]
    if B1.dim == 0:
        return []
    frob = np.stack([F.sub(B1.power(B1.basis_vec(i), q), B1.basis_vec(i)) for i in range(B1.dim)])
    I2 = ideal_closure(B1, frob[np.any(frob, axis=1)])
    B2 = quotient_algebra(B1, I2, check=False)
    free2 = [c for c in range(B1.dim) if c not in set(I2.pivots)]
    if B2.dim == 0:
        return []
    idems = _split_idempotents(B2)
    chis = []
    for e in idems:
        # e b = chi(b) e for each basis b of B2
        pivot = int(np.flatnonzero(e)[0])
        inv = F.s_inv(int(e[pivot]))
        chi2 = np.array([F.s_mul(int(B2.mul(e, B2.basis_vec(i))[pivot]), inv) for i in range(B2.dim)],
                        dtype=np.int64)
        # pull back along A -> B1 -> B2 (projection = reduce then restrict to free columns)
        to1 = I1.reduce(basis)[:, free1]
        to2 = I2.reduce(to1)[:, free2]
        chis.append(F.matmul(to2, chi2[:, None])[:, 0])
    chis.sort(key=lambda v: tuple(v))
    return chis


def _split_idempotents(B: FDAlgebra) -> list[np.ndarray]:
    F = B.F
    idems = [B.one.copy()]
    for i in range(B.dim):
        b = B.basis_vec(i)
        new = []
        for e in idems:
            c = B.mul(e, b)
            pieces = []
            for r in _field_elements(F):
                er = e.copy()
                for s in _field_elements(F):
                    if s == r:
                        continue
                    fac = F.sub(c, F.mul(e, s))
                    er = F.mul(B.mul(er, fac), F.s_inv(F.s_sub(r, s)))
                    if not er.any():
                        break
                if er.any():
                    pieces.append(er)
            new.extend(pieces)
        idems = new
    return idems


def grouplikes(H: HopfAlgebra) -> list[np.ndarray]:
    """All g with Delta(g) = g (x) g and eps(g) = 1, over the base field."""
    Hd = dual_hopf(H)
    out = []
    for chi in characters(Hd.alg):
        g = chi
        if np.array_equal(H.delta(g), H.T.pure(g, g)) and H.eps(g) == 1:
            out.append(g)
        else:  # pragma: no cover
            raise HopfError("character of the dual is not grouplike")
    return out


def augmentation_ideal(H: HopfAlgebra) -> np.ndarray:
    F, n = H.F, H.dim
    rows = [F.sub(H.alg.basis_vec(i), F.mul(H.alg.one, int(H.counit[i]))) for i in range(n)]
    return np.array(rows)


def is_local(H: HopfAlgebra) -> str:
    """'semisimple-split', 'local' or 'neither'."""
    if H.spec.is_prime_field and is_split_commutative_semisimple(H.alg):
        return "semisimple-split"
    res = ideal_nilpotency(H.alg, augmentation_ideal(H))
    return "local" if res.nilpotent else "neither"
