"""Restricted Lie algebras: brackets, p-maps, Jacobson's formula and invariants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import FDAlgebra
from .field import FieldSpec, Scalar, build_extension, get_field, prime_field
from .linalg import Subspace, matrix_power, rank, solve_left


class LieError(ValueError):
    pass


@dataclass
class RestrictedLie:
    """Bracket tensor ``B[i, j] = [b_i, b_j]`` and p-map rows ``P[i] = b_i^[p]``."""

    spec: FieldSpec
    bracket: np.ndarray
    pmap: np.ndarray
    names: tuple = ()
    name: str = ""

    def __post_init__(self):
        self.bracket = np.asarray(self.bracket, dtype=np.int64)
        self.pmap = np.asarray(self.pmap, dtype=np.int64)
        d = self.pmap.shape[0]
        if self.bracket.shape != (d, d, d) or self.pmap.shape != (d, d):
            raise LieError("bracket must be (d, d, d) and p-map (d, d)")
        if not self.names:
            self.names = tuple("xyzwuv"[:d]) if d <= 6 else tuple(f"b{i}" for i in range(d))

    @property
    def F(self):
        return get_field(self.spec)

    @property
    def dim(self) -> int:
        return self.pmap.shape[0]

    @property
    def p(self) -> int:
        return self.spec.p

    def basis_vec(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def br(self, u, v) -> np.ndarray:
        F = self.F
        uv = F.mul(np.asarray(u)[:, None], np.asarray(v)[None, :])
        return F.matmul(uv.reshape(1, -1), self.bracket.reshape(-1, self.dim))[0]

    def ad(self, a) -> np.ndarray:
        """Matrix of x -> [x, a] (row i is [b_i, a])."""
        return np.stack([self.br(self.basis_vec(i), a) for i in range(self.dim)])

    def is_abelian(self) -> bool:
        return not self.bracket.any()

    def pmap_element(self, v) -> np.ndarray:
        """p-map of an arbitrary element, extended from the basis by
        (lambda a)^[p] = lambda^p a^[p] and Jacobson's additivity formula."""
        F = self.F
        v = np.asarray(v, dtype=np.int64)
        acc = np.zeros(self.dim, dtype=np.int64)
        acc_p = np.zeros(self.dim, dtype=np.int64)
        for i in np.flatnonzero(v):
            c = int(v[i])
            term = F.mul(self.basis_vec(i), c)
            term_p = F.mul(self.pmap[i], F.s_pow(c, self.p))
            corr = jacobson_sum(acc, term, self)
            acc_p = F.add(F.add(acc_p, term_p), corr)
            acc = F.add(acc, term)
        return acc_p

    def to_json(self) -> dict:
        idx = np.argwhere(self.bracket)
        coef = (lambda c: c) if self.spec.k == 1 else (lambda c: Scalar(self.spec, c).coeffs)
        return {"p": self.p, "k": self.spec.k, "dim": self.dim, "names": list(self.names),
                "bracket": [[int(i), int(j), int(l), coef(int(self.bracket[i, j, l]))]
                            for i, j, l in idx],
                "pmap": [[coef(int(c)) for c in row] for row in self.pmap]}


def lie_from_brackets(spec: FieldSpec, dim: int, brackets: dict, pmap: dict, name: str = "",
                      names=()) -> RestrictedLie:
    """Build from sparse data: brackets {(i, j): {l: c}} for i < j, pmap {i: {l: c}}."""
    F = get_field(spec)
    B = np.zeros((dim, dim, dim), dtype=np.int64)
    for (i, j), vec in brackets.items():
        for l, c in vec.items():
            B[i, j, l] = F.element(c)
            B[j, i, l] = F.s_neg(F.element(c))
    P = np.zeros((dim, dim), dtype=np.int64)
    for i, vec in pmap.items():
        for l, c in vec.items():
            P[i, l] = F.element(c)
    return RestrictedLie(spec, B, P, tuple(names), name)


# -- Jacobson's formula ---------------------------------------------------------------------

def _bracket_fn(ambient):
    if isinstance(ambient, FDAlgebra):
        return ambient.commutator, ambient.F
    return ambient.br, ambient.F


def jacobson_si(x, y, ambient) -> list[np.ndarray]:
    """s_1, ..., s_{p-1} with (x + y)^p = x^p + y^p + sum s_i.

    Expands x (ad(lambda x + y))^{p-1} as a polynomial in a formal lambda.  The
    coefficient c_{i-1} of lambda^{i-1} equals i s_i, so s_i = c_{i-1} / i.
    """
    br, F = _bracket_fn(ambient)
    p = F.p
    x = np.asarray(x.vec if hasattr(x, "vec") else x, dtype=np.int64)
    y = np.asarray(y.vec if hasattr(y, "vec") else y, dtype=np.int64)
    poly = [x]
    for _ in range(p - 1):
        new = [np.zeros_like(x) for _ in range(len(poly) + 1)]
        for j, c in enumerate(poly):
            if c.any():
                new[j] = F.add(new[j], br(c, y))
                new[j + 1] = F.add(new[j + 1], br(c, x))
        poly = new
    return [F.mul(poly[i - 1], F.s_inv(i % p)) for i in range(1, p)]


def jacobson_sum(x, y, ambient) -> np.ndarray:
    F = _bracket_fn(ambient)[1]
    out = np.zeros(np.asarray(x).shape, dtype=np.int64)
    for s in jacobson_si(x, y, ambient):
        out = F.add(out, s)
    return out


def jacobson_sum_batch(alg: FDAlgebra, X, Y) -> np.ndarray:
    """Row-wise sum of s_i(X[r], Y[r]) in an algebra, batched."""
    F, p = alg.F, alg.spec.p

    def br(A, B):
        return F.sub(alg.mul_batch(A, B), alg.mul_batch(B, A))

    poly = [X]
    for _ in range(p - 1):
        new = [np.zeros_like(X) for _ in range(len(poly) + 1)]
        for j, c in enumerate(poly):
            new[j] = F.add(new[j], br(c, Y))
            new[j + 1] = F.add(new[j + 1], br(c, X))
        poly = new
    out = np.zeros_like(X)
    for i in range(1, p):
        out = F.add(out, F.mul(poly[i - 1], F.s_inv(i % p)))
    return out


def power_batch(alg: FDAlgebra, X, e: int) -> np.ndarray:
    out = np.tile(alg.one, (X.shape[0], 1))
    base = X
    while e:
        if e & 1:
            out = alg.mul_batch(out, base)
        e >>= 1
        if e:
            base = alg.mul_batch(base, base)
    return out


# -- restricted structure checks ---------------------------------------------------------------

@dataclass
class LieReport:
    antisymmetric: bool
    jacobi: bool
    ad_pmap: bool
    additive: bool
    semilinear: bool
    failures: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.antisymmetric and self.jacobi and self.ad_pmap and self.additive and self.semilinear

    def to_json(self) -> dict:
        return {"antisymmetric": self.antisymmetric, "jacobi": self.jacobi, "ad_pmap": self.ad_pmap,
                "additive": self.additive, "semilinear": self.semilinear, "ok": self.ok,
                "failures": self.failures}


def verify_restricted(L: RestrictedLie, samples: int = 20, seed: int = 0) -> LieReport:
    """Lie axioms on all basis triples, ad(b^[p]) = (ad b)^p on the basis and on
    random elements, and the extended p-map's additivity and semilinearity on
    random samples (evaluated along a shuffled basis order)."""
    F, d, p = L.F, L.dim, L.p
    fails: dict = {}
    B = L.bracket
    anti = not np.any(F.add(B, B.transpose(1, 0, 2))) and not np.any(B[np.arange(d), np.arange(d)])
    jac = []
    for i, j, k in itertools.product(range(d), repeat=3):
        a, b, c = L.basis_vec(i), L.basis_vec(j), L.basis_vec(k)
        s = F.add(F.add(L.br(L.br(a, b), c), L.br(L.br(b, c), a)), L.br(L.br(c, a), b))
        if s.any():
            jac.append([i, j, k])
    adp = [i for i in range(d)
           if not np.array_equal(L.ad(L.pmap[i]), matrix_power(F, L.ad(L.basis_vec(i)), p))]
    rng = np.random.default_rng(seed)
    add_bad, lin_bad = 0, 0
    for _ in range(samples):
        a, b = F.random(rng, (d,)), F.random(rng, (d,))
        lam = int(F.random(rng, ()))
        ap = L.pmap_element(a)
        if not np.array_equal(L.ad(ap), matrix_power(F, L.ad(a), p)):
            adp.append(-1)
        perm = rng.permutation(d)
        # evaluate along a permuted basis order: the result must not depend on it
        alt = _pmap_in_order(L, a, perm)
        lhs = L.pmap_element(F.add(a, b))
        rhs = F.add(F.add(ap, L.pmap_element(b)), jacobson_sum(a, b, L))
        if not np.array_equal(lhs, rhs) or not np.array_equal(alt, ap):
            add_bad += 1
        if not np.array_equal(L.pmap_element(F.mul(a, lam)), F.mul(ap, F.s_pow(lam, p))):
            lin_bad += 1
    if jac:
        fails["jacobi"] = jac[:10]
    if adp:
        fails["ad_pmap"] = adp[:10]
    if add_bad:
        fails["additive"] = add_bad
    if lin_bad:
        fails["semilinear"] = lin_bad
    return LieReport(bool(anti), not jac, not adp, not add_bad, not lin_bad, fails)


def _pmap_in_order(L: RestrictedLie, v, order) -> np.ndarray:
    F = L.F
    acc = np.zeros(L.dim, dtype=np.int64)
    acc_p = np.zeros(L.dim, dtype=np.int64)
    for i in order:
        c = int(v[i])
        if not c:
            continue
        term = F.mul(L.basis_vec(i), c)
        acc_p = F.add(F.add(acc_p, F.mul(L.pmap[i], F.s_pow(c, L.p))), jacobson_sum(acc, term, L))
        acc = F.add(acc, term)
    return acc_p


def _ad_operator(L: RestrictedLie) -> np.ndarray:
    """Matrix of v -> ad(v) flattened: row i is ad(b_i).ravel()."""
    return np.stack([L.ad(L.basis_vec(i)).ravel() for i in range(L.dim)])


def solve_pmap(spec: FieldSpec, bracket) -> np.ndarray | None:
    """A p-map on the basis (any solution of ad(v_i) = (ad b_i)^p), or None."""
    L = RestrictedLie(spec, bracket, np.zeros((len(bracket), len(bracket)), dtype=np.int64))
    A = _ad_operator(L)
    rows = []
    for i in range(L.dim):
        target = matrix_power(L.F, L.ad(L.basis_vec(i)), L.p).ravel()
        v = solve_left(L.F, A, target)
        if v is None:
            return None
        rows.append(v)
    return np.array(rows)


def count_valid_pmaps(spec: FieldSpec, bracket) -> int:
    """Exhaustive count of basis p-maps satisfying ad(b_i^[p]) = (ad b_i)^p.

    Enumerates every candidate image vector for every basis element, so it
    is independent of the linear solve in :func:`solve_pmap`.
    """
    L = RestrictedLie(spec, bracket, np.zeros((len(bracket), len(bracket)), dtype=np.int64))
    F, d = L.F, L.dim
    cands = np.array(list(itertools.product(range(F.q), repeat=d)), dtype=np.int64)
    ads = np.stack([L.ad(c) for c in cands])
    total = 1
    for i in range(d):
        target = matrix_power(F, L.ad(L.basis_vec(i)), L.p)
        total *= int(np.sum(np.all(ads == target[None], axis=(1, 2))))
    return total


# -- enveloping algebra, catalog ---------------------------------------------------------------

def restricted_enveloping(L: RestrictedLie, name: str = ""):
    """u(L) with primitive generators, as a HopfAlgebra on PBW monomials."""
    from .hopf import build_hopf
    from .rewrite import Presentation, build_table

    rep = verify_restricted(L, samples=4)
    if not rep.ok:
        raise LieError(f"not a restricted Lie algebra: {rep.failures}")
    d = L.dim
    comm = {}
    for a, b in itertools.combinations(range(d), 2):
        vec = L.bracket[a, b]
        poly = {(l,): int(vec[l]) for l in np.flatnonzero(vec)}
        if poly:
            comm[(a, b)] = poly
    power = {g: {(l,): int(L.pmap[g, l]) for l in np.flatnonzero(L.pmap[g])} for g in range(d)}
    pres = Presentation(list(L.names), L.spec, comm, power, name or L.name)
    alg = build_table(pres)
    return build_hopf(alg, [_primitive_delta(alg, alg.basis_vec(g)) for g in alg.generators],
                      name=name or L.name)


def _primitive_delta(alg: FDAlgebra, v) -> np.ndarray:
    F = alg.F
    return F.add(F.mul(np.asarray(v)[:, None], alg.one[None, :]), F.mul(alg.one[:, None], np.asarray(v)[None, :]))


ABELIAN_PMAPS = {  # x, y, z images as {target: coeff}
    1: ({1: 1}, {2: 1}, {}),
    2: ({}, {2: 1}, {}),
    3: ({}, {}, {}),
    4: ({}, {}, {2: 1}),
    5: ({1: 1}, {}, {2: 1}),
    6: ({}, {1: 1}, {2: 1}),
    7: ({0: 1}, {1: 1}, {2: 1}),
}
HEISENBERG_PMAPS = {1: ({}, {}, {}), 2: ({}, {}, {2: 1}), 3: ({2: 1}, {}, {})}
AFFINE_PMAPS = {1: ({0: 1}, {}, {}), 2: ({0: 1}, {2: 1}, {2: 1}),
                3: ({0: 1}, {2: 1}, {}), 4: ({0: 1}, {}, {2: 1})}
LIE_KINDS = ("abelian", "heisenberg", "simple", "affine", "diagonal")


def lie_catalog(kind: str, variant: int | None, p: int, lam=None) -> RestrictedLie:
    """Three-dimensional restricted Lie algebras by bracket type and p-map variant.

    kinds: abelian (variants 1-7), heisenberg [x,y]=z (1-3), simple
    [x,y]=z, [x,z]=x, [y,z]=-y (p > 2), affine [x,y]=y (1-4) and diagonal
    [x,z]=lam x, [y,z]=lam^-1 y with lam^(p-1) = +-1 (``lam`` a Scalar or int).
    """
    spec = prime_field(p)
    if kind == "abelian":
        table, br = ABELIAN_PMAPS, {}
    elif kind == "heisenberg":
        table, br = HEISENBERG_PMAPS, {(0, 1): {2: 1}}
    elif kind == "affine":
        table, br = AFFINE_PMAPS, {(0, 1): {1: 1}}
    elif kind == "simple":
        if p == 2:
            raise LieError("the simple bracket type has no p-map in characteristic 2")
        br = {(0, 1): {2: 1}, (0, 2): {0: 1}, (1, 2): {1: p - 1}}
        return lie_from_brackets(spec, 3, br, {2: {2: 1}}, name="simple")
    elif kind == "diagonal":
        if lam is None:
            raise LieError("diagonal type needs lam")
        lam = lam if isinstance(lam, Scalar) else Scalar.of(spec, lam)
        spec = lam.spec
        if lam == 0:
            raise LieError("lam must be nonzero")
        delta = lam ** (p - 1)
        if delta != 1 and delta != -1:
            raise LieError("lam^(p-1) must be 1 or -1")
        br = {(0, 2): {0: lam}, (1, 2): {1: lam.inverse()}}
        return lie_from_brackets(spec, 3, br, {2: {2: delta}}, name=f"diagonal({lam})")
    else:
        raise LieError(f"unknown kind {kind!r}")
    if variant not in table:
        raise LieError(f"{kind} has variants {sorted(table)}")
    pm = {i: v for i, v in enumerate(table[variant]) if v}
    return lie_from_brackets(spec, 3, br, pm, name=f"{kind}({variant})")


def primitive_lie(H) -> tuple[RestrictedLie, np.ndarray]:
    """P(H) as a restricted Lie algebra, with its basis rows in H."""
    from .hopf import primitive_space
    P = primitive_space(H)
    F, d, p = H.F, P.dim, H.p
    B = np.zeros((d, d, d), dtype=np.int64)
    Pm = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            c = H.alg.commutator(P.rows[i], P.rows[j])
            if not P.contains(c):
                raise LieError("primitive space not closed under commutator")
            B[i, j] = P.coordinates(c)
        q = H.alg.power(P.rows[i], p)
        if not P.contains(q):
            raise LieError("primitive space not closed under p-th powers")
        Pm[i] = P.coordinates(q)
    return RestrictedLie(H.spec, B, Pm, name=f"P({H.name})"), P.rows


def lie_morphism_check(L1: RestrictedLie, L2: RestrictedLie, images) -> dict:
    """Does b_i -> images[i] preserve bracket and p-map (and is it bijective)?"""
    F = L2.F
    Phi = np.asarray(images, dtype=np.int64)
    br_ok = all(np.array_equal(F.matmul(L1.bracket[i, j][None], Phi)[0], L2.br(Phi[i], Phi[j]))
                for i in range(L1.dim) for j in range(L1.dim))
    pm_ok = all(np.array_equal(F.matmul(L1.pmap[i][None], Phi)[0], L2.pmap_element(Phi[i]))
                for i in range(L1.dim))
    bij = L1.dim == L2.dim and rank(F, Phi) == L1.dim
    return {"bracket": br_ok, "pmap": pm_ok, "bijective": bij, "ok": br_ok and pm_ok and bij}


# -- invariants ----------------------------------------------------------------------------------

def abelian_invariants(L: RestrictedLie) -> tuple[tuple[int, ...], int]:
    """(Jordan partition of the nilpotent part, toral rank) of the p-map.

    Over the prime field an abelian p-map is linear.  With k_i = dim ker P^i
    the number of nilpotent blocks of size >= i is k_i - k_{i-1}; the toral
    rank is the rank of P^dim.
    """
    if not L.is_abelian():
        raise LieError("abelian invariants need an abelian Lie algebra")
    if not L.spec.is_prime_field:
        raise LieError("abelian invariants are implemented over the prime field only")
    return pmap_matrix_invariants(L.F, L.pmap)


def pmap_matrix_invariants(F, P) -> tuple[tuple[int, ...], int]:
    d = P.shape[0]
    kdims = [0]
    Q = np.eye(d, dtype=np.int64)
    for _ in range(d):
        Q = F.matmul(Q, P)
        kdims.append(d - rank(F, Q))
    at_least = [kdims[i] - kdims[i - 1] for i in range(1, d + 1)]
    parts = []
    for size in range(d, 0, -1):
        more = at_least[size] if size < d else 0
        parts.extend([size] * (at_least[size - 1] - more))
    return tuple(parts), d - kdims[-1]


def partition_numbers(m: int) -> list[int]:
    P = [1] + [0] * m
    for part in range(1, m + 1):
        for n in range(part, m + 1):
            P[n] += P[n - part]
    return P


def partition_count(m: int) -> int:
    """N(m) = P(0) + ... + P(m)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return sum(partition_numbers(m))


def enumerate_abelian_classes(m: int, p: int) -> int:
    """Number of distinct abelian invariants over all p^(m^2) linear p-maps."""
    F = get_field(prime_field(p))
    seen = set()
    for flat in itertools.product(range(p), repeat=m * m):
        seen.add(pmap_matrix_invariants(F, np.array(flat, dtype=np.int64).reshape(m, m)))
    return len(seen)


def _all_elements(L: RestrictedLie, S: Subspace, limit: int = 20000):
    q = L.F.q
    if S.dim == 0:
        return np.zeros((1, L.dim), dtype=np.int64)
    if q ** S.dim > limit:
        return None
    coeffs = np.array(list(itertools.product(range(q), repeat=S.dim)), dtype=np.int64).reshape(-1, S.dim)
    return L.F.matmul(coeffs, S.rows)


def is_p_nilpotent(L: RestrictedLie, v) -> bool:
    v = np.asarray(v, dtype=np.int64)
    for _ in range(L.dim * L.spec.k + 1):
        if not v.any():
            return True
        v = L.pmap_element(v)
    return not v.any()


def derived_subalgebra(L: RestrictedLie) -> Subspace:
    d = L.dim
    return Subspace(L.F, d, L.bracket.reshape(d * d, d))


def lie_center(L: RestrictedLie) -> Subspace:
    from .linalg import left_kernel_dense
    d = L.dim
    A = np.concatenate([L.bracket[:, j, :] for j in range(d)], axis=1)
    return Subspace(L.F, d, left_kernel_dense(L.F, A), reduced=True)


def subspace_p_nilpotent(L: RestrictedLie, S: Subspace) -> bool:
    elems = _all_elements(L, S)
    if elems is None:
        elems = S.rows
    return all(is_p_nilpotent(L, v) for v in elems)


def pmap_image_span(L: RestrictedLie, S: Subspace | None = None) -> Subspace:
    """Span of {v^[p] : v in S}; exhaustive when S is small."""
    S = Subspace.full(L.F, L.dim) if S is None else S
    elems = _all_elements(L, S)
    if elems is None:
        elems = S.rows
    return Subspace(L.F, L.dim, np.stack([L.pmap_element(v) for v in elems]))


def lie_invariants(L: RestrictedLie) -> dict:
    D = derived_subalgebra(L)
    Z = lie_center(L)
    return {
        "derived_dim": D.dim,
        "center_dim": Z.dim,
        "pmap_image_dim": pmap_image_span(L).dim,
        "pmap_basis_image_dim": Subspace(L.F, L.dim, L.pmap).dim,
        "derived_pmap_image_dim": pmap_image_span(L, D).dim,
        "derived_p_nilpotent": subspace_p_nilpotent(L, D),
        "center_p_nilpotent": subspace_p_nilpotent(L, Z),
    }


# -- the diagonal family -------------------------------------------------------------------

def enumerate_c16_classes(p: int) -> dict:
    """Classes of the diagonal family under delta_1 = delta_2 and lam_2 in {lam_1, lam_1^-1}.

    Every lam in GF(p^2) with lam^(p-1) = +-1 is listed (all such lam lie in
    GF(p^2)).  The count under that equivalence is compared with p + 1.  The
    coarser count that also identifies lam with -lam (the substitution
    z -> -z) is reported alongside.
    """
    spec = build_extension(p, 2)
    F = get_field(spec)
    lams = []
    for c in range(1, F.q):
        lam = Scalar(spec, c)
        d = lam ** (p - 1)
        if d == 1 or d == -1:
            lams.append(lam)
    orbits = []
    seen = set()
    for lam in lams:
        if lam.code in seen:
            continue
        orb = sorted({lam.code, lam.inverse().code})
        seen.update(orb)
        orbits.append(orb)
    coarse = set()
    for lam in lams:
        coarse.add(min(x.code for x in (lam, lam.inverse(), -lam, (-lam).inverse())))
    delta = {o[0]: (Scalar(spec, o[0]) ** (p - 1)).code for o in orbits}
    expected = 1 if p == 2 else p + 1
    return {"p": p, "field": str(spec), "lambdas": [l.code for l in lams],
            "orbits": [{"lambdas": o, "delta": delta[o[0]]} for o in orbits],
            "count": len(orbits), "stated_count": expected,
            "agree": len(orbits) == expected,
            "count_with_sign_change": len(coarse)}
