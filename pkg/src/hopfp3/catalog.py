"""Catalog of connected Hopf algebras of dimension p^2 and p^3, the explicit
isomorphism maps between members of the two parametric families, identity
checks and the invariant report separating B2 from restricted enveloping
algebras."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import (TensorProductAlgebra, center, ideal_nilpotency, is_split_commutative_semisimple,
                      products, quotient_algebra)
from .field import FieldSpec, Scalar, additive_solve, build_extension, embed, get_field, prime_field, \
    root_of_unity
from .hopf import (HopfAlgebra, build_hopf, coradical_filtration, d1_injection_check, first_order,
                   graded_in_monomial_basis, grouplikes, hochschild_h2, hopf_morphism_check,
                   is_cocommutative, is_hopf_subspace, is_local, omega, omega_coefficients,
                   primitive_space, verify_axioms)
from .linalg import Subspace
from .rewrite import Presentation, build_table, check_associativity

X, Y, Z = 0, 1, 2

T210 = tuple(f"T210-{i}" for i in range(1, 9))
A_TYPES = tuple(f"A{i}" for i in range(1, 6))
B_TYPES = tuple(f"B{i}" for i in range(1, 4))
C_TYPES = tuple(f"C{i}" for i in range(1, 17))
FAMILIES = T210 + A_TYPES + B_TYPES + C_TYPES
ODD_ONLY = {"B3", "C6", "C15"}


class CatalogError(ValueError):
    pass


def _scalar(spec: FieldSpec, v) -> Scalar | None:
    if v is None:
        return None
    if isinstance(v, Scalar):
        return v if v.spec == spec else embed(v, spec)
    return Scalar.of(spec, v)


@dataclass(frozen=True)
class CatalogId:
    family: str
    p: int
    alpha: object = None
    beta: object = None
    lam: object = None
    spec: FieldSpec | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise CatalogError(f"unknown family {self.family!r}")
        if self.p not in (2, 3, 5, 7):
            raise CatalogError(f"p = {self.p} is not supported")
        if self.family in ODD_ONLY and self.p == 2:
            raise CatalogError(f"{self.family} requires p > 2")
        if self.family == "C16":
            lam = self.lam_scalar
            if lam == 0:
                raise CatalogError("C16 needs lam != 0")
            d = lam ** (self.p - 1)
            if d != 1 and d != -1:
                raise CatalogError("C16 needs lam^(p-1) = +-1")

    @property
    def field(self) -> FieldSpec:
        if self.spec is not None:
            return self.spec
        for v in (self.alpha, self.beta, self.lam):
            if isinstance(v, Scalar) and not v.spec.is_prime_field:
                return v.spec
        return prime_field(self.p)

    @property
    def lam_scalar(self) -> Scalar:
        return _scalar(self.field, 1 if self.lam is None else self.lam)

    def label(self) -> str:
        parts = [self.family, f"p={self.p}"]
        for key in ("alpha", "beta", "lam"):
            v = getattr(self, key)
            if v is not None:
                parts.append(f"{key}={v!r}" if isinstance(v, Scalar) else f"{key}={v}")
        if self.spec is not None and not self.spec.is_prime_field:
            parts.append(f"over {self.spec}")
        return " ".join(parts)

    def to_json(self) -> dict:
        out = {"family": self.family, "p": self.p}
        for key in ("alpha", "beta", "lam"):
            v = getattr(self, key)
            if v is not None:
                out[key] = v.to_json() if isinstance(v, Scalar) else int(v)
        out["field"] = self.field.to_json()
        return out


def applicable(family: str, p: int) -> bool:
    return not (family in ODD_ONLY and p == 2)


# -- presentations ---------------------------------------------------------------------------

def _poly(spec, terms):
    F = get_field(spec)
    out = {}
    for c, w in terms:
        code = F.element(c)
        if code:
            out[tuple(w)] = F.s_add(out.get(tuple(w), 0), code)
    return {w: c for w, c in out.items() if c}


def f_coefficients(p: int) -> list[int]:
    """Coefficients of x^i, i = 1..p-1, in f(x) = sum (-1)^(i-1) (p-i)^-1 x^i."""
    return [((-1) ** (i - 1) * pow(p - i, -1, p)) % p for i in range(1, p)]


def presentation(cid: CatalogId) -> Presentation:
    fam, p, spec = cid.family, cid.p, cid.field
    F = get_field(spec)
    x, y, z = (X,), (Y,), (Z,)
    px = lambda w, k: tuple(w) * k  # noqa: E731
    zero: dict = {}
    one = lambda w: _poly(spec, [(1, w)])  # noqa: E731
    if fam.startswith("T210"):
        i = int(fam.split("-")[1])
        gens = ["x", "y"]
        comm = {}
        pw = {1: (zero, zero), 2: (one(x), zero), 3: (one(y), zero), 4: (one(x), one(y)),
              5: (one(x), zero), 6: (zero, zero), 7: (zero, one(x)), 8: (one(x), one(y))}[i]
        if i == 5:
            comm = {(X, Y): one(y)}
        return Presentation(gens, spec, comm, {X: pw[0], Y: pw[1]}, fam)
    gens = ["x", "y", "z"]
    comm: dict = {}
    if fam == "A1":
        pw = (one(x), one(y), one(z))
    elif fam == "A2":
        alpha = _scalar(spec, cid.alpha or 0)
        pw = (zero, one(x), _poly(spec, [(1, y), (alpha, x)]))
    elif fam == "A3":
        pw = (zero, zero, zero)
    elif fam == "A4":
        pw = (zero, zero, one(x))
    elif fam == "A5":
        beta = _scalar(spec, cid.beta or 0)
        comm = {(Y, Z): one(x)}
        # z^p + x^(p-1) y - beta x = 0
        pw = (zero, zero, _poly(spec, [(-1, px(x, p - 1) + y), (beta, x)]))
    elif fam == "B1":
        comm = {(X, Y): one(y)}
        pw = (one(x), zero, zero)
    elif fam == "B2":
        comm = {(X, Y): one(y),
                (Y, Z): _poly(spec, [(c, y + px(x, i)) for i, c in enumerate(f_coefficients(p), 1)])}
        pw = (one(x), zero, one(z))
    elif fam == "B3":
        comm = {(X, Y): one(y), (X, Z): one(z), (Y, Z): one(y + y)}
        pw = (one(x), zero, zero)
    else:
        c = int(fam[1:])
        heis = {(X, Y): one(z)}
        aff = {(X, Y): one(y)}
        table = {
            1: ({}, (one(x), one(y), one(z))),
            2: ({}, (one(y), one(z), zero)),
            3: ({}, (zero, one(z), zero)),
            4: ({}, (zero, zero, zero)),
            5: (heis, (zero, zero, zero)),
            6: (heis, (one(z), zero, zero)),
            7: ({}, (zero, zero, one(z))),
            8: ({}, (one(y), zero, one(z))),
            9: ({}, (zero, one(y), one(z))),
            10: (heis, (zero, zero, one(z))),
            11: (aff, (one(x), zero, zero)),
            12: (aff, (one(x), one(z), zero)),
            13: (aff, (one(x), zero, one(z))),
            14: (aff, (one(x), one(z), one(z))),
            15: ({(X, Y): one(z), (X, Z): one(x), (Y, Z): _poly(spec, [(-1, y)])},
                 (zero, zero, one(z))),
        }
        if c == 16:
            lam = cid.lam_scalar
            delta = lam ** (p - 1)
            comm = {(X, Z): _poly(spec, [(lam, x)]), (Y, Z): _poly(spec, [(lam.inverse(), y)])}
            pw = (zero, zero, _poly(spec, [(delta, z)]))
        else:
            comm, pw = table[c]
    return Presentation(gens, spec, dict(comm), {X: pw[0], Y: pw[1], Z: pw[2]}, fam)


def _padd(f, g, sign=1):
    out = dict(f)
    for k, c in g.items():
        out[k] = out.get(k, 0) + sign * c
    return {k: c for k, c in out.items() if c}


def _pmul(f, g):
    out: dict = {}
    for k1, c1 in f.items():
        for k2, c2 in g.items():
            k = tuple(a + b for a, b in zip(k1, k2))
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _ppow(f, e):
    out = {(0, 0, 0, 0): 1}
    for _ in range(e):
        out = _pmul(out, f)
    return out


def _pdiv(f, d):
    assert all(c % d == 0 for c in f.values())
    return {k: c // d for k, c in f.items()}


@lru_cache(maxsize=None)
def witt_cocycle(p: int) -> tuple:
    """Integer terms (c, (a, b, c', d)) of the degree-two Witt addition
    correction, written in the coordinates x = w0, y = -w1, z = -w2 so that
    Delta(y) = y (x) 1 + 1 (x) y + omega(x).  A term stands for
    x^a y^b (x) x^c' y^d."""
    X0, Y0 = {(1, 0, 0, 0): 1}, {(0, 0, 1, 0): 1}
    X1, Y1 = {(0, 1, 0, 0): -1}, {(0, 0, 0, 1): -1}
    S0 = _padd(X0, Y0)
    S1 = _padd(_padd(X1, Y1), _pdiv(_padd(_padd(_ppow(X0, p), _ppow(Y0, p)), _ppow(S0, p), -1), p))
    t1 = _padd(_padd(_ppow(X0, p * p), _ppow(Y0, p * p)), _ppow(S0, p * p), -1)
    t2 = _padd(_padd(_ppow(X1, p), _ppow(Y1, p)), _ppow(S1, p), -1)
    total = _pdiv(_padd(t1, {k: p * c for k, c in t2.items()}), p * p)
    return tuple(sorted((-c, k) for k, c in total.items() if c % p))


def _prim(T: TensorProductAlgebra, v) -> np.ndarray:
    return T.F.add(T.pure(v, T.A.one), T.pure(T.A.one, v))


def coproducts(alg, family: str) -> list[np.ndarray]:
    """Delta on the generators: primitive part plus the family's Y and Z."""
    T = TensorProductAlgebra(alg, alg)
    F, p = alg.F, alg.spec.p
    gens = [alg.basis_vec(g) for g in alg.generators]
    out = [_prim(T, g) for g in gens]
    if family in ("T210-6", "T210-7", "T210-8") or family in A_TYPES:
        out[1] = F.add(out[1], omega(alg, gens[0]))
    if family == "A1":
        out[2] = F.add(out[2], a1_cocycle(alg))
    elif family in A_TYPES:
        wx, wy = omega(alg, gens[0]), omega(alg, gens[1])
        Zt = F.add(T.mul(wx, T.power(_prim(T, gens[1]), p - 1)), wy)
        out[2] = F.add(out[2], Zt)
    elif family == "B1":
        out[2] = F.add(out[2], omega(alg, gens[1]))
    elif family == "B2":
        out[2] = F.add(out[2], omega(alg, gens[0]))
    elif family == "B3":
        out[2] = F.sub(out[2], F.mul(T.pure(gens[0], gens[1]), 2 % p))
    return out


def a1_cocycle(alg) -> np.ndarray:
    """Z for A1: the Witt vector addition cocycle (dual of the cyclic group of order p^3)."""
    F = alg.F
    x, y = alg.basis_vec(alg.generators[0]), alg.basis_vec(alg.generators[1])
    T = TensorProductAlgebra(alg, alg)
    out = np.zeros((alg.dim, alg.dim), dtype=np.int64)
    for c, (a, b, c2, d) in witt_cocycle(alg.spec.p):
        left = alg.mul(alg.power(x, a), alg.power(y, b))
        right = alg.mul(alg.power(x, c2), alg.power(y, d))
        out = F.add(out, F.mul(T.pure(left, right), c % alg.spec.p))
    return out


def a1_printed_cocycle(alg) -> np.ndarray:
    """omega(x)[y (x) 1 + 1 (x) y + omega(x)]^(p-1) + omega(y); coassociative
    only for p = 2, kept for comparison."""
    T = TensorProductAlgebra(alg, alg)
    F, p = alg.F, alg.spec.p
    x, y = alg.basis_vec(alg.generators[0]), alg.basis_vec(alg.generators[1])
    wx = omega(alg, x)
    return F.add(T.mul(wx, T.power(F.add(_prim(T, y), wx), p - 1)), omega(alg, y))


@lru_cache(maxsize=256)
def build(cid: CatalogId) -> HopfAlgebra:
    """The catalog member as a verified-on-construction Hopf algebra.

    The coproduct is checked against every defining relation and the antipode
    is solved and checked; run :func:`hopf.verify_axioms` for the full axiom
    report.
    """
    pres = presentation(cid)
    alg = build_table(pres)
    H = build_hopf(alg, coproducts(alg, cid.family), name=cid.family)
    H.meta["id"] = cid.to_json()
    return H


def catalog_ids(p: int, include_params: bool = True) -> list[CatalogId]:
    """Every constructible member at p in fixed order (A5 with beta 0 and 1)."""
    out = []
    for fam in FAMILIES:
        if not applicable(fam, p):
            continue
        if fam == "A5" and include_params:
            out.extend([CatalogId("A5", p, beta=0), CatalogId("A5", p, beta=1)])
        elif fam == "C16":
            out.append(CatalogId("C16", p, lam=1))
        else:
            out.append(CatalogId(fam, p))
    return out


# -- subspaces used by the inclusion checks ---------------------------------------------------------

def monomial_span(H: HopfAlgebra, ngens: int) -> Subspace:
    """Span of the normal monomials in the first ``ngens`` generators."""
    n = H.p**ngens
    return Subspace(H.F, H.dim, np.eye(H.dim, dtype=np.int64)[:n], reduced=True)


def generated_subalgebra(H: HopfAlgebra, rows) -> Subspace:
    S = Subspace(H.F, H.dim, np.concatenate([H.alg.one[None], np.asarray(rows).reshape(-1, H.dim)]))
    while True:
        nxt = Subspace(H.F, H.dim, np.concatenate([S.rows, products(H.alg, S.rows, S.rows)]))
        if nxt.dim == S.dim:
            return S
        S = nxt


def primitive_subalgebra(H: HopfAlgebra) -> Subspace:
    """u(P(H)) inside H: the subalgebra generated by the primitives."""
    return generated_subalgebra(H, primitive_space(H).rows)


# -- isomorphism maps ---------------------------------------------------------------------------------

def _common_spec(p: int, values, base: FieldSpec | None = None) -> FieldSpec:
    spec = base or prime_field(p)
    for v in values:
        if isinstance(v, Scalar) and v.spec.k > spec.k:
            spec = v.spec
    return spec


def iso_map_A(p: int, beta_prime, beta, gamma, a=0, b=0, spec: FieldSpec | None = None) -> dict:
    """The map phi: A(beta') -> A(beta) with
    x' -> g x, y' -> g^p y + a x, z' -> g^(p^2) z + M + a^p y + b x,
    M = sum_i binom(p, i)/p (g^p y)^i (a x)^(p-i).

    Reports the closed-form scalar conditions and the independent Hopf
    morphism check.
    """
    spec = _common_spec(p, (beta_prime, beta, gamma, a, b), spec)
    bp, bt, g, a, b = (_scalar(spec, v) for v in (beta_prime, beta, gamma, a, b))
    if g == 0:
        raise CatalogError("gamma must be nonzero")
    src = build(CatalogId("A5", p, beta=bp, spec=spec))
    dst = build(CatalogId("A5", p, beta=bt, spec=spec))
    alg, F = dst.alg, dst.F
    x, y, z = (alg.basis_vec(i) for i in alg.generators)
    gy = F.mul(y, (g ** p).code)
    ax = F.mul(x, a.code)
    M = np.zeros(alg.dim, dtype=np.int64)
    for i, c in enumerate(omega_coefficients(p), 1):
        M = F.add(M, F.mul(alg.mul(alg.power(gy, i), alg.power(ax, p - i)), c))
    imgs = [F.mul(x, g.code), F.add(gy, ax),
            F.add(F.add(F.add(F.mul(z, (g ** (p * p)).code), M), F.mul(y, (a ** p).code)), F.mul(x, b.code))]
    check = hopf_morphism_check(src, dst, imgs)
    # closed-form conditions, evaluated in A(beta)
    zp = alg.power(z, p)
    if p > 2:
        phi_zp = F.mul(zp, (g ** p**3).code)
    else:
        phi_zp = F.add(F.mul(zp, (g ** 8).code), F.mul(x, ((g ** 4) * a * a).code))
    g2 = g ** (2 * p - 1)
    resid = F.add(F.sub(phi_zp, F.mul(zp, g2.code)), F.mul(x, (bt * g2 - bp * g).code))
    cond_root = (g ** (p * p + p - 1)) == 1
    cond_elem = not resid.any()
    out = {"p": p, "field": str(spec), "beta_prime": bp.to_json(), "beta": bt.to_json(),
           "gamma": gamma_json(g), "a": a.to_json(), "b": b.to_json(),
           "root_condition": bool(cond_root), "element_condition": bool(cond_elem),
           "closed_form_valid": bool(cond_root and cond_elem),
           "morphism": check, "valid": check["ok"]}
    if p > 2:
        out["beta_relation"] = bool(bp == bt * g ** (2 * p - 2))
    return out


def gamma_json(g: Scalar):
    return g.to_json()


def find_iso_A(p: int, beta_prime, beta) -> dict:
    """Search a witness phi: A(beta') -> A(beta) over the field holding the
    (p^2+p-1)-th roots of unity.  Returns the first witness found (smallest
    exponent of the chosen generator) or reports that none exists."""
    n = p * p + p - 1
    spec, g0 = root_of_unity(p, n)
    spec = _common_spec(p, (beta_prime, beta), spec)
    g0 = _scalar(spec, g0)
    bp, bt = _scalar(spec, beta_prime), _scalar(spec, beta)
    tried = 0
    for e in range(n):
        g = g0 ** e
        if p == 2:
            c = bp * (g ** 3).inverse() - bt * g.inverse()
            a = c.frobenius(spec.k - 1)  # square root in characteristic 2
            b = Scalar.of(spec, 0)
        else:
            if bp != bt * g ** (2 * p - 2):
                continue
            a = b = Scalar.of(spec, 0)
        tried += 1
        res = iso_map_A(p, bp, bt, g, a, b, spec)
        if res["valid"]:
            return {"found": True, "field": str(spec), "root_order": n, "exponent": e,
                    "witness": {"gamma": g.to_json(), "a": a.to_json(), "b": b.to_json()},
                    "candidates_tried": tried, "result": res}
    return {"found": False, "field": str(spec), "root_order": n, "candidates_tried": tried}


def symmetric_witness(p: int, beta_prime, beta) -> dict:
    """Check that a witness in one direction yields one in the other."""
    fwd = find_iso_A(p, beta_prime, beta)
    back = find_iso_A(p, beta, beta_prime)
    out = {"forward": fwd["found"], "backward": back["found"], "ok": fwd["found"] == back["found"]}
    if fwd["found"] and p > 2:
        spec = build_extension(p, root_of_unity(p, p * p + p - 1)[0].k)
        g = Scalar.from_coeffs(spec, fwd["witness"]["gamma"]) if spec.k > 1 else \
            Scalar.of(spec, fwd["witness"]["gamma"])
        inv = iso_map_A(p, beta, beta_prime, g.inverse(), 0, 0, spec)
        out["inverse_gamma_valid"] = inv["valid"]
        out["ok"] = out["ok"] and inv["valid"]
    return out


H_CONDITIONS = ("a^2 - a", "a^p - a", "a^(p^2) - a")


def iso_map_H(p: int, alpha_prime, alpha, a, spec: FieldSpec | None = None) -> dict:
    """psi: H(alpha') -> H(alpha), x' -> x, y' -> y + a x,
    z' -> z + sum_i binom(p, i)/p y^i (a x)^(p-i) + a^p y."""
    spec = _common_spec(p, (alpha_prime, alpha, a), spec)
    ap, al, a = (_scalar(spec, v) for v in (alpha_prime, alpha, a))
    src = build(CatalogId("A2", p, alpha=ap, spec=spec))
    dst = build(CatalogId("A2", p, alpha=al, spec=spec))
    alg, F = dst.alg, dst.F
    x, y, z = (alg.basis_vec(i) for i in alg.generators)
    ax = F.mul(x, a.code)
    S = np.zeros(alg.dim, dtype=np.int64)
    for i, c in enumerate(omega_coefficients(p), 1):
        S = F.add(S, F.mul(alg.mul(alg.power(y, i), alg.power(ax, p - i)), c))
    imgs = [x, F.add(y, ax), F.add(F.add(z, S), F.mul(y, (a ** p).code))]
    check = hopf_morphism_check(src, dst, imgs)
    diff = ap - al
    conds = {H_CONDITIONS[0]: a * a - a == diff, H_CONDITIONS[1]: a ** p - a == diff,
             H_CONDITIONS[2]: a ** (p * p) - a == diff}
    return {"p": p, "field": str(spec), "alpha_prime": ap.to_json(), "alpha": al.to_json(),
            "a": a.to_json(), "conditions": {k: bool(v) for k, v in conds.items()},
            "morphism": check, "valid": check["ok"]}


def iso_H_field(p: int) -> FieldSpec:
    """GF(p^(2p)): contains the roots of a^2 - a = c, a^p - a = c and
    a^(p^2) - a = c for every c in GF(p)."""
    return build_extension(p, 2 * p)


def resolve_iso_H(p: int, alpha_prime=1, alpha=0) -> dict:
    """Determine which scalar condition on a makes psi an isomorphism.

    For each candidate condition every root a in the working field is tested
    with the morphism check, and the set of all valid a is compared with each
    candidate's root set.
    """
    spec = iso_H_field(p)
    F = get_field(spec)
    ap, al = _scalar(spec, alpha_prime), _scalar(spec, alpha)
    diff = ap - al
    roots = {
        H_CONDITIONS[0]: [Scalar(spec, c) for c in range(F.q)
                          if Scalar(spec, c) * Scalar(spec, c) - Scalar(spec, c) == diff],
        H_CONDITIONS[1]: additive_solve(diff, {1: 1, 0: p - 1}),
        H_CONDITIONS[2]: additive_solve(diff, {2: 1, 0: p - 1}),
    }
    results = {}
    tested = {}
    for name, rs in roots.items():
        verdicts = []
        for a in rs:
            if a.code not in tested:
                tested[a.code] = iso_map_H(p, ap, al, a, spec)["valid"]
            verdicts.append(tested[a.code])
        results[name] = {"roots": len(rs), "valid_roots": int(sum(verdicts)),
                         "validates": bool(rs) and all(verdicts)}
    validating = [k for k, v in results.items() if v["validates"]]
    witness = None
    for name in validating:
        a = roots[name][0]
        witness = {"condition": name, "a": a.to_json()}
        break
    return {"p": p, "field": str(spec), "alpha_prime": ap.to_json(), "alpha": al.to_json(),
            "conditions": results, "validating_conditions": validating, "witness": witness,
            "found": witness is not None}


# -- identities --------------------------------------------------------------------------------------

def _tensor_pair(alg):
    return TensorProductAlgebra(alg, alg)


def identity_suite(p: int, families=None) -> list[dict]:
    """Exact evaluation of the structural identities used by the classification.

    ``families`` restricts the run to identities living in those catalog members.
    """
    out = []
    want = (lambda fam: True) if families is None else (lambda fam: fam in families)  # noqa: E731

    def rec(name, ok, **detail):
        out.append({"name": name, "ok": bool(ok), **detail})

    if want("T210-5"):
        _identities_k(p, rec)
    for fam in ("A2", "A3", "A4", "A5"):
        if want(fam):
            _identities_a(p, fam, rec)
    if want("A1"):
        H = build(CatalogId("A1", p))
        rec("A1: x is central", center_contains(H, H.alg.basis_vec(H.alg.generators[0])), family="A1")
        rec("A1: span of x, y monomials is a Hopf subalgebra",
            is_hopf_subspace(H, monomial_span(H, 2))["ok"], family="A1")
    if want("B2"):
        _identities_b2(p, rec)
    if p > 2 and want("B3"):
        H = build(CatalogId("B3", p))
        zp = H.alg.power(H.alg.basis_vec(H.alg.generators[2]), p)
        rec("B3: z^p is primitive", not H.reduced_delta(zp).any(), family="B3")
    return out


def _identities_k(p, rec):
    F = get_field(prime_field(p))
    # noncommutative p^2-dimensional K: [x, y] = y, x^p = x, y^p = 0
    K = build(CatalogId("T210-5", p))
    A = K.alg
    T = _tensor_pair(A)
    x, y = A.basis_vec(A.generators[0]), A.basis_vec(A.generators[1])
    dx, dy = _prim(T, x), _prim(T, y)
    wy, wx = omega(A, y), omega(A, x)
    comm = lambda U, V: F.sub(T.mul(U, V), T.mul(V, U))  # noqa: E731
    rec("Delta(x) commutes with omega(y) in K(x)K", not comm(dx, wy).any(), family="T210-5")
    fx = np.zeros(A.dim, dtype=np.int64)
    for i, c in enumerate(f_coefficients(p), 1):
        fx = F.add(fx, F.mul(A.power(x, i), c))
    yf = A.mul(y, fx)
    rhs = K.reduced_delta(yf)
    rec("[Delta(y), omega(x)] equals the reduced coproduct of y f(x)",
        np.array_equal(comm(dy, wx), rhs), family="T210-5")


def _identities_a(p, fam, rec):
    """A-types with x^p = 0: [y, z] = c x and the primitive correction of z^p."""
    F = get_field(prime_field(p))
    cid = CatalogId(fam, p, beta=1) if fam == "A5" else CatalogId(fam, p)
    H = build(cid)
    al = H.alg
    xv, yv, zv = (al.basis_vec(i) for i in al.generators)
    yz = al.commutator(yv, zv)
    g = int(yz[al.generators[0]])
    rec(f"{fam}: [y, z] is a multiple of x", np.array_equal(yz, F.mul(xv, g)), family=fam, gamma=g)
    w = F.add(al.power(zv, p), F.mul(al.mul(al.power(xv, p - 1), yv), F.s_pow(g, p - 1)))
    rec(f"{fam}: z^p + c^(p-1) x^(p-1) y has coproduct correction omega(y^p)",
        np.array_equal(H.reduced_delta(w), omega(al, al.power(yv, p))), family=fam)
    rec(f"{fam}: x is central", center_contains(H, xv), family=fam)
    rec(f"{fam}: span of x, y monomials is a Hopf subalgebra",
        is_hopf_subspace(H, monomial_span(H, 2))["ok"], family=fam)
    if fam == "A5":
        bad = []
        for m in range(1, p):
            for n in range(1, p):
                lhs = al.power(yv, m)
                for _ in range(n):
                    lhs = al.commutator(lhs, zv)
                if m >= n:
                    coef = F.s_mul(math.perm(m, n) % p, F.s_pow(g, n))
                    rhs = F.mul(al.mul(al.power(xv, n), al.power(yv, m - n)), coef)
                else:
                    rhs = np.zeros(al.dim, dtype=np.int64)
                if not np.array_equal(lhs, rhs):
                    bad.append([m, n])
        rec("A5: iterated ad z on powers of y", not bad, family=fam, failures=bad)


def _identities_b2(p, rec):
    """Commutation identities in B2."""
    F = get_field(prime_field(p))
    H = build(CatalogId("B2", p))
    al = H.alg
    xv, yv, zv = (al.basis_vec(i) for i in al.generators)
    fx = np.zeros(al.dim, dtype=np.int64)
    for i, c in enumerate(f_coefficients(p), 1):
        fx = F.add(fx, F.mul(al.power(xv, i), c))
    yf_powers = [al.one]
    for k in range(p):
        yf_powers.append(al.mul(yf_powers[-1], fx))
    x1 = F.add(xv, al.one)
    for n in range(1, p):
        yn = al.power(yv, n)
        rec(f"B2: [x, y^{n}] = {n} y^{n}", np.array_equal(al.commutator(xv, yn), F.mul(yn, n % p)),
            family="B2")
        rhs = F.neg(al.mul(yv, F.sub(al.power(x1, n), al.power(xv, n))))
        rec(f"B2: [y, x^{n}] = -y((x+1)^{n} - x^{n})", np.array_equal(al.commutator(yv, al.power(xv, n)), rhs),
            family="B2")
        rhs = np.zeros(al.dim, dtype=np.int64)
        for k in range(1, n + 1):
            term = al.mul(al.mul(al.power(zv, n - k), yv), yf_powers[k])
            rhs = F.add(rhs, F.mul(term, math.comb(n, k) % p))
        rec(f"B2: [y, z^{n}] = sum_k binom({n}, k) z^({n}-k) y f^k",
            np.array_equal(al.commutator(yv, al.power(zv, n)), rhs), family="B2")


def center_contains(H: HopfAlgebra, v) -> bool:
    return all(np.array_equal(H.alg.mul(v, H.alg.basis_vec(i)), H.alg.mul(H.alg.basis_vec(i), v))
               for i in range(H.dim))


# -- invariants and the separation of B2 -------------------------------------------------------------------

def algebra_center(H: HopfAlgebra) -> Subspace:
    return center(H.alg, [H.alg.basis_vec(g) for g in H.alg.generators])


def radical_candidate(H: HopfAlgebra, gen_names) -> dict:
    """Ideal generated by the named generators: nilpotency and the quotient."""
    al = H.alg
    gens = [al.gen(n).vec for n in gen_names]
    res = ideal_nilpotency(al, np.array(gens))
    Q = quotient_algebra(al, res.ideal)
    split = is_split_commutative_semisimple(Q) if H.spec.is_prime_field else None
    return {"generators": list(gen_names), "ideal_dim": res.ideal.dim, "nilpotent": bool(res.nilpotent),
            "index": res.index, "quotient_dim": Q.dim, "quotient_split": split}


def member_row(cid: CatalogId, h2_max_dim: int = 27) -> dict:
    H = build(cid)
    ax = verify_axioms(H)
    P = primitive_space(H)
    filt = coradical_filtration(H)
    row = {"id": cid.to_json(), "label": cid.label(), "dim": H.dim, "axioms": ax.to_json(),
           "primitive_dim": P.dim, "commutative": H.alg.is_commutative(),
           "cocommutative": is_cocommutative(H), "center_dim": algebra_center(H).dim,
           "locality": is_local(H), "grouplikes": len(grouplikes(H)),
           "connected": filt.connected, "coradical_dims": filt.dims(),
           "hash": H.content_hash()}
    K = primitive_subalgebra(H)
    fo = first_order(H, K)
    row["primitive_subalgebra_dim"] = K.dim
    row["first_order_of_primitive_subalgebra"] = None if fo == math.inf else int(fo)
    if H.dim <= h2_max_dim:
        h2 = hochschild_h2(H)
        row["h2_dim"] = h2.dim
        row["d2_d1_zero"] = h2.complex_ok
    return row


def distinguishing_report(p: int) -> dict:
    """Invariants separating B2 from every restricted enveloping algebra."""
    from .lie import is_p_nilpotent, primitive_lie

    rows = {}
    for fam in ("B2",) + C_TYPES:
        if not applicable(fam, p):
            continue
        cid = CatalogId(fam, p, lam=1) if fam == "C16" else CatalogId(fam, p)
        H = build(cid)
        rows[fam] = {"center_dim": algebra_center(H).dim, "locality": is_local(H),
                     "commutative": H.alg.is_commutative(), "cocommutative": is_cocommutative(H),
                     "primitive_dim": primitive_space(H).dim}
    b2 = radical_candidate(build(CatalogId("B2", p)), ["y"])
    c16 = radical_candidate(build(CatalogId("C16", p, lam=1)), ["x", "y"])
    rows["B2"]["radical_candidate"] = b2
    rows["C16"]["radical_candidate"] = c16
    checks = {
        "B2 center is trivial": rows["B2"]["center_dim"] == 1,
        "C1-C14 centers are nontrivial": all(rows[f"C{i}"]["center_dim"] >= 2 for i in range(1, 15)
                                             if f"C{i}" in rows),
        "B2 ideal (y) nilpotent": b2["nilpotent"],
        "B2 quotient by (y) is split commutative": bool(b2["quotient_split"]),
        "B2 quotient by (y) has dimension 2p": b2["quotient_dim"] == 2 * p,
        "C16 ideal (x, y) nilpotent": c16["nilpotent"],
        "C16 quotient by (x, y) has dimension p": c16["quotient_dim"] == p,
        "C16 quotient is split commutative": bool(c16["quotient_split"]),
        "B2 and C16 quotients differ in dimension": b2["quotient_dim"] != c16["quotient_dim"],
    }
    if p > 2:
        L, basis = primitive_lie(build(CatalogId("C15", p)))
        H = build(CatalogId("C15", p))
        zc = Subspace(H.F, H.dim, basis).coordinates(H.alg.gen("z").vec)
        from .lie import derived_subalgebra
        D = derived_subalgebra(L)
        checks["C15: z lies in [g, g]"] = D.contains(zc)
        checks["C15: z is not p-nilpotent"] = not is_p_nilpotent(L, zc)
    return {"p": p, "rows": rows, "checks": checks, "ok": all(checks.values())}


# -- associated graded of the A(beta) family ---------------------------------------------------------

def graded_A_report(p: int, betas=(0, 1)) -> dict:
    """gr A(beta) in the monomial class basis, compared across beta and with
    the commutative presentation x^p = y^p = z^p = 0 carrying the same coproduct."""
    ref = build(CatalogId("A3", p))
    tabs = []
    for beta in betas:
        G = graded_in_monomial_basis(build(CatalogId("A5", p, beta=beta)))
        tabs.append(G)
    same = all(np.array_equal(tabs[0].alg.M, G.alg.M) and np.array_equal(tabs[0].D, G.D) for G in tabs)
    match = all(np.array_equal(ref.alg.M, G.alg.M) and np.array_equal(ref.D, G.D)
                and np.array_equal(ref.counit, G.counit) for G in tabs)
    axioms = all(verify_axioms(G).ok for G in tabs)
    return {"p": p, "betas": list(betas), "identical_across_beta": bool(same),
            "matches_truncated_polynomial_presentation": bool(match), "graded_axioms": bool(axioms),
            "ok": bool(same and match and axioms)}


# -- inclusions -----------------------------------------------------------------------------------------

def inclusion_checks(p: int) -> list[dict]:
    """d1 injection for F in H (A-types) and K in F (the p^2 building blocks)."""
    out = []
    for cid in [CatalogId(f, p) for f in ("A1", "A2", "A3", "A4")] + [CatalogId("A5", p, beta=b) for b in (0, 1)]:
        H = build(cid)
        res = d1_injection_check(H, monomial_span(H, 2))
        out.append({"inclusion": f"F in {cid.label()}", **res})
    for fam in ("T210-6", "T210-7", "T210-8"):
        H = build(CatalogId(fam, p))
        res = d1_injection_check(H, monomial_span(H, 1))
        out.append({"inclusion": f"K in {fam} p={p}", **res})
    return out


def primitive_first_orders(p: int) -> dict:
    out = {}
    for cid in catalog_ids(p):
        H = build(cid)
        fo = first_order(H, primitive_subalgebra(H))
        out[cid.label()] = None if fo == math.inf else int(fo)
    return out


def associativity_report(cid: CatalogId, mode: str = "full", samples: int = 10**5, seed: int = 0) -> dict:
    return check_associativity(build(cid).alg, mode=mode, samples=samples, seed=seed).to_json()


# -- restricted Lie algebras and their enveloping algebras ---------------------------------------------

LIE_TO_C = {("abelian", 1): "C2", ("abelian", 2): "C3", ("abelian", 3): "C4", ("abelian", 4): "C7",
            ("abelian", 5): "C8", ("abelian", 6): "C9", ("abelian", 7): "C1",
            ("heisenberg", 1): "C5", ("heisenberg", 2): "C10", ("heisenberg", 3): "C6",
            ("simple", None): "C15", ("affine", 1): "C11", ("affine", 2): "C14",
            ("affine", 3): "C12", ("affine", 4): "C13", ("diagonal", None): "C16"}


def enveloping_matches_catalog(p: int) -> dict:
    """u(L) for each three-dimensional L against the matching C-type, table for table."""
    from .lie import lie_catalog, restricted_enveloping

    out = {}
    for (kind, var), fam in LIE_TO_C.items():
        if not applicable(fam, p):
            continue
        L = lie_catalog(kind, var, p, lam=1 if kind == "diagonal" else None)
        U = restricted_enveloping(L, name=fam)
        H = build(CatalogId(fam, p, lam=1) if fam == "C16" else CatalogId(fam, p))
        same = (np.array_equal(U.alg.M, H.alg.M) and np.array_equal(U.D, H.D)
                and np.array_equal(U.counit, H.counit))
        out[f"{kind}({var})" if var else kind] = {"family": fam, "identical": bool(same)}
    return out


def lie_classification_checks(p: int) -> dict:
    """Exact checks on the three-dimensional restricted Lie algebras."""
    from .lie import (abelian_invariants, count_valid_pmaps, enumerate_abelian_classes, enumerate_c16_classes,
                      lie_catalog, lie_invariants, lie_morphism_check, partition_count, solve_pmap,
                      verify_restricted, LieError)

    out: dict = {"p": p}
    ab = {}
    for v in range(1, 8):
        L = lie_catalog("abelian", v, p)
        part, tor = abelian_invariants(L)
        ab[str(v)] = {"valid": verify_restricted(L).ok, "partition": list(part), "toral_rank": tor}
    out["abelian"] = ab
    out["abelian_distinct_classes"] = len({(tuple(r["partition"]), r["toral_rank"]) for r in ab.values()})
    out["partition_counts"] = {str(m): partition_count(m) for m in range(4)}
    out["enumerated_abelian_classes"] = {str(m): enumerate_abelian_classes(m, p) for m in range(1, 4)}
    heis = {}
    for v in (1, 2, 3):
        L = lie_catalog("heisenberg", v, p)
        inv = lie_invariants(L)
        heis[str(v)] = {"valid": verify_restricted(L).ok, "pmap_image_dim": inv["pmap_image_dim"],
                        "center_p_nilpotent": inv["center_p_nilpotent"]}
    out["heisenberg"] = heis
    if p == 2:
        L1, L3 = lie_catalog("heisenberg", 1, p), lie_catalog("heisenberg", 3, p)
        imgs = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]], dtype=np.int64)  # x -> x + y
        out["heisenberg_3_to_1_via_x_plus_y"] = lie_morphism_check(L3, L1, imgs)["ok"]
    else:
        keys = {(r["pmap_image_dim"], r["center_p_nilpotent"]) for r in heis.values()}
        out["heisenberg_variants_distinguished"] = len(keys) == 3
    br = np.zeros((3, 3, 3), dtype=np.int64)
    for (i, j), (l, c) in {(0, 1): (2, 1), (0, 2): (0, 1), (1, 2): (1, p - 1)}.items():
        br[i, j, l] = c % p
        br[j, i, l] = (-c) % p
    out["simple_pmap_count"] = count_valid_pmaps(prime_field(p), br)
    out["simple_pmap_solvable"] = solve_pmap(prime_field(p), br) is not None
    if p > 2:
        out["simple_valid"] = verify_restricted(lie_catalog("simple", None, p)).ok
    else:
        try:
            lie_catalog("simple", None, p)
            out["simple_rejected"] = False
        except LieError:
            out["simple_rejected"] = True
    aff = {}
    for v in (1, 2, 3, 4):
        L = lie_catalog("affine", v, p)
        aff[str(v)] = {"valid": verify_restricted(L).ok, **lie_invariants(L)}
    out["affine"] = aff
    out["diagonal_classes"] = enumerate_c16_classes(p)
    out["enveloping_matches"] = enveloping_matches_catalog(p)
    return out
