import numpy as np
import pytest
from hypothesis import given, strategies as st

from hopfp3.catalog import CatalogId, LIE_TO_C, build, catalog_ids, enveloping_matches_catalog, presentation
from hopfp3.field import get_field, prime_field
from hopfp3.lie import (LieError, RestrictedLie, abelian_invariants, count_valid_pmaps, enumerate_abelian_classes,
                        enumerate_c16_classes, jacobson_si, jacobson_sum, jacobson_sum_batch, lie_catalog,
                        lie_invariants, lie_morphism_check, partition_count, power_batch, primitive_lie,
                        restricted_enveloping, solve_pmap, verify_restricted)
from hopfp3.linalg import invert, rank
from hopfp3.rewrite import build_table


def member_algebra(data, p):
    cid = data.draw(st.sampled_from(catalog_ids(p)))
    return build_table(presentation(cid))


@pytest.mark.parametrize("p", [2, 3])
def test_jacobson_batch_against_direct_powers(p):
    for cid in catalog_ids(p):
        alg = build_table(presentation(cid))
        F = alg.F
        rng = np.random.default_rng(p)
        X, Y = F.random(rng, (64, alg.dim)), F.random(rng, (64, alg.dim))
        lhs = power_batch(alg, F.add(X, Y), p)
        rhs = F.add(F.add(power_batch(alg, X, p), power_batch(alg, Y, p)), jacobson_sum_batch(alg, X, Y))
        assert np.array_equal(lhs, rhs), cid.label()


@given(st.data())
def test_jacobson_scalar_matches_batch(data):
    p = data.draw(st.sampled_from([2, 3]))
    alg = member_algebra(data, p)
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=alg.dim, max_size=alg.dim)))
    y = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=alg.dim, max_size=alg.dim)))
    s = jacobson_sum(x, y, alg)
    assert np.array_equal(s, jacobson_sum_batch(alg, x[None], y[None])[0])
    # (x + y)^p = x^p + y^p + sum s_i, computed by plain repeated multiplication
    F = alg.F
    assert np.array_equal(alg.power(F.add(x, y), p), F.add(F.add(alg.power(x, p), alg.power(y, p)), s))
    # (ad x)^p y = [x^p, y]
    ad = y
    for _ in range(p):
        ad = alg.commutator(x, ad)
    assert np.array_equal(ad, alg.commutator(alg.power(x, p), y))


def test_jacobson_p2_is_the_commutator():
    alg = build_table(presentation(CatalogId("C10", 2)))
    x, y = alg.gen("x").vec, alg.gen("y").vec
    (s1,) = jacobson_si(x, y, alg)
    assert np.array_equal(s1, alg.commutator(x, y))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_catalog_lie_algebras_are_restricted(p):
    kinds = [("abelian", v) for v in range(1, 8)] + [("heisenberg", v) for v in (1, 2, 3)] + \
        [("affine", v) for v in (1, 2, 3, 4)] + ([("simple", None)] if p > 2 else [])
    for kind, var in kinds:
        assert verify_restricted(lie_catalog(kind, var, p)).ok, (kind, var)
    assert verify_restricted(lie_catalog("diagonal", None, p, lam=1)).ok


def test_invalid_pmap_detected():
    L = lie_catalog("affine", 1, 3)
    bad = RestrictedLie(L.spec, L.bracket, np.zeros((3, 3), dtype=np.int64))
    rep = verify_restricted(bad)
    assert not rep.ad_pmap and not rep.ok


def random_invertible(F, d, rng):
    while True:
        A = F.random(rng, (d, d))
        if rank(F, A) == d:
            return A


@pytest.mark.parametrize("p", [2, 3, 5])
def test_abelian_invariants_are_conjugation_invariant(p):
    rng = np.random.default_rng(11)
    Fd = get_field(prime_field(p))
    for v in range(1, 8):
        L = lie_catalog("abelian", v, p)
        inv = abelian_invariants(L)
        for _ in range(100 // 7 + 1):
            A = random_invertible(Fd, 3, rng)
            P2 = Fd.matmul(Fd.matmul(A, L.pmap), invert(Fd, A))
            L2 = RestrictedLie(L.spec, L.bracket, P2)
            assert abelian_invariants(L2) == inv


@pytest.mark.parametrize("p", [2, 3])
def test_seven_abelian_classes_distinct(p):
    invs = {abelian_invariants(lie_catalog("abelian", v, p)) for v in range(1, 8)}
    assert len(invs) == 7


def test_partition_counts():
    assert [partition_count(m) for m in range(6)] == [1, 2, 4, 7, 12, 19]
    with pytest.raises(ValueError):
        partition_count(-1)


@pytest.mark.parametrize("m,p", [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)])
def test_enumerated_abelian_classes_equal_partition_count(m, p):
    assert enumerate_abelian_classes(m, p) == partition_count(m)


def simple_bracket(p):
    br = np.zeros((3, 3, 3), dtype=np.int64)
    for (i, j), (l, c) in {(0, 1): (2, 1), (0, 2): (0, 1), (1, 2): (1, p - 1)}.items():
        br[i, j, l] = c % p
        br[j, i, l] = (-c) % p
    return br


def test_simple_type_has_no_pmap_at_2():
    assert count_valid_pmaps(prime_field(2), simple_bracket(2)) == 0
    assert solve_pmap(prime_field(2), simple_bracket(2)) is None
    with pytest.raises(LieError):
        lie_catalog("simple", None, 2)


@pytest.mark.parametrize("p", [3, 5])
def test_simple_type_pmap_unique(p):
    # centerless, so the p-map on the basis is forced
    assert count_valid_pmaps(prime_field(p), simple_bracket(p)) == 1
    assert np.array_equal(solve_pmap(prime_field(p), simple_bracket(p)), lie_catalog("simple", None, p).pmap)


def test_heisenberg_variants():
    L1, L3 = lie_catalog("heisenberg", 1, 2), lie_catalog("heisenberg", 3, 2)
    imgs = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]], dtype=np.int64)
    assert lie_morphism_check(L3, L1, imgs)["ok"]
    assert not lie_morphism_check(L3, L1, np.eye(3, dtype=np.int64))["ok"]
    keys = set()
    for v in (1, 2, 3):
        inv = lie_invariants(lie_catalog("heisenberg", v, 3))
        keys.add((inv["pmap_image_dim"], inv["center_p_nilpotent"]))
    assert len(keys) == 3


@pytest.mark.parametrize("p", [2, 3])
def test_enveloping_round_trip(p):
    res = enveloping_matches_catalog(p)
    assert res and all(r["identical"] for r in res.values())
    for (kind, var), fam in LIE_TO_C.items():
        if fam not in [c.family for c in catalog_ids(p)]:
            continue
        H = build(CatalogId(fam, p, lam=1) if fam == "C16" else CatalogId(fam, p))
        L, rows = primitive_lie(H)
        assert L.dim == 3 and verify_restricted(L).ok


def test_enveloping_rejects_invalid():
    L = lie_catalog("affine", 1, 3)
    with pytest.raises(LieError):
        restricted_enveloping(RestrictedLie(L.spec, L.bracket, np.zeros((3, 3), dtype=np.int64)))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_c16_enumeration(p):
    res = enumerate_c16_classes(p)
    # the admissible lambdas are exactly the roots of lam^(2p-2) = 1 in GF(p^2)
    assert len(res["lambdas"]) == 2 * p - 2 if p > 2 else len(res["lambdas"]) == 1
    assert sum(len(o["lambdas"]) for o in res["orbits"]) == len(res["lambdas"])
    for o in res["orbits"]:
        assert 1 <= len(o["lambdas"]) <= 2
    if p == 2:
        assert res["count"] == 1
