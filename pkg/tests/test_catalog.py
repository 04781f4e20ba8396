import numpy as np
import pytest

from hopfp3.algebra import TensorProductAlgebra
from hopfp3.catalog import (CatalogError, CatalogId, H_CONDITIONS, a1_printed_cocycle, build, catalog_ids,
                            coproducts, distinguishing_report, f_coefficients, find_iso_A, graded_A_report,
                            identity_suite, inclusion_checks, iso_map_A, iso_map_H, presentation,
                            primitive_first_orders, resolve_iso_H, symmetric_witness, witt_cocycle)
from hopfp3.field import Scalar, build_extension
from hopfp3.hopf import (coassociativity_defects, dual_hopf, extend_structure, grouplikes, is_local,
                         verify_axioms)
from hopfp3.rewrite import build_table


def test_member_counts():
    # 8 + 5 + 3 + 16 families, one extra A5 parameter, three odd-only families
    assert len(catalog_ids(3)) == 33
    assert len(catalog_ids(2)) == 30
    assert len(catalog_ids(5, include_params=False)) == 32


@pytest.mark.parametrize("kwargs", [dict(family="C15", p=2), dict(family="A9", p=3), dict(family="A1", p=11),
                                    dict(family="C16", p=3, lam=0)])
def test_invalid_ids_rejected(kwargs):
    with pytest.raises(CatalogError):
        CatalogId(**kwargs)


def test_c16_parameter_condition():
    spec = build_extension(3, 2)
    lams = [Scalar(spec, c) for c in range(1, spec.q)]
    for lam in lams:
        if lam ** 2 == 1 or lam ** 2 == -1:
            CatalogId("C16", 3, lam=lam)
        else:
            with pytest.raises(CatalogError):
                CatalogId("C16", 3, lam=lam)


def test_f_coefficients_hand_values():
    # f(x) = sum (-1)^(i-1) (p-i)^-1 x^i
    assert f_coefficients(2) == [1]
    assert f_coefficients(3) == [2, 2]
    assert f_coefficients(5) == [4, 3, 3, 4]


def test_b2_presentation_at_3():
    pres = presentation(CatalogId("B2", 3))
    # [y, z] = y f(x) = 2 yx + 2 yx^2
    assert pres.comm[(1, 2)] == {(1, 0): 2, (1, 0, 0): 2}
    assert pres.comm[(0, 1)] == {(1,): 1}
    assert pres.power == {0: {(0,): 1}, 1: {}, 2: {(2,): 1}}


@pytest.mark.parametrize("p", [2, 3, 5])
def test_witt_cocycle_integral(p):
    terms = witt_cocycle(p)
    assert terms and all(c % p for c, _ in terms)
    # every term has total x-degree p^2 when x counts 1 and y counts p
    for _, (a, b, c, d) in terms:
        assert a + c + p * (b + d) == p * p


def printed_a1(p):
    alg = build_table(presentation(CatalogId("A1", p)))
    Dg = coproducts(alg, "A1")
    T = TensorProductAlgebra(alg, alg)
    z = alg.basis_vec(alg.generators[2])
    Dg[2] = alg.F.add(alg.F.add(T.pure(z, alg.one), T.pure(alg.one, z)), a1_printed_cocycle(alg))
    return extend_structure(alg, Dg)


def test_printed_a1_coproduct_fails_for_odd_p():
    assert coassociativity_defects(printed_a1(2)) == []
    for p in (3, 5):
        assert coassociativity_defects(printed_a1(p))


@pytest.mark.parametrize("p", [2, 3])
def test_a1_dual_is_cyclic_group_algebra(p):
    H = build(CatalogId("A1", p))
    assert verify_axioms(H).ok
    Hd = dual_hopf(H)
    gl = grouplikes(Hd)
    assert len(gl) == p**3
    orders = []
    for g in gl:
        k, v = 1, g
        while not np.array_equal(v, Hd.alg.one):
            v = Hd.alg.mul(v, g)
            k += 1
        orders.append(k)
    assert max(orders) == p**3


@pytest.mark.parametrize("p", [2, 3])
def test_a1_is_split_semisimple(p):
    assert is_local(build(CatalogId("A1", p))) == "semisimple-split"


@pytest.mark.parametrize("p", [2, 3])
def test_identity_suite(p):
    rows = identity_suite(p)
    assert rows and all(r["ok"] for r in rows), [r["name"] for r in rows if not r["ok"]]


def test_iso_A_char_2():
    spec = build_extension(2, 4)
    res = iso_map_A(2, 1, 0, 1, 1, 0, spec)
    assert res["valid"] and res["closed_form_valid"]
    bad = iso_map_A(2, 1, 0, 1, 0, 0, spec)
    assert not bad["valid"]
    assert find_iso_A(2, 1, 0)["found"]


def test_iso_A_char_3():
    assert not iso_map_A(3, 2, 1, 1)["valid"]
    assert not find_iso_A(3, 2, 1)["found"]
    fwd = find_iso_A(3, 1, 1)
    assert fwd["found"]
    w = find_iso_A(3, 0, 0)
    assert w["found"] and w["result"]["morphism"]["bijective"]


def test_iso_A_root_witness():
    # beta' = g0 is reached from beta = 1 through gamma with gamma^(2p-2) = g0
    spec = build_extension(3, 5)
    res = find_iso_A(3, 1, 1)
    assert res["found"]
    g0 = None
    for c in range(1, spec.q):
        s = Scalar(spec, c)
        if s ** 11 == 1 and s != 1:
            g0 = s
            break
    out = iso_map_A(3, g0, 1, g0 ** 3, 0, 0, spec)
    assert out["valid"] and out["beta_relation"]
    assert symmetric_witness(3, 1, 1)["ok"]


@pytest.mark.parametrize("p", [2, 3])
def test_iso_H_condition(p):
    res = resolve_iso_H(p)
    assert res["validating_conditions"] == [H_CONDITIONS[2]]
    assert res["conditions"][H_CONDITIONS[2]]["valid_roots"] == p**2
    assert res["found"]
    # an a outside every root set gives no morphism
    assert not iso_map_H(p, 1, 0, 0)["valid"]


@pytest.mark.parametrize("p", [2, 3])
def test_graded_A(p):
    assert graded_A_report(p)["ok"]


@pytest.mark.parametrize("p", [2, 3])
def test_inclusions_inject(p):
    rows = inclusion_checks(p)
    assert all(r["ok"] for r in rows)
    fo = {r["inclusion"].split(" in ")[1]: r["first_order"] for r in rows}
    assert fo["A3 p=%d" % p] == p * p
    assert fo["T210-6 p=%d" % p] == p


@pytest.mark.parametrize("p", [2, 3])
def test_primitive_first_orders(p):
    fo = primitive_first_orders(p)
    assert set(fo.values()) <= {None, 2, p}


def test_distinguishing_report_p2():
    rep = distinguishing_report(2)
    assert rep["ok"], {k: v for k, v in rep["checks"].items() if not v}


def test_distinguishing_report_p3():
    rep = distinguishing_report(3)
    checks = rep["checks"]
    failing = {k for k, v in checks.items() if not v}
    # the quotient of B2 by (y) is k[x, z]/(x^p - x, z^p - z), of dimension p^2
    assert failing == {"B2 quotient by (y) has dimension 2p"}
    assert rep["rows"]["B2"]["radical_candidate"]["quotient_dim"] == 9
