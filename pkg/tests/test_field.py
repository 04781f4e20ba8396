import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hopfp3.field import (FieldError, FieldSpec, Scalar, additive_solve, artin_schreier_root, build_extension,
                          embed, get_field, is_irreducible, prime_field, root_of_unity)

SPECS = [prime_field(2), prime_field(3), prime_field(5), build_extension(2, 3), build_extension(3, 2),
         build_extension(2, 4), build_extension(5, 2)]


def naive_mul(spec: FieldSpec, a: int, b: int) -> int:
    """Schoolbook polynomial product reduced by the modulus, written independently."""
    p, k = spec.p, spec.k
    da = [(a // p**i) % p for i in range(k)]
    db = [(b // p**i) % p for i in range(k)]
    prod = [0] * (2 * k)
    for i, j in itertools.product(range(k), repeat=2):
        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p
    mod = list(spec.modulus)  # low degree first, monic
    for d in range(2 * k - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i, m in enumerate(mod):
                prod[d - k + i] = (prod[d - k + i] - c * m) % p
    return sum(prod[i] * p**i for i in range(k))


@st.composite
def spec_and_elems(draw, n=3, nonzero=False):
    spec = draw(st.sampled_from(SPECS))
    lo = 1 if nonzero else 0
    return spec, [Scalar(spec, draw(st.integers(lo, spec.q - 1))) for _ in range(n)]


@given(spec_and_elems())
def test_field_axioms(data):
    spec, (a, b, c) = data
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0
    assert a + (-a) == 0


@given(spec_and_elems(nonzero=True))
def test_inverse_and_order(data):
    spec, (a, _, _) = data
    assert a * a.inverse() == 1
    assert (spec.q - 1) % a.order() == 0
    assert a ** a.order() == 1


@given(spec_and_elems(n=2))
def test_multiplication_matches_schoolbook(data):
    spec, (a, b) = data
    assert (a * b).code == naive_mul(spec, a.code, b.code)


@given(spec_and_elems(n=2))
def test_frobenius_is_additive_and_multiplicative(data):
    spec, (a, b) = data
    assert (a + b).frobenius() == a.frobenius() + b.frobenius()
    assert (a * b).frobenius() == a.frobenius() * b.frobenius()
    assert a.frobenius(spec.k) == a


def test_array_ops_agree_with_scalars():
    for spec in SPECS:
        F = get_field(spec)
        rng = np.random.default_rng(3)
        a, b = F.random(rng, (50,)), F.random(rng, (50,))
        prod = F.mul(a, b)
        for x, y, z in zip(a, b, prod):
            assert (Scalar(spec, int(x)) * Scalar(spec, int(y))).code == z


def test_matmul_matches_elementwise_sum():
    for spec in SPECS:
        F = get_field(spec)
        rng = np.random.default_rng(5)
        A, B = F.random(rng, (4, 5)), F.random(rng, (5, 3))
        C = F.matmul(A, B)
        for i, j in itertools.product(range(4), range(3)):
            acc = Scalar(spec, 0)
            for t in range(5):
                acc = acc + Scalar(spec, int(A[i, t])) * Scalar(spec, int(B[t, j]))
            assert acc.code == C[i, j]


def _has_factor(f, p):
    """Trial division by every monic polynomial of degree 1..deg/2 (little-endian)."""
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            r = list(f)
            for s in range(len(r) - len(g), -1, -1):
                c = r[s + d]
                if c:
                    for i, gi in enumerate(g):
                        r[s + i] = (r[s + i] - c * gi) % p
            if not any(r[:d]):
                return True
    return False


def test_moduli_are_irreducible_and_lex_smallest():
    for p, k in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 5), (5, 2)]:
        spec = build_extension(p, k)
        assert not _has_factor(spec.modulus, p)
        assert is_irreducible(spec.modulus, p)
        t_chosen = sum(c * p**i for i, c in enumerate(spec.modulus[:-1]))
        for t in range(t_chosen):
            cand = [(t // p**i) % p for i in range(k)] + [1]
            assert _has_factor(cand, p)


def test_known_moduli():
    assert build_extension(2, 2).modulus == (1, 1, 1)
    assert build_extension(3, 2).q == 9
    assert prime_field(7).modulus == (0, 1)


def test_root_of_unity_exact_order():
    for p, n in [(2, 5), (3, 11), (2, 3), (5, 31), (3, 4)]:
        spec, g = root_of_unity(p, n)
        assert g.order() == n
        assert (spec.q - 1) % n == 0


def test_root_of_unity_degree_bound():
    with pytest.raises(FieldError):
        root_of_unity(3, 11, max_degree=4)


def test_embedding_is_a_ring_map():
    src, dst = build_extension(2, 2), build_extension(2, 4)
    for a, b in itertools.product(range(4), repeat=2):
        x, y = Scalar(src, a), Scalar(src, b)
        assert embed(x * y, dst) == embed(x, dst) * embed(y, dst)
        assert embed(x + y, dst) == embed(x, dst) + embed(y, dst)
    with pytest.raises(FieldError):
        embed(Scalar(build_extension(2, 3), 3), dst)


@given(st.sampled_from([(2, 4), (3, 2), (3, 3), (5, 2)]), st.data())
def test_additive_solve_returns_exactly_the_solutions(pk, data):
    p, k = pk
    spec = build_extension(p, k)
    c = Scalar(spec, data.draw(st.integers(0, spec.q - 1)))
    coeffs = data.draw(st.sampled_from([{1: 1, 0: -1}, {2: 1, 0: -1}, {1: 1, 0: 1}]))
    sols = additive_solve(c, coeffs)

    def ev(a):
        out = Scalar(spec, 0)
        for j, cj in coeffs.items():
            out = out + a.frobenius(j) * cj
        return out

    brute = [Scalar(spec, t) for t in range(spec.q) if ev(Scalar(spec, t)) == c]
    assert [s.code for s in sols] == [s.code for s in brute]


def test_artin_schreier_root_extends_when_needed():
    c = Scalar(prime_field(3), 1)
    a = artin_schreier_root(c)
    assert a.spec.k == 3
    assert a ** 3 - a == embed(c, a.spec)


def test_scalar_of_and_coeffs_round_trip():
    spec = build_extension(3, 3)
    for code in range(spec.q):
        s = Scalar(spec, code)
        assert Scalar.from_coeffs(spec, s.coeffs) == s
    assert Scalar.of(spec, -1) == Scalar(spec, 2)
