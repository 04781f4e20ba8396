"""Exact arithmetic in GF(p) and GF(p^k).

Field elements are stored as integer *codes*: the element
``c_0 + c_1 t + ... + c_{k-1} t^{k-1}`` (``t`` the class of the variable
modulo the defining polynomial) has code ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``.
Prime-field elements therefore have the same code in every extension, which
is the only embedding the engine applies implicitly.

:class:`Scalar` is the user-facing immutable value; :class:`Field` provides
vectorised operations on numpy arrays of codes and is what the linear algebra
and structure-constant code runs on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_CHARACTERISTIC = 7
MAX_DEGREE = 16
# full q x q operation tables are built up to this size
_TABLE_LIMIT = 2048


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), little-endian coefficient lists -----------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_divmod(a, b, p):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    a = a[:]
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return _trim(q), a


def _poly_mod(a, b, p):
    return _poly_divmod(a, b, p)[1]


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _poly_powmod(base, e, mod, p):
    result = [1]
    base = _poly_mod(base, mod, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), mod, p)
        base = _poly_mod(_poly_mul(base, base, p), mod, p)
        e >>= 1
    return result


def is_irreducible(modulus, p: int) -> bool:
    """Rabin's test for a monic polynomial given little-endian."""
    f = _trim(modulus)
    k = len(f) - 1
    if k < 1 or f[-1] != 1:
        return False
    if k == 1:
        return True
    # no root in GF(p): cheap filter
    if any(sum(c * pow(r, i, p) for i, c in enumerate(f)) % p == 0 for r in range(p)):
        return False
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**k, f, p), x, p):
        return False
    for r in prime_factors(k):
        h = _poly_sub(_poly_powmod(x, p ** (k // r), f, p), x, p)
        if len(_poly_gcd(f, h, p)) != 1:
            return False
    return True


# -- field specification --------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """GF(p^k) given by a monic irreducible modulus (little-endian, leading 1)."""

    p: int
    k: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p) or self.p > MAX_CHARACTERISTIC:
            raise FieldError(f"characteristic must be a prime <= {MAX_CHARACTERISTIC}, got {self.p}")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree k")
        if not is_irreducible(self.modulus, self.p):
            raise FieldError(f"modulus {self.modulus} is reducible over GF({self.p})")

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, d: dict) -> "FieldSpec":
        return cls(int(d["p"]), int(d["k"]), tuple(int(c) for c in d["modulus"]))

    def __str__(self):
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"


@lru_cache(maxsize=None)
def build_extension(p: int, k: int = 1, max_degree: int = MAX_DEGREE) -> FieldSpec:
    """GF(p^k) with the lexicographically smallest monic irreducible modulus.

    Monic polynomials ``x^k + c_{k-1} x^{k-1} + ... + c_0`` are ordered
    lexicographically on ``(c_{k-1}, ..., c_0)``.  The prime field uses the
    modulus ``x``.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1 or k > max_degree:
        raise FieldError(f"extension degree {k} outside 1..{max_degree}")
    if k == 1:
        return FieldSpec(p, 1, (0, 1))
    for t in range(p**k):
        low = [(t // p**i) % p for i in range(k)]  # c_0 least significant
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return FieldSpec(p, k, cand)
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")  # pragma: no cover


def prime_field(p: int) -> FieldSpec:
    return build_extension(p, 1)


# -- vectorised arithmetic --------------------------------------------------------

class Field:
    """Vectorised arithmetic on integer codes of one finite field."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p, self.k, self.q = spec.p, spec.k, spec.q
        self._pw = self.p ** np.arange(self.k, dtype=np.int64)
        if self.k > 1:
            self._mtensor = self._multiplication_tensor()
            if self.q <= _TABLE_LIMIT:
                codes = np.arange(self.q, dtype=np.int64)
                d = self.to_digits(codes)
                prod = np.einsum("as,bt,str->abr", d, d, self._mtensor) % self.p
                self._mul_table = self.from_digits(prod)
                self._inv_table = np.zeros(self.q, dtype=np.int64)
                a, b = np.nonzero(self._mul_table == 1)
                self._inv_table[a] = b
            else:
                self._mul_table = None

    def __repr__(self):
        return f"Field({self.spec})"

    def _multiplication_tensor(self):
        p, k, m = self.p, self.k, list(self.spec.modulus)
        red = []  # t^j reduced, j < 2k-1
        for j in range(2 * k - 1):
            mono = [0] * j + [1]
            r = _poly_mod(mono, m, p)
            red.append(r + [0] * (k - len(r)))
        T = np.zeros((k, k, k), dtype=np.int64)
        for s in range(k):
            for t in range(k):
                T[s, t] = red[s + t]
        return T

    # conversions
    def to_digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pw) % self.p

    def from_digits(self, d):
        return (np.asarray(d, dtype=np.int64) * self._pw).sum(-1)

    def element(self, value) -> int:
        """Code of an int (reduced into the prime field) or Scalar."""
        if isinstance(value, Scalar):
            if value.spec == self.spec:
                return value.code
            if value.spec.is_prime_field and value.spec.p == self.p:
                return value.code
            raise FieldError(f"cannot coerce element of {value.spec} into {self.spec}")
        if isinstance(value, (int, np.integer)):
            return int(value) % self.p
        raise TypeError(f"cannot interpret {value!r} as a field element")

    def scalar(self, code) -> "Scalar":
        return Scalar(self.spec, int(code))

    # elementwise ops on code arrays (or ints)
    def add(self, a, b):
        if self.k == 1:
            return (np.asarray(a) + b) % self.p
        return self.from_digits((self.to_digits(a) + self.to_digits(b)) % self.p)

    def sub(self, a, b):
        if self.k == 1:
            return (np.asarray(a) - b) % self.p
        return self.from_digits((self.to_digits(a) - self.to_digits(b)) % self.p)

    def neg(self, a):
        if self.k == 1:
            return (-np.asarray(a)) % self.p
        return self.from_digits((-self.to_digits(a)) % self.p)

    def mul(self, a, b):
        if self.k == 1:
            return (np.asarray(a) * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)]
        da, db = np.broadcast_arrays(self.to_digits(a), self.to_digits(b))
        return self.from_digits(np.einsum("...s,...t,str->...r", da, db, self._mtensor) % self.p)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return np.vectorize(lambda v: pow(int(v), self.p - 2, self.p), otypes=[np.int64])(a)
        if self._mul_table is not None:
            return self._inv_table[a]
        return np.vectorize(lambda v: self.s_pow(int(v), self.q - 2), otypes=[np.int64])(a)

    # scalar ops on python ints
    def s_add(self, a: int, b: int) -> int:
        return int(self.add(a, b))

    def s_sub(self, a: int, b: int) -> int:
        return int(self.sub(a, b))

    def s_mul(self, a: int, b: int) -> int:
        return int(self.mul(a, b))

    def s_neg(self, a: int) -> int:
        return int(self.neg(a))

    def s_pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.s_inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.s_mul(result, base)
            base = self.s_mul(base, base)
            e >>= 1
        return result

    def s_inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._mul_table is not None:
            return int(self._inv_table[a])
        return self.s_pow(a, self.q - 2)

    def frobenius(self, a, times: int = 1):
        out = np.asarray(a, dtype=np.int64)
        for _ in range(times):
            r = np.ones_like(out)
            base = out
            e = self.p
            while e:
                if e & 1:
                    r = self.mul(r, base)
                base = self.mul(base, base)
                e >>= 1
            out = r
        return out

    # linear algebra kernels
    def matmul(self, A, B):
        """Exact matrix product of code arrays (dense or scipy sparse for k == 1)."""
        if self.k == 1:
            if hasattr(A, "tocsr") or hasattr(B, "tocsr"):
                return np.asarray((A @ B)) % self.p
            A = np.asarray(A)
            B = np.asarray(B)
            # entries < p <= 7: float64 products are exact for inner dims < 2^47
            C = A.astype(np.float64) @ B.astype(np.float64)
            return np.rint(C).astype(np.int64) % self.p
        A = np.asarray(A.todense() if hasattr(A, "todense") else A)
        B = np.asarray(B.todense() if hasattr(B, "todense") else B)
        Ad = self.to_digits(A).astype(np.float64)
        Bd = self.to_digits(B).astype(np.float64)
        k = self.k
        shape = np.broadcast_shapes(A.shape[:-2], B.shape[:-2]) + (A.shape[-2], B.shape[-1])
        conv = np.zeros((2 * k - 1,) + shape)
        for s in range(k):
            for t in range(k):
                conv[s + t] += Ad[..., s] @ Bd[..., t]
        conv = np.rint(conv).astype(np.int64) % self.p
        out = np.zeros(shape + (k,), dtype=np.int64)
        red = self._mtensor  # t^(s+t) for s, t < k
        for j in range(2 * k - 1):
            s, t = min(j, k - 1), j - min(j, k - 1)
            out += conv[j][..., None] * red[s, t]
        return self.from_digits(out % self.p)

    def dot(self, a, b):
        return self.matmul(np.asarray(a)[None, :], np.asarray(b)[:, None])[0, 0]

    def random(self, rng, shape):
        return rng.integers(0, self.q, size=shape, dtype=np.int64)


@lru_cache(maxsize=None)
def get_field(spec: FieldSpec) -> Field:
    return Field(spec)


# -- scalars ------------------------------------------------------------------------

@dataclass(frozen=True)
class Scalar:
    """Immutable element of a finite field."""

    spec: FieldSpec
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.spec.q:
            raise FieldError(f"code {self.code} out of range for {self.spec}")

    @classmethod
    def from_coeffs(cls, spec: FieldSpec, coeffs) -> "Scalar":
        coeffs = list(coeffs)
        if len(coeffs) > spec.k:
            raise FieldError("too many coefficients")
        return cls(spec, sum((int(c) % spec.p) * spec.p**i for i, c in enumerate(coeffs)))

    @classmethod
    def of(cls, spec: FieldSpec, value) -> "Scalar":
        if isinstance(value, Scalar):
            return cls(spec, get_field(spec).element(value))
        if isinstance(value, (list, tuple)):
            return cls.from_coeffs(spec, value)
        return cls(spec, int(value) % spec.p)

    @property
    def field(self) -> Field:
        return get_field(self.spec)

    @property
    def coeffs(self) -> list[int]:
        return [(self.code // self.spec.p**i) % self.spec.p for i in range(self.spec.k)]

    def to_json(self) -> list[int]:
        return self.coeffs

    def _other(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.spec == self.spec:
                return other
            if other.spec.is_prime_field and other.spec.p == self.spec.p:
                return Scalar(self.spec, other.code)
            if self.spec.is_prime_field and self.spec.p == other.spec.p:
                return NotImplemented
            raise FieldError(f"mixed-field arithmetic between {self.spec} and {other.spec}")
        if isinstance(other, (int, np.integer)):
            return Scalar(self.spec, int(other) % self.spec.p)
        return NotImplemented

    def _lift(self, other):
        # prime-field self combined with an extension-field other
        if isinstance(other, Scalar) and self.spec.is_prime_field and other.spec.p == self.spec.p \
                and not other.spec.is_prime_field:
            return Scalar(other.spec, self.code), other
        return None

    def __add__(self, other):
        lifted = self._lift(other)
        if lifted:
            return lifted[0] + lifted[1]
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.spec, self.field.s_add(self.code, o.code))

    __radd__ = __add__

    def __sub__(self, other):
        lifted = self._lift(other)
        if lifted:
            return lifted[0] - lifted[1]
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.spec, self.field.s_sub(self.code, o.code))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        lifted = self._lift(other)
        if lifted:
            return lifted[0] * lifted[1]
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.spec, self.field.s_mul(self.code, o.code))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.spec, self.field.s_neg(self.code))

    def __truediv__(self, other):
        o = other if isinstance(other, Scalar) and other.spec == self.spec else self._other(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        return Scalar(self.spec, self.field.s_pow(self.code, int(e)))

    def inverse(self) -> "Scalar":
        return Scalar(self.spec, self.field.s_inv(self.code))

    def frobenius(self, times: int = 1) -> "Scalar":
        return self ** (self.spec.p**times)

    def order(self) -> int:
        """Multiplicative order."""
        if self.code == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.spec.q - 1
        for r in prime_factors(n):
            while n % r == 0 and (self ** (n // r)).code == 1:
                n //= r
        return n

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if self.spec == other.spec:
                return self.code == other.code
            if self.spec.p == other.spec.p and (self.spec.is_prime_field or other.spec.is_prime_field):
                return self.code == other.code and self.code < self.spec.p
            return False
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.spec.p
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        if self.code >= self.spec.p:
            raise FieldError("not a prime-field element")
        return self.code

    def __repr__(self):
        if self.spec.k == 1:
            return f"{self.code}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(f"{c}{mono}" if (c != 1 or i == 0) else mono)
        return "+".join(reversed(terms)) or "0"


def elements(spec: FieldSpec):
    return [Scalar(spec, c) for c in range(spec.q)]


def multiplicative_order(p: int, n: int) -> int:
    """Smallest k >= 1 with n | p^k - 1."""
    if math.gcd(n, p) != 1:
        raise FieldError(f"gcd({n}, {p}) != 1")
    if n == 1:
        return 1
    k, v = 1, p % n
    while v != 1:
        v = v * p % n
        k += 1
    return k


def root_of_unity(p: int, n: int, max_degree: int = MAX_DEGREE) -> tuple[FieldSpec, Scalar]:
    """Element of exact multiplicative order n in the smallest GF(p^k) holding one.

    The returned root is the one with smallest code, so results are reproducible.
    """
    k = multiplicative_order(p, n)
    if k > max_degree:
        raise FieldError(f"an element of order {n} needs GF({p}^{k}); bound is {max_degree}")
    spec = build_extension(p, k)
    if n == 1:
        return spec, Scalar(spec, 1)
    cof = (spec.q - 1) // n
    for code in range(2, spec.q):
        g = Scalar(spec, code) ** cof
        if g.code != 1 and all((g ** (n // r)).code != 1 for r in prime_factors(n)):
            return spec, g
    raise FieldError(f"no element of order {n} found")  # pragma: no cover


def embed(a: Scalar, target: FieldSpec) -> Scalar:
    """Embed ``a`` into a larger field of the same characteristic.

    The prime field embeds canonically; otherwise the generator of ``a``'s field
    is sent to the smallest-code root of its modulus in ``target``.
    """
    src = a.spec
    if src == target:
        return a
    if src.p != target.p or target.k % src.k:
        raise FieldError(f"{src} does not embed into {target}")
    if src.is_prime_field:
        return Scalar(target, a.code)
    image = _generator_image(src, target)
    result = Scalar(target, 0)
    power = Scalar(target, 1)
    for c in a.coeffs:
        result = result + power * c
        power = power * image
    return result


@lru_cache(maxsize=None)
def _generator_image(src: FieldSpec, target: FieldSpec) -> Scalar:
    F = get_field(target)
    m = src.modulus
    for code in range(target.q):
        r = Scalar(target, code)
        val = Scalar(target, 0)
        for c in reversed(m):
            val = val * r + c
        if val.code == 0:
            return r
    raise FieldError("modulus has no root in target")  # pragma: no cover


def additive_solve(c: Scalar, frob_coeffs: dict[int, int]) -> list[Scalar]:
    """All a in c's field with sum_j coeff_j * a^(p^j) = c.

    ``frob_coeffs`` maps Frobenius exponents j to integer coefficients, so
    ``{1: 1, 0: -1}`` is the Artin-Schreier map a^p - a.  The map is linear
    over GF(p), so the solution set is an affine subspace found by elimination
    on the coordinate vectors.
    """
    spec = c.spec
    p, k = spec.p, spec.k
    cols = []
    for i in range(k):
        b = Scalar(spec, p**i)
        img = Scalar(spec, 0)
        for j, cj in frob_coeffs.items():
            img = img + b.frobenius(j) * cj
        cols.append(img.coeffs)
    A = np.array(cols, dtype=np.int64)  # row i = image of basis i
    from .linalg import solve_left, left_kernel
    pf = get_field(prime_field(p))
    target = np.array(c.coeffs, dtype=np.int64)
    x = solve_left(pf, A, target)
    if x is None:
        return []
    ker = left_kernel(pf, A)
    sols = []
    # enumerate the affine space (kernel of an additive map has at most p^deg elements)
    for t in range(p ** ker.shape[0]):
        coeffs = x.copy()
        for r in range(ker.shape[0]):
            coeffs = (coeffs + ((t // p**r) % p) * ker[r]) % p
        sols.append(Scalar.from_coeffs(spec, coeffs))
    return sorted(sols, key=lambda s: s.code)


def artin_schreier_root(c: Scalar, max_degree: int = MAX_DEGREE) -> Scalar:
    """A root of a^p - a = c, extending c's field if necessary.

    The smallest-code root is returned.  If c's field GF(p^k) has no root,
    the polynomial is irreducible over it and the root lives in GF(p^(kp)).
    """
    roots = additive_solve(c, {1: 1, 0: -1})
    if roots:
        return roots[0]
    spec = c.spec
    if spec.k * spec.p > max_degree:
        raise FieldError(f"root needs GF({spec.p}^{spec.k * spec.p}); bound is {max_degree}")
    big = build_extension(spec.p, spec.k * spec.p)
    roots = additive_solve(embed(c, big), {1: 1, 0: -1})
    return roots[0]
