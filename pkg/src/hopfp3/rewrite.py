"""Normal forms and multiplication tables for PBW-shaped presentations.

A presentation has generators ordered x < y < z (ascending as listed), a rule
``[a, b] = poly`` for each pair a < b (absent pairs commute) and a rule
``g^p = poly`` for every generator.  Normal monomials are words
``z^i y^j x^k`` with every exponent below p, i.e. letters appear in
descending order.  Basis index of a normal monomial: ``sum_l e_l p^l`` with
the first generator in the lowest digit, so the unit has index 0.

Words are tuples of generator indices; polynomials are dicts word -> code.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

import numpy as np

from .field import FieldSpec, Scalar, get_field, prime_field

MAX_REWRITE_STEPS = 10**6


class PresentationError(ValueError):
    pass


class RewriteError(RuntimeError):
    pass


Word = tuple[int, ...]
Poly = dict[Word, int]


@dataclass
class Presentation:
    gens: list[str]
    spec: FieldSpec
    comm: dict[tuple[int, int], Poly] = field(default_factory=dict)
    power: dict[int, Poly] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        ng = len(self.gens)
        if ng not in (1, 2, 3):
            raise PresentationError("presentations have one to three generators")
        if len(set(self.gens)) != ng:
            raise PresentationError("generator names must be distinct")
        for (a, b) in self.comm:
            if not 0 <= a < b < ng:
                raise PresentationError(f"commutator key {(a, b)} must satisfy a < b")
        for g in range(ng):
            if g not in self.power:
                raise PresentationError(f"missing p-th power rule for {self.gens[g]}")
        F = get_field(self.spec)
        for poly in list(self.comm.values()) + list(self.power.values()):
            for w, c in poly.items():
                if not 0 < c < F.q or any(not 0 <= l < ng for l in w):
                    raise PresentationError(f"malformed term {w}: {c}")

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def ngens(self) -> int:
        return len(self.gens)

    @property
    def dim(self) -> int:
        return self.p**self.ngens

    def comm_rhs(self, a: int, b: int) -> Poly:
        return self.comm.get((a, b), {})

    def rules(self):
        """(name, lhs word, rhs poly) for every rule.

        For a commutator rule the lhs word is ``(a, b)`` and the relation is
        ``ab - ba = rhs``; for a power rule the lhs is ``g`` repeated p times.
        """
        out = []
        for a, b in itertools.combinations(range(self.ngens), 2):
            out.append((f"[{self.gens[a]},{self.gens[b]}]", (a, b), self.comm_rhs(a, b)))
        for g in range(self.ngens):
            out.append((f"{self.gens[g]}^{self.p}", (g,) * self.p, self.power[g]))
        return out

    def scalar_extend(self, spec: FieldSpec) -> "Presentation":
        if spec == self.spec:
            return self
        if not self.spec.is_prime_field or spec.p != self.p:
            raise PresentationError(f"cannot extend {self.spec} presentation to {spec}")
        return Presentation(list(self.gens), spec, dict(self.comm), dict(self.power), self.name)

    def to_text(self) -> str:
        lines = ["gens " + " ".join(self.gens)]
        for (a, b), poly in sorted(self.comm.items()):
            lines.append(f"comm {self.gens[a]} {self.gens[b]} = {format_poly(poly, self.gens, self.spec)}")
        for g in range(self.ngens):
            lines.append(f"pow {self.gens[g]} = {format_poly(self.power[g], self.gens, self.spec)}")
        return "\n".join(lines) + "\n"


# -- polynomial helpers ----------------------------------------------------------------

def poly_from_terms(spec: FieldSpec, terms) -> Poly:
    """Build a Poly from (coefficient, word) pairs, coefficients int or Scalar."""
    F = get_field(spec)
    out: Poly = {}
    for c, w in terms:
        code = F.element(c)
        w = tuple(w)
        out[w] = F.s_add(out.get(w, 0), code)
        if out[w] == 0:
            del out[w]
    return out


def format_poly(poly: Poly, gens, spec: FieldSpec) -> str:
    if not poly:
        return "0"
    parts = []
    for w, c in sorted(poly.items()):
        mono = _format_word(w, gens)
        coef = Scalar(spec, c)
        cs = str(coef) if spec.is_prime_field else f"({coef})"
        if mono == "1":
            parts.append(cs)
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{cs} {mono}")
    return " + ".join(parts)


def _format_word(w: Word, gens) -> str:
    if not w:
        return "1"
    out = []
    for letter, grp in itertools.groupby(w):
        e = len(list(grp))
        out.append(gens[letter] + (f"^{e}" if e > 1 else ""))
    return "".join(out)


_TERM = re.compile(r"^\s*([+-]?\s*\d*)\s*\*?\s*((?:[A-Za-z](?:\^\d+)?\s*)*)$")


def parse_poly(text: str, gens, spec: FieldSpec) -> Poly:
    """Parse ``2 x^2 y - yx + 1`` style polynomials with single-letter generators."""
    text = text.strip()
    if text in ("", "0"):
        return {}
    text = text.replace("-", "+-")
    terms = []
    for raw in text.split("+"):
        raw = raw.strip()
        if not raw:
            continue
        m = _TERM.match(raw)
        if not m:
            raise PresentationError(f"cannot parse term {raw!r}")
        coef_s = m.group(1).replace(" ", "")
        mono = m.group(2).replace(" ", "")
        if coef_s in ("", "+"):
            coef = 1
        elif coef_s == "-":
            coef = -1
        else:
            coef = int(coef_s)
        if not mono and coef_s in ("", "+", "-"):
            raise PresentationError(f"empty term in {text!r}")
        word: list[int] = []
        for letter, exp in re.findall(r"([A-Za-z])(?:\^(\d+))?", mono):
            if letter not in gens:
                raise PresentationError(f"unknown generator {letter!r}")
            word.extend([gens.index(letter)] * (int(exp) if exp else 1))
        terms.append((coef, word))
    return poly_from_terms(spec, terms)


def parse_presentation(text: str, spec: FieldSpec | None = None, p: int | None = None,
                       name: str = "") -> Presentation:
    """Parse the line format ``gens x y z`` / ``comm g h = poly`` / ``pow g = poly``."""
    if spec is None:
        if p is None:
            raise PresentationError("need a field or a characteristic")
        spec = prime_field(p)
    gens = ["x", "y", "z"]
    comm_raw, pow_raw = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split(None, 1)
        if head == "gens":
            gens = rest[0].split() if rest else []
            if any(len(g) != 1 for g in gens):
                raise PresentationError("generator names must be single letters")
        elif head in ("comm", "pow"):
            if not rest or "=" not in rest[0]:
                raise PresentationError(f"line {lineno}: expected '=': {line!r}")
            lhs, rhs = rest[0].split("=", 1)
            names = lhs.split()
            if head == "comm" and len(names) == 2:
                comm_raw.append((names, rhs))
            elif head == "pow" and len(names) == 1:
                pow_raw.append((names[0], rhs))
            else:
                raise PresentationError(f"line {lineno}: malformed rule {line!r}")
        else:
            raise PresentationError(f"line {lineno}: unknown directive {head!r}")
    comm: dict[tuple[int, int], Poly] = {}
    F = get_field(spec)
    for (g, h), rhs in comm_raw:
        if g not in gens or h not in gens:
            raise PresentationError(f"unknown generator in comm {g} {h}")
        a, b = gens.index(g), gens.index(h)
        poly = parse_poly(rhs, gens, spec)
        if a > b:  # [h, g] = -[g, h]
            a, b = b, a
            poly = {w: F.s_neg(c) for w, c in poly.items()}
        if a == b:
            raise PresentationError("commutator of a generator with itself")
        comm[(a, b)] = poly
    power = {}
    for g, rhs in pow_raw:
        if g not in gens:
            raise PresentationError(f"unknown generator {g!r}")
        power[gens.index(g)] = parse_poly(rhs, gens, spec)
    return Presentation(gens, spec, comm, power, name)


# -- termination -----------------------------------------------------------------------

def _word_key(w: Word, weights) -> tuple:
    # weighted degree, then compare letters from the right (larger letter wins)
    return (sum(weights[l] for l in w), tuple(reversed(w)))


def termination_weights(pres: Presentation, max_weight: int = 12):
    """Positive integer weights under which every rule strictly decreases.

    Order: weighted degree, ties broken by reverse-lexicographic comparison
    from the right with later generators larger.  Returns None when no weight
    vector up to ``max_weight`` works.
    """
    ng = pres.ngens
    for weights in itertools.product(range(1, max_weight + 1), repeat=ng):
        ok = True
        for a, b in itertools.combinations(range(ng), 2):
            lhs = _word_key((a, b), weights)
            if not all(_word_key(w, weights) < lhs for w in list(pres.comm_rhs(a, b)) + [(b, a)]):
                ok = False
                break
        if ok:
            for g in range(ng):
                lhs = _word_key((g,) * pres.p, weights)
                if not all(_word_key(w, weights) < lhs for w in pres.power[g]):
                    ok = False
                    break
        if ok:
            return weights
    return None


# -- the rewriting engine ------------------------------------------------------------

class Rewriter:
    """Right multiplication of normal monomials by generators, memoised."""

    def __init__(self, pres: Presentation, max_steps: int = MAX_REWRITE_STEPS):
        self.pres = pres
        self.F = get_field(pres.spec)
        self.p = pres.p
        self.ng = pres.ngens
        self.n = pres.dim
        self.max_steps = max_steps
        self.steps = 0
        self._cache: dict[tuple[int, int], np.ndarray] = {}
        self._active: set[tuple[int, int]] = set()

    def exponents(self, i: int) -> list[int]:
        return [(i // self.p**l) % self.p for l in range(self.ng)]

    def index(self, exps) -> int:
        return sum(e * self.p**l for l, e in enumerate(exps))

    def word(self, i: int) -> Word:
        e = self.exponents(i)
        return tuple(l for l in reversed(range(self.ng)) for _ in range(e[l]))

    def label(self, i: int) -> str:
        return _format_word(self.word(i), self.pres.gens)

    def unit_vec(self, i: int) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        v[i] = 1
        return v

    def _tick(self):
        self.steps += 1
        if self.steps > self.max_steps:
            raise RewriteError(f"rewriting exceeded {self.max_steps} steps")

    def mult_gen(self, i: int, g: int) -> np.ndarray:
        key = (i, g)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if key in self._active:
            raise RewriteError(f"rewriting cycle at {self.label(i)}*{self.pres.gens[g]}")
        self._active.add(key)
        self._tick()
        try:
            res = self._mult_gen(i, g)
        finally:
            self._active.discard(key)
        res.setflags(write=False)
        self._cache[key] = res
        return res

    def _mult_gen(self, i: int, g: int) -> np.ndarray:
        e = self.exponents(i)
        nz = [l for l in range(self.ng) if e[l]]
        if not nz or g < nz[0]:
            e[g] += 1
            return self.unit_vec(self.index(e))
        last = nz[0]
        if g == last:
            if e[g] + 1 < self.p:
                e[g] += 1
                return self.unit_vec(self.index(e))
            e[g] = 0
            return self.fold(self.unit_vec(self.index(e)), self.pres.power[g])
        # g > last: m'' a g = (m'' g) a + m'' [a, g]
        e[last] -= 1
        base = self.unit_vec(self.index(e))
        left = self.right_mul(self.right_mul(base, g), last)
        right = self.fold(base, self.pres.comm_rhs(last, g))
        return self.F.add(left, right)

    def right_mul(self, v: np.ndarray, g: int) -> np.ndarray:
        out = np.zeros(self.n, dtype=np.int64)
        for i in np.flatnonzero(v):
            term = self.mult_gen(int(i), g)
            c = int(v[i])
            out = self.F.add(out, term if c == 1 else self.F.mul(term, c))
        return out

    def fold(self, v: np.ndarray, poly: Poly) -> np.ndarray:
        """v * poly, applying letters left to right."""
        out = np.zeros(self.n, dtype=np.int64)
        for w, c in poly.items():
            cur = v
            for letter in w:
                cur = self.right_mul(cur, letter)
                if not cur.any():
                    break
            out = self.F.add(out, self.F.mul(cur, c))
        return out

    def normal_form(self, poly: Poly) -> np.ndarray:
        return self.fold(self.unit_vec(0), poly)

    def generator_matrix(self, g: int) -> np.ndarray:
        return np.stack([self.mult_gen(i, g) for i in range(self.n)])


def normal_form(poly: Poly, pres: Presentation) -> Poly:
    """Reduce a noncommutative polynomial to normal monomials z^i y^j x^k."""
    rw = Rewriter(pres)
    vec = rw.normal_form(poly)
    return {rw.word(int(i)): int(vec[i]) for i in np.flatnonzero(vec)}


@dataclass
class AssociativityReport:
    mode: str
    checked: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self):
        return {"mode": self.mode, "checked": self.checked, "ok": self.ok,
                "violations": [list(map(int, v)) for v in self.violations[:20]]}


def build_table(pres: Presentation, verify: bool = True):
    """Build the FDAlgebra of a presentation on its normal-monomial basis.

    The structure tensor is assembled from the right actions of the
    generators.  The algebra is associative exactly when right multiplication
    is a representation, i.e. R(m g) = R(m) R(g) for every basis monomial m and
    generator g; this certificate is checked unless ``verify`` is False.
    Failure means the normal monomials are not a basis of the presented
    algebra (the presentation is inconsistent or not of PBW shape).
    """
    from .algebra import FDAlgebra

    rw = Rewriter(pres)
    F = rw.F
    n, ng, p = rw.n, rw.ng, rw.p
    Rg = [rw.generator_matrix(g) for g in range(ng)]
    M = np.zeros((n, n, n), dtype=np.int64)
    M[:, 0, :] = np.eye(n, dtype=np.int64)
    for j in range(1, n):
        e = rw.exponents(j)
        last = min(l for l in range(ng) if e[l])
        e[last] -= 1
        M[:, j, :] = F.matmul(M[:, rw.index(e), :], Rg[last])
    labels = [rw.label(i) for i in range(n)]
    gens = [rw.index([1 if l == g else 0 for l in range(ng)]) for g in range(ng)]
    alg = FDAlgebra(pres.spec, M, labels, presentation=pres, generators=gens, name=pres.name)
    if verify:
        bad = _representation_defects(alg, Rg)
        if bad:
            j, g = bad[0]
            raise PresentationError(
                f"presentation {pres.name or ''} is inconsistent: normal monomials are not a basis "
                f"(R({labels[j]}*{pres.gens[g]}) != R({labels[j]})R({pres.gens[g]}); "
                f"{len(bad)} defects)")
    return alg


def _representation_defects(alg, Rg) -> list[tuple[int, int]]:
    F, n, M = alg.F, alg.dim, alg.M
    bad = []
    Mk = M.transpose(1, 0, 2).reshape(n, n * n)  # row k = R(m_k) flattened
    for g, R in enumerate(Rg):
        lhs = F.matmul(M.transpose(1, 0, 2).reshape(n * n, n), R).reshape(n, n * n)
        rhs = F.matmul(R, Mk)
        diff = np.flatnonzero(np.any(lhs != rhs, axis=1))
        bad.extend((int(j), g) for j in diff)
    return bad


def check_associativity(alg, mode: str = "full", samples: int = 10**5, seed: int = 0,
                        chunk: int = 4096) -> AssociativityReport:
    """Check (ab)c = a(bc) on basis triples.

    ``full``: every basis triple.  ``sampled``: ``samples`` uniformly random
    triples plus every triple of generators.  ``certificate``: the complete
    representation test used by :func:`build_table`.
    """
    F, n, M = alg.F, alg.dim, alg.M
    if mode == "certificate":
        Rg = [M[:, g, :] for g in alg.generators]
        bad = _representation_defects(alg, Rg)
        return AssociativityReport("certificate", n * len(Rg), bad)
    if mode == "full":
        viol = []
        for a in range(n):
            # (ab)c = sum_k (ab)_k e_k e_c ; a(bc) = sum_k (bc)_k e_a e_k
            left = F.matmul(M[a], M.reshape(n, n * n)).reshape(n, n, n)
            right = F.matmul(M.reshape(n * n, n), M[a]).reshape(n, n, n)
            bad = np.argwhere(np.any(left != right, axis=2))
            viol.extend((a, int(b), int(c)) for b, c in bad[:5])
        return AssociativityReport("full", n**3, viol)
    if mode == "sampled":
        rng = np.random.default_rng(seed)
        trip = rng.integers(0, n, size=(samples, 3))
        g = alg.generators
        gen_trip = np.array(list(itertools.product(g, repeat=3)), dtype=np.int64)
        trip = np.concatenate([gen_trip, trip])
        viol = []
        for s in range(0, len(trip), chunk):
            t = trip[s:s + chunk]
            a, b, c = t[:, 0], t[:, 1], t[:, 2]
            ab = M[a, b]  # (m, n)
            # (ab)c = sum_k ab_k M[k, c]
            left = _batched_vec_basis(F, ab, M[:, c, :].transpose(1, 0, 2))
            bc = M[b, c]
            right = _batched_vec_basis(F, bc, M[a, :, :])
            bad = np.flatnonzero(np.any(left != right, axis=1))
            viol.extend(tuple(int(v) for v in t[i]) for i in bad[:5])
        return AssociativityReport(f"sampled({samples},seed={seed})", len(trip), viol)
    raise ValueError(f"unknown associativity mode {mode!r}")


def _batched_vec_basis(F, V, T):
    """out[m] = V[m] @ T[m] for V (m, n), T (m, n, n)."""
    if F.k == 1:
        return np.rint(np.einsum("mk,mkl->ml", V.astype(np.float64), T.astype(np.float64))).astype(np.int64) % F.p
    return np.stack([F.matmul(V[i][None], T[i])[0] for i in range(V.shape[0])])
