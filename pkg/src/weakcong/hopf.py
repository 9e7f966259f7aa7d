"""The Malvenuto–Reutenauer Hopf algebra on permutations and its quotients.

Elements are finite linear combinations with exact coefficients (Python
ints, or :class:`fractions.Fraction` when a division ever appears).  A
quotient by an H-family has the class bottoms as basis; it is embedded in
the big algebra by ``c`` (sum over the class) and retracted by ``r`` (keep
bottoms, drop the rest).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .families import (
    FamilySpec,
    bottoms,
    class_of_bottom,
    is_bottom,
    pi_down_fast,
)
from .perm import Permutation, all_perms, format_word, ltimes, standardize, times

EMPTY = Permutation(())


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _word(x) -> str:
    return format_word(x) if len(x) else "∅"


class LinearCombination:
    """A finitely supported map from basis keys to exact scalars."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                if c:
                    out[k] = out.get(k, 0) + c
        self.terms = {k: _clean(c) for k, c in out.items() if c}

    @classmethod
    def basis(cls, key):
        return cls({key: 1})

    def _new(self, terms):
        return type(self)(terms)

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return self._new(t)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __mul__(self, scalar):
        return self._new({k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LinearCombination) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, key):
        return self.terms.get(key, 0)

    def items(self):
        return sorted(self.terms.items(), key=lambda kc: self.sort_key(kc[0]))

    def keys(self):
        return [k for k, _ in self.items()]

    @staticmethod
    def sort_key(key):
        return key

    @staticmethod
    def format_key(key) -> str:
        return str(key)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.items():
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign}{abs(c)}·{self.format_key(k)}")
        return " ".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def to_json(self) -> list:
        return [[str(c)] + self.key_words(k) for k, c in self.items()]


class GradedVector(LinearCombination):
    """Linear combination of permutations of any sizes."""

    __slots__ = ()

    def __init__(self, terms=None):
        if terms is not None and not isinstance(terms, dict):
            terms = list(terms)
        if isinstance(terms, dict):
            terms = {tuple(k): c for k, c in terms.items()}
        elif terms:
            terms = [(tuple(k), c) for k, c in terms]
        super().__init__(terms)

    @staticmethod
    def sort_key(key):
        return (len(key), key)

    @staticmethod
    def format_key(key):
        return _word(key)

    @staticmethod
    def key_words(key):
        return [format_word(key)]

    def degrees(self) -> set[int]:
        return {len(k) for k in self.terms}


class TensorVector(LinearCombination):
    """Linear combination of tuples of permutations (pairs for coproducts)."""

    __slots__ = ()

    def __init__(self, terms=None):
        if isinstance(terms, dict):
            terms = {tuple(tuple(p) for p in k): c for k, c in terms.items()}
        elif terms:
            terms = [(tuple(tuple(p) for p in k), c) for k, c in terms]
        super().__init__(terms)

    @staticmethod
    def sort_key(key):
        return tuple((len(p), p) for p in key)

    @staticmethod
    def format_key(key):
        return " ⊗ ".join(_word(p) for p in key)

    @staticmethod
    def key_words(key):
        return [format_word(p) for p in key]


def as_vector(x) -> GradedVector:
    if isinstance(x, GradedVector):
        return x
    return GradedVector({tuple(x): 1})


# ---------------------------------------------------------------- the big algebra

def weak_interval(lo: Sequence[int], hi: Sequence[int]) -> list[tuple[int, ...]]:
    """All permutations between ``lo`` and ``hi`` in the weak order."""
    n = len(lo)
    allowed = set()
    for i, b in enumerate(hi):
        for a in hi[i + 1:]:
            if a < b:
                allowed.add((a, b))
    start = tuple(lo)
    seen = {start}
    stack = [start]
    while stack:
        z = stack.pop()
        for i in range(n - 1):
            a, b = z[i], z[i + 1]
            if a < b and (a, b) in allowed:
                y = z[:i] + (b, a) + z[i + 2:]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return sorted(seen)


def shuffles(u: Sequence[int], v: Sequence[int]) -> list[tuple[int, ...]]:
    """Interleavings of ``u`` with ``v`` shifted up by ``len(u)``."""
    p, q = len(u), len(v)
    shifted = [p + w for w in v]
    out = []
    for spots in combinations(range(p + q), p):
        word, iu, iv = [], 0, 0
        spot = set(spots)
        for pos in range(p + q):
            if pos in spot:
                word.append(u[iu])
                iu += 1
            else:
                word.append(shifted[iv])
                iv += 1
        out.append(tuple(word))
    return out


def _perm_product(u, v) -> GradedVector:
    lo, hi = times(u, v), ltimes(u, v)
    return GradedVector({x: 1 for x in weak_interval(lo, hi)})


def _bilinear(f: Callable, a, b) -> GradedVector:
    a, b = as_vector(a), as_vector(b)
    acc: dict = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            for x, cx in f(u, v).terms.items():
                acc[x] = acc.get(x, 0) + cu * cv * cx
    return GradedVector(acc)


def mr_product(u, v) -> GradedVector:
    """Sum over the weak-order interval ``[u×v, u⋉v]``, extended bilinearly."""
    return _bilinear(_perm_product, u, v)


def mr_coproduct(x) -> TensorVector:
    """Deconcatenate and standardize both halves; extended linearly."""
    acc: dict = {}
    for y, c in as_vector(x).terms.items():
        for p in range(len(y) + 1):
            key = (tuple(standardize(y[:p])), tuple(standardize(y[p:])))
            acc[key] = acc.get(key, 0) + c
    return TensorVector(acc)


class MRAlgebra:
    """The Hopf algebra on all permutations."""

    name = "MR"

    def __init__(self):
        self._prod: dict = {}
        self._coprod: dict = {}
        self._anti: dict = {(): GradedVector({(): 1})}

    def basis(self, n: int) -> list[Permutation]:
        return [Permutation(x) for x in all_perms(n)]

    def product_basis(self, u, v) -> GradedVector:
        key = (tuple(u), tuple(v))
        if key not in self._prod:
            self._prod[key] = _perm_product(u, v)
        return self._prod[key]

    def coproduct_basis(self, x) -> TensorVector:
        x = tuple(x)
        if x not in self._coprod:
            self._coprod[x] = mr_coproduct(x)
        return self._coprod[x]

    def antipode_basis(self, x) -> GradedVector:
        """``S(x) = -x - Σ S(x′)·x″`` over the splits with both parts nonempty."""
        x = tuple(x)
        if x not in self._anti:
            acc = GradedVector({x: -1})
            for p in range(1, len(x)):
                left = self.antipode_basis(standardize(x[:p]))
                acc = acc - self.product(left, standardize(x[p:]))
            self._anti[x] = acc
        return self._anti[x]

    # bilinear extensions shared with quotients
    def product(self, a, b) -> GradedVector:
        return _bilinear(self.product_basis, a, b)

    def coproduct(self, a) -> TensorVector:
        acc: dict = {}
        for x, c in as_vector(a).terms.items():
            for k, d in self.coproduct_basis(x).terms.items():
                acc[k] = acc.get(k, 0) + c * d
        return TensorVector(acc)

    def antipode(self, a) -> GradedVector:
        acc = GradedVector()
        for x, c in as_vector(a).terms.items():
            acc = acc + self.antipode_basis(x) * c
        return acc


_MR = MRAlgebra()


def mr_antipode(x) -> GradedVector:
    return _MR.antipode(x)


# ---------------------------------------------------------------- quotients

class QuotientAlgebra(MRAlgebra):
    """The subalgebra on class bottoms of a family of congruences."""

    def __init__(self, spec: FamilySpec):
        super().__init__()
        self.spec = spec
        self.name = str(spec)
        self._classes: dict = {}

    def basis(self, n: int) -> list[Permutation]:
        return list(bottoms(self.spec, n))

    def is_bottom(self, x) -> bool:
        return is_bottom(self.spec, x)

    def _check(self, *xs):
        for x in xs:
            if not self.is_bottom(x):
                raise ValueError(f"{_word(x)} is not a class bottom of {self.spec}")

    def class_of(self, x) -> list[Permutation]:
        x = tuple(x)
        if x not in self._classes:
            self._classes[x] = class_of_bottom(self.spec, x)
        return self._classes[x]

    def c(self, a) -> GradedVector:
        acc: dict = {}
        for x, coef in as_vector(a).terms.items():
            for y in self.class_of(x):
                acc[y] = acc.get(y, 0) + coef
        return GradedVector(acc)

    def r(self, a) -> GradedVector:
        return GradedVector({x: c for x, c in as_vector(a).terms.items() if self.is_bottom(x)})

    def r_tensor(self, t: TensorVector) -> TensorVector:
        return TensorVector({k: c for k, c in t.terms.items() if all(self.is_bottom(p) for p in k)})

    def c_tensor(self, t: TensorVector) -> TensorVector:
        acc: dict = {}
        for (u, v), coef in t.terms.items():
            for y in self.class_of(u):
                for z in self.class_of(v):
                    acc[(y, z)] = acc.get((y, z), 0) + coef
        return TensorVector(acc)

    def product_basis(self, u, v) -> GradedVector:
        """Bottoms in the shuffle set of ``u`` and ``v``."""
        key = (tuple(u), tuple(v))
        if key not in self._prod:
            self._check(u, v)
            big = _MR.product_basis(u, v)
            self._prod[key] = GradedVector({x: 1 for x in big.terms if self.is_bottom(x)})
        return self._prod[key]

    def product_via_classes(self, u, v) -> GradedVector:
        """``r(c(u)•c(v))``: agrees with :meth:`product_basis` for translational families."""
        self._check(u, v)
        return self.r(_MR.product(self.c(u), self.c(v)))

    def coproduct_basis(self, x) -> TensorVector:
        """``(r⊗r)Δ(c(x))``: split every member of the class, keep pairs of bottoms."""
        x = tuple(x)
        if x not in self._coprod:
            self._check(x)
            acc: dict = {}
            for y in self.class_of(x):
                for p in range(len(y) + 1):
                    u, v = tuple(standardize(y[:p])), tuple(standardize(y[p:]))
                    if self.is_bottom(u) and self.is_bottom(v):
                        acc[(u, v)] = acc.get((u, v), 0) + 1
            self._coprod[x] = TensorVector(acc)
        return self._coprod[x]

    def coproduct_rearranged(self, x) -> TensorVector:
        """Sum of ``u⊗v`` over value splits ``w`` and bottoms ``u, v`` with ``π_↓(w·(u×v)) = x``."""
        x = tuple(x)
        self._check(x)
        n = len(x)
        acc: dict = {}
        for p in range(n + 1):
            left_basis, right_basis = self.basis(p), self.basis(n - p)
            for first in combinations(range(1, n + 1), p):
                second = [v for v in range(1, n + 1) if v not in first]
                for u in left_basis:
                    for v in right_basis:
                        y = tuple(first[a - 1] for a in u) + tuple(second[b - 1] for b in v)
                        if tuple(pi_down_fast(self.spec, y)) == x:
                            acc[(tuple(u), tuple(v))] = acc.get((tuple(u), tuple(v)), 0) + 1
        return TensorVector(acc)

    def antipode_basis(self, x) -> GradedVector:
        """``r∘S∘c`` with the antipode of the big algebra."""
        x = tuple(x)
        if x not in self._anti:
            self._check(x)
            self._anti[x] = self.r(_MR.antipode(self.c(x)))
        return self._anti[x]


def z_product(spec: FamilySpec, u, v) -> GradedVector:
    return QuotientAlgebra(spec).product(u, v)


def z_coproduct(spec: FamilySpec, x) -> TensorVector:
    return QuotientAlgebra(spec).coproduct(x)


def c_map(spec: FamilySpec, x) -> GradedVector:
    return QuotientAlgebra(spec).c(x)


def r_map(spec: FamilySpec, w) -> GradedVector:
    return QuotientAlgebra(spec).r(w)


def antipode(ambient, x) -> GradedVector:
    """Antipode of ``x`` in MR (``ambient=None`` or an :class:`MRAlgebra`) or in a quotient."""
    if ambient is None:
        return _MR.antipode(x)
    if isinstance(ambient, FamilySpec):
        ambient = QuotientAlgebra(ambient)
    return ambient.antipode(x)


# ---------------------------------------------------------------- axiom checks

def counit(x) -> int:
    return 1 if len(x) == 0 else 0


def tensor_product(alg: MRAlgebra, s: TensorVector, t: TensorVector) -> TensorVector:
    """Componentwise product ``(a⊗b)(c⊗d) = ac ⊗ bd``."""
    acc: dict = {}
    for (a, b), cs in s.terms.items():
        for (c, d), ct in t.terms.items():
            left = alg.product_basis(a, c)
            right = alg.product_basis(b, d)
            for x, cx in left.terms.items():
                for y, cy in right.terms.items():
                    acc[(x, y)] = acc.get((x, y), 0) + cs * ct * cx * cy
    return TensorVector(acc)


def _delta_left(alg, t: TensorVector) -> TensorVector:
    acc: dict = {}
    for (a, b), c in t.terms.items():
        for (a1, a2), d in alg.coproduct_basis(a).terms.items():
            acc[(a1, a2, b)] = acc.get((a1, a2, b), 0) + c * d
    return TensorVector(acc)


def _delta_right(alg, t: TensorVector) -> TensorVector:
    acc: dict = {}
    for (a, b), c in t.terms.items():
        for (b1, b2), d in alg.coproduct_basis(b).terms.items():
            acc[(a, b1, b2)] = acc.get((a, b1, b2), 0) + c * d
    return TensorVector(acc)


@dataclass
class AxiomReport:
    algebra: str
    max_degree: int
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, axiom: str, *args):
        self.failures.append((axiom, tuple(_word(a) for a in args)))

    def first_failure(self):
        return self.failures[0] if self.failures else None

    def __str__(self):
        counts = ", ".join(f"{k}={v}" for k, v in self.checked.items())
        if self.ok:
            return f"{self.algebra} up to degree {self.max_degree}: ok ({counts})"
        axiom, args = self.failures[0]
        return (f"{self.algebra} up to degree {self.max_degree}: {len(self.failures)} failures; "
                f"first: {axiom} at {', '.join(args)}")


def _tuples_of_basis(alg, parts: int, max_degree: int):
    degree_bases = [alg.basis(d) for d in range(max_degree + 1)]

    def rec(k, budget):
        if k == 0:
            yield ()
            return
        for d in range(budget + 1):
            for x in degree_bases[d]:
                for rest in rec(k - 1, budget - d):
                    yield (x,) + rest

    yield from rec(parts, max_degree)


def check_axioms(alg: MRAlgebra, max_degree: int, stop_after: int = 20) -> AxiomReport:
    """Verify the Hopf algebra axioms on all basis elements up to ``max_degree``."""
    quotient = isinstance(alg, QuotientAlgebra)
    limit = 7 if quotient else 6
    if max_degree > limit:
        raise ValueError(f"axiom checks are limited to degree {limit} here")
    rep = AxiomReport(alg.name, max_degree)
    unit = GradedVector({(): 1})

    def tick(name):
        rep.checked[name] = rep.checked.get(name, 0) + 1

    singles = [x for d in range(max_degree + 1) for x in alg.basis(d)]
    for a, b, c in _tuples_of_basis(alg, 3, max_degree):
        if len(rep.failures) >= stop_after:
            break
        tick("associativity")
        if alg.product(alg.product(a, b), c) != alg.product(a, alg.product(b, c)):
            rep.fail("associativity", a, b, c)
    for a, b in _tuples_of_basis(alg, 2, max_degree):
        if len(rep.failures) >= stop_after:
            break
        tick("compatibility")
        ab = alg.product(a, b)
        if any(len(x) != len(a) + len(b) for x in ab.terms):
            rep.fail("grading", a, b)
        if alg.coproduct(ab) != tensor_product(alg, alg.coproduct(a), alg.coproduct(b)):
            rep.fail("compatibility", a, b)
        if quotient:
            tick("product routes")
            if ab != alg.product_via_classes(a, b):
                rep.fail("product routes", a, b)
            tick("morphism")
            if alg.c(ab) != _MR.product(alg.c(a), alg.c(b)):
                rep.fail("morphism", a, b)
    for x in singles:
        if len(rep.failures) >= stop_after:
            break
        dx = alg.coproduct(x)
        tick("coassociativity")
        if _delta_left(alg, dx) != _delta_right(alg, dx):
            rep.fail("coassociativity", x)
        tick("counit")
        left = GradedVector({v: c for (u, v), c in dx.terms.items() if not u})
        right = GradedVector({u: c for (u, v), c in dx.terms.items() if not v})
        if left != as_vector(x) or right != as_vector(x):
            rep.fail("counit", x)
        tick("antipode")
        expected = unit * counit(x)
        s_left = GradedVector()
        s_right = GradedVector()
        for (u, v), c in dx.terms.items():
            s_left = s_left + alg.product(alg.antipode_basis(u), v) * c
            s_right = s_right + alg.product(u, alg.antipode_basis(v)) * c
        if s_left != expected or s_right != expected:
            rep.fail("antipode", x)
        if quotient:
            tick("comorphism")
            if alg.c_tensor(dx) != _MR.coproduct(alg.c(x)):
                rep.fail("comorphism", x)
    return rep
