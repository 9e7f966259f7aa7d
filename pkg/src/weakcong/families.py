"""Families of congruences indexed by n: translational families Tr(C) and
insertional-translational families H(C), plus the named examples.

For an H-family the bottoms are recognized without building the lattice.
A generator ``γ`` of size ``k`` with cliff at ``j`` is encoded by its
*signature*: for each value strictly between ``1`` and ``k``, in increasing
order, ``L`` if it sits before the cliff and ``R`` if after.  A permutation
has a cliff-adjacent occurrence of some scramble of ``γ`` at the descent
``x_i > x_{i+1}`` exactly when that signature is a subsequence of the word
recording, for each value strictly between ``x_{i+1}`` and ``x_i``, whether
it lies left or right of the pair.  The word is already determined once a
prefix through position ``i+1`` is fixed, so enumeration can prune early.
"""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cache, cached_property
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .congruence import Congruence, congruence_from_contracted, forcing_ideal
from .perm import (
    Permutation,
    all_perms,
    cliff_position,
    format_word,
    identity,
    inverse,
    is_untranslated_ji,
    occurs,
    occurs_with_adjacent_cliff,
    parse_word,
    scrambles,
    swap,
    times,
)
from .weak_order import JoinIrreducible, edge_ji_word, join_irreducibles

MAX_SCRAMBLE_SIZE = 6
MAX_LATTICE_FAMILY = 8


@dataclass(frozen=True)
class FamilySpec:
    """Generators of a family; ``kind`` is ``"H"`` or ``"Tr"``."""

    kind: str
    generators: frozenset

    def __post_init__(self):
        if self.kind not in ("H", "Tr"):
            raise ValueError("kind must be 'H' or 'Tr'")
        gens = frozenset(tuple(g) for g in self.generators)
        for g in gens:
            if not is_untranslated_ji(g):
                raise ValueError(f"generator {format_word(g)} is not an untranslated join-irreducible")
        object.__setattr__(self, "generators", gens)

    def __str__(self):
        words = ",".join(sorted((format_word(g) for g in self.generators), key=lambda w: (len(w), w)))
        return f"{self.kind}({{{words}}})"

    @cached_property
    def signatures(self) -> tuple[str, ...]:
        return tuple(sorted({signature(g) for g in self.generators}))


def H(*gens) -> FamilySpec:
    return FamilySpec("H", frozenset(_words(gens)))


def Tr(*gens) -> FamilySpec:
    return FamilySpec("Tr", frozenset(_words(gens)))


def _words(gens):
    return [parse_word(g) if isinstance(g, str) else tuple(g) for g in gens]


def signature(g: Sequence[int]) -> str:
    """Left/right pattern of the non-cliff values of an untranslated join-irreducible."""
    j = cliff_position(g)
    if j is None or not is_untranslated_ji(g):
        raise ValueError(f"{format_word(g)} is not an untranslated join-irreducible")
    before = set(g[: j - 1])
    return "".join("L" if v in before else "R" for v in range(2, len(g)))


def _is_subsequence(small: str, big: str) -> bool:
    it = iter(big)
    return all(c in it for c in small)


def middle_word(x: Sequence[int], i: int) -> str:
    """Sides of the values strictly between the entries at positions ``i``, ``i+1`` (1-based)."""
    pos = inverse(x)
    a, b = x[i - 1], x[i]
    lo, hi = (a, b) if a < b else (b, a)
    return "".join("L" if pos[v - 1] < i else "R" for v in range(lo + 1, hi))


# ---------------------------------------------------------------- insertions

def left_insert(g: Sequence[int], i: int) -> Permutation:
    """``L_i``: shift the entries of ``A`` that are at least ``i``."""
    ji = JoinIrreducible.from_perm(g)
    n = ji.n
    if not 1 <= i <= n + 1:
        raise ValueError(f"insertion index must lie in [1, {n + 1}]")
    A = {a for a in ji.A if a < i} | {a + 1 for a in ji.A if a >= i}
    return JoinIrreducible(n + 1, frozenset(A)).perm


def right_insert(g: Sequence[int], i: int) -> Permutation:
    """``R_i``: as ``L_i`` but the new value ``i`` joins ``A``."""
    ji = JoinIrreducible.from_perm(g)
    n = ji.n
    if not 1 <= i <= n + 1:
        raise ValueError(f"insertion index must lie in [1, {n + 1}]")
    A = {a for a in ji.A if a < i} | {i} | {a + 1 for a in ji.A if a >= i}
    return JoinIrreducible(n + 1, frozenset(A)).perm


def tr_covers(g: Sequence[int]) -> set[Permutation]:
    """Elements covered by an untranslated join-irreducible in the translational poset."""
    if not is_untranslated_ji(g):
        raise ValueError(f"{format_word(g)} is translated")
    n = len(g)
    return {right_insert(g, 1), left_insert(g, 2), right_insert(g, n), left_insert(g, n + 1)}


def h_covers(g: Sequence[int]) -> set[Permutation]:
    """Insertions other than translations; the covers of ``g`` in the insertional poset."""
    if not is_untranslated_ji(g):
        raise ValueError(f"{format_word(g)} is translated")
    n = len(g)
    return {right_insert(g, i) for i in range(1, n + 1)} | {left_insert(g, i) for i in range(2, n + 2)}


def h_ideal(generators: Iterable[Sequence[int]], n: int) -> set[Permutation]:
    """Size-``n`` elements of the ideal generated in the insertional poset."""
    gens = {Permutation(g) for g in generators}
    level: set = set()
    for size in range(2, n + 1):
        nxt = {g for g in gens if len(g) == size}
        for g in level:
            nxt |= h_covers(g)
        level = nxt
    return level


def translates(g: Sequence[int], n: int) -> list[Permutation]:
    """All ``1_p × g × 1_q`` in S_n."""
    k = len(g)
    return [times(times(identity(p), g), identity(n - k - p)) for p in range(n - k + 1)]


# ---------------------------------------------------------------- per-n data

@cache
def contracted_jis(spec: FamilySpec, n: int) -> frozenset:
    """Join-irreducibles of S_n contracted by the family member ``Θ_n``."""
    if spec.kind == "H":
        return frozenset(
            g for g in join_irreducibles(n) if any(occurs(c, g) for c in spec.generators)
        )
    gens = [t for c in spec.generators if len(c) <= n for t in translates(c, n)]
    return forcing_ideal(n, gens)


@cache
def family_congruence(spec: FamilySpec, n: int) -> Congruence:
    if n > MAX_LATTICE_FAMILY:
        raise ValueError(f"lattice construction is limited to n <= {MAX_LATTICE_FAMILY}")
    return congruence_from_contracted(n, contracted_jis(spec, n))


def _contracted_descent(spec: FamilySpec, x: Sequence[int], i: int) -> bool:
    if spec.kind == "H":
        word = middle_word(x, i)
        return any(_is_subsequence(s, word) for s in spec.signatures)
    return edge_ji_word(x, i) in contracted_jis(spec, len(x))


def is_contracted_perm(spec: FamilySpec, x: Sequence[int]) -> bool:
    """True iff ``x`` is not the bottom of its class in ``Θ_n``."""
    return any(x[i - 1] > x[i] and _contracted_descent(spec, x, i) for i in range(1, len(x)))


def is_bottom(spec: FamilySpec, x: Sequence[int]) -> bool:
    return not is_contracted_perm(spec, x)


def is_contracted_by_scrambles(spec: FamilySpec, x: Sequence[int]) -> bool:
    """Literal scramble search; used to cross-check the signature test."""
    if spec.kind != "H":
        raise ValueError("scramble characterization applies to H-families")
    for g in spec.generators:
        if len(g) > MAX_SCRAMBLE_SIZE:
            raise ValueError(f"scramble sets are only materialized for size <= {MAX_SCRAMBLE_SIZE}")
        if any(occurs_with_adjacent_cliff(s, x) for s in scrambles(g)):
            return True
    return False


def pi_down_fast(spec: FamilySpec, x: Sequence[int]) -> Permutation:
    """Walk down contracted edges, always at the leftmost contracted descent."""
    x = tuple(x)
    while True:
        for i in range(1, len(x)):
            if x[i - 1] > x[i] and _contracted_descent(spec, x, i):
                x = swap(x, i)
                break
        else:
            return Permutation(x)


def class_of_bottom(spec: FamilySpec, b: Sequence[int]) -> list[Permutation]:
    """The class whose bottom is ``b``, found by walking up contracted edges."""
    b = tuple(b)
    if is_contracted_perm(spec, b):
        raise ValueError(f"{format_word(b)} is not a class bottom")
    seen = {b}
    stack = [b]
    while stack:
        z = stack.pop()
        for i in range(1, len(z)):
            if z[i - 1] < z[i]:
                y = swap(z, i)
                if y not in seen and _contracted_descent(spec, y, i):
                    seen.add(y)
                    stack.append(y)
    return sorted(Permutation(y) for y in seen)


# ---------------------------------------------------------------- enumeration

class _Rule:
    """Local test on an adjacent pair ``(a, b)`` and its left/right middle word."""

    def __call__(self, a: int, b: int, word: str) -> bool:  # pragma: no cover - interface
        raise NotImplementedError


class _HRule(_Rule):
    def __init__(self, signatures):
        self.signatures = tuple(signatures)

    def __call__(self, a, b, word):
        return a > b and any(_is_subsequence(s, word) for s in self.signatures)


class _TwistedBaxterRule(_Rule):
    def __call__(self, a, b, word):
        return a > b and "L" in word and "R" in word


class _BaxterRule(_Rule):
    def __call__(self, a, b, word):
        if a > b:
            return _is_subsequence("LR", word)
        return _is_subsequence("RL", word)


def _walk(n: int, bad: _Rule, prefix: list[int], used: list[bool], emit) -> int:
    if len(prefix) == n:
        if emit is not None:
            emit(tuple(prefix))
        return 1
    total = 0
    a = prefix[-1] if prefix else 0
    for b in range(1, n + 1):
        if used[b]:
            continue
        if a:
            lo, hi = (a, b) if a < b else (b, a)
            word = "".join("L" if used[v] else "R" for v in range(lo + 1, hi))
            if bad(a, b, word):
                continue
        used[b] = True
        prefix.append(b)
        total += _walk(n, bad, prefix, used, emit)
        prefix.pop()
        used[b] = False
    return total


def _count_from(args) -> int:
    n, bad, first = args
    used = [False] * (n + 1)
    used[first] = True
    return _walk(n, bad, [first], used, None)


def count_local(n: int, bad: _Rule, threads: int = 1) -> int:
    """Number of permutations of [n] with no adjacent pair rejected by ``bad``."""
    if n == 0:
        return 1
    if threads > 1 and n >= 8:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(_count_from, [(n, bad, f) for f in range(1, n + 1)]))
    return sum(_count_from((n, bad, f)) for f in range(1, n + 1))


def enumerate_local(n: int, bad: _Rule) -> list[Permutation]:
    out: list = []
    _walk(n, bad, [], [False] * (n + 1), lambda w: out.append(Permutation(w)))
    return out


@cache
def bottoms(spec: FamilySpec, n: int) -> tuple[Permutation, ...]:
    """Class bottoms of ``Θ_n`` in lexicographic order."""
    if spec.kind == "H":
        return tuple(enumerate_local(n, _HRule(spec.signatures)))
    return tuple(sorted(family_congruence(spec, n).bottoms))


def count_bottoms(spec: FamilySpec, n: int, threads: int = 1) -> int:
    if spec.kind == "H":
        return count_local(n, _HRule(spec.signatures), threads)
    return len(family_congruence(spec, n))


# ---------------------------------------------------------------- Baxter-type predicates

def _pair_words(x: Sequence[int]):
    pos = inverse(x)
    for i in range(1, len(x)):
        a, b = x[i - 1], x[i]
        lo, hi = (a, b) if a < b else (b, a)
        yield a, b, "".join("L" if pos[v - 1] < i else "R" for v in range(lo + 1, hi))


def twisted_baxter(x: Sequence[int]) -> bool:
    """No 2413 or 3412 pattern has its "4" and "1" in adjacent positions."""
    return not any(_TwistedBaxterRule()(a, b, w) for a, b, w in _pair_words(x))


def baxter(x: Sequence[int]) -> bool:
    """No 2413 with adjacent "4","1" and no 3142 with adjacent "1","4"."""
    return not any(_BaxterRule()(a, b, w) for a, b, w in _pair_words(x))


def count_twisted_baxter(n: int, threads: int = 1) -> int:
    return count_local(n, _TwistedBaxterRule(), threads)


def count_baxter(n: int, threads: int = 1) -> int:
    return count_local(n, _BaxterRule(), threads)


# ---------------------------------------------------------------- family properties

FamilyFn = Callable[[int], Congruence]


def as_family(family) -> FamilyFn:
    if isinstance(family, FamilySpec):
        return lambda n: family_congruence(family, n)
    return family


def is_translational(family, N: int) -> bool:
    """Check that ``Θ_{p+q}`` restricted to the ``u × v`` equals ``Θ_p × Θ_q``."""
    fam = as_family(family)
    for total in range(2, N + 1):
        big = fam(total)
        for p in range(1, total):
            q = total - p
            left, right = fam(p), fam(q)
            pairing: dict = {}
            reverse: dict = {}
            for u in all_perms(p):
                for v in all_perms(q):
                    small = (left.class_of[left.lattice.index[u]], right.class_of[right.lattice.index[v]])
                    cls = big.class_of[big.lattice.index[times(u, v)]]
                    if pairing.setdefault(small, cls) != cls or reverse.setdefault(cls, small) != small:
                        return False
    return True


def insertion_failures(family, N: int) -> list[tuple]:
    """Contracted join-irreducibles whose required insertions are not contracted."""
    fam = as_family(family)
    out = []
    for n in range(2, N):
        here, there = fam(n).contracted, fam(n + 1).contracted
        for g in here:
            ji = JoinIrreducible.from_perm(g)
            for i in range(ji.m + 1, ji.M + 2):
                if right_insert(g, i) not in there:
                    out.append((g, "R", i))
            for i in range(ji.m, ji.M + 1):
                if left_insert(g, i) not in there:
                    out.append((g, "L", i))
    return out


def is_insertional(family, N: int) -> bool:
    return not insertion_failures(family, N)


def is_insertional_by_cosets(family, N: int) -> bool:
    """Check that on each coset ``w·(S_p × S_q)`` the product congruence refines ``Θ_{p+q}``."""
    fam = as_family(family)
    for total in range(2, N + 1):
        big = fam(total)
        for p in range(1, total):
            q = total - p
            left, right = fam(p), fam(q)
            for first in combinations(range(1, total + 1), p):
                second = [v for v in range(1, total + 1) if v not in first]
                seen: dict = {}
                for u in all_perms(p):
                    for v in all_perms(q):
                        y = tuple(first[a - 1] for a in u) + tuple(second[b - 1] for b in v)
                        small = (left.class_of[left.lattice.index[u]], right.class_of[right.lattice.index[v]])
                        cls = big.class_of[big.lattice.index[y]]
                        if seen.setdefault(small, cls) != cls:
                            return False
    return True


# ---------------------------------------------------------------- named families

def untranslated_jis(size: int) -> list[Permutation]:
    return [g for g in join_irreducibles(size) if cliff_position(g) is not None]


def named_family(name: str) -> FamilySpec:
    """Look up a family by name: tamari, descent, twisted-baxter, trivial, full, "snk k", "pnk k"."""
    key = name.strip().lower()
    fixed = {
        "tamari": ("312",),
        "tamari-231": ("231",),
        "descent": ("231", "312"),
        "twisted-baxter": ("2413", "3412"),
        "trivial": (),
        "full": ("21",),
    }
    if key in fixed:
        return H(*fixed[key])
    match = re.fullmatch(r"(snk|pnk)[\s_-]*(\d+)", key)
    if match:
        kind, k = match.group(1), int(match.group(2))
        if k < 1:
            raise ValueError("k must be positive")
        if kind == "snk":
            return H(*untranslated_jis(k + 1))
        gens = [(2, 3, 1), (k + 1,) + tuple(range(1, k + 1))]
        return H(*gens)
    raise ValueError(f"unknown family {name!r}")


def family_from_generators(text: str, kind: str = "H") -> FamilySpec:
    words = [w for w in text.replace(" ", "").split(";" if ";" in text else ",") if w]
    return FamilySpec(kind, frozenset(parse_word(w) for w in words))
