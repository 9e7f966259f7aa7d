"""The weak order on S_n and its join-irreducible elements."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache, cached_property
from typing import Iterable, Sequence

from .perm import (
    Permutation,
    all_perms,
    format_word,
    identity,
    inversion_mask,
    inversion_set,
    length,
    longest,
    perm_from_inversions,
    swap,
)
from .poset import FinitePoset

MAX_MATERIALIZED = 8
MAX_UPSETS = 7


def covers_up(x: Sequence[int]) -> set[Permutation]:
    return {Permutation(swap(x, i + 1)) for i in range(len(x) - 1) if x[i] < x[i + 1]}


def covers_down(x: Sequence[int]) -> set[Permutation]:
    return {Permutation(swap(x, i + 1)) for i in range(len(x) - 1) if x[i] > x[i + 1]}


def leq(x: Sequence[int], y: Sequence[int]) -> bool:
    """Weak order comparison by containment of inversion sets."""
    return inversion_mask(x) & ~inversion_mask(y) == 0


def _close_inversions(n: int, pairs) -> set[tuple[int, int]]:
    """Transitive closure: (a,b) and (b,c) with a<b<c force (a,c)."""
    inv = set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(inv):
            for c in range(b + 1, n + 1):
                if (b, c) in inv and (a, c) not in inv:
                    inv.add((a, c))
                    changed = True
    return inv


def join_by_inversions(items: Iterable[Sequence[int]], n: int | None = None) -> Permutation:
    """Join whose inversion set is the transitive closure of the union."""
    items = list(items)
    if not items:
        return Permutation(identity(n or 0))
    n = len(items[0])
    union = set().union(*(inversion_set(x) for x in items))
    return Permutation(perm_from_inversions(n, _close_inversions(n, union)))


def meet_by_inversions(items: Iterable[Sequence[int]], n: int | None = None) -> Permutation:
    """Meet via the antiautomorphism that reverses words."""
    items = list(items)
    if not items:
        return Permutation(longest(n or 0))
    top = join_by_inversions([tuple(reversed(x)) for x in items])
    return Permutation(tuple(reversed(top)))


class WeakOrder:
    """S_n with all elements materialized, sorted by length then word."""

    def __init__(self, n: int):
        if n > MAX_MATERIALIZED:
            raise ValueError(f"weak order on S_{n} is too large to materialize (limit n <= {MAX_MATERIALIZED})")
        self.n = n
        perms = sorted(all_perms(n), key=lambda x: (length(x), x))
        self.perms = [Permutation(x) for x in perms]
        self.index = {x: i for i, x in enumerate(self.perms)}
        self.inv = [inversion_mask(x) for x in self.perms]
        self.up: list[list[int]] = []
        self.down: list[list[int]] = []
        for x in self.perms:
            self.up.append([self.index[swap(x, i + 1)] for i in range(n - 1) if x[i] < x[i + 1]])
            self.down.append([self.index[swap(x, i + 1)] for i in range(n - 1) if x[i] > x[i + 1]])

    def __len__(self):
        return len(self.perms)

    @cached_property
    def poset(self) -> FinitePoset:
        if self.n > MAX_UPSETS:
            raise ValueError(f"bitset joins are limited to n <= {MAX_UPSETS}")
        return FinitePoset(self.perms, self.down)

    def leq(self, i: int, j: int) -> bool:
        return self.inv[i] & ~self.inv[j] == 0

    def join(self, items) -> Permutation:
        items = [self.index[tuple(x)] for x in items]
        if not items:
            return self.perms[0]
        return self.perms[self.poset.join_index(items)]

    def meet(self, items) -> Permutation:
        items = [self.index[tuple(x)] for x in items]
        if not items:
            return self.perms[-1]
        return self.perms[self.poset.meet_index(items)]

    def mobius(self, x, y) -> int:
        return self.poset.mobius(self.index[tuple(x)], self.index[tuple(y)])

    def interval_indices(self, lo: int, hi: int) -> list[int]:
        """Elements between ``lo`` and ``hi`` found by walking up-covers."""
        if not self.leq(lo, hi):
            return []
        top = self.inv[hi]
        seen = {lo}
        stack = [lo]
        while stack:
            i = stack.pop()
            for j in self.up[i]:
                if j not in seen and self.inv[j] & ~top == 0:
                    seen.add(j)
                    stack.append(j)
        return sorted(seen)

    def to_json(self) -> dict:
        return {
            "elements": [format_word(x) for x in self.perms],
            "covers": [[i, j] for j in range(len(self)) for i in self.down[j]],
        }


@cache
def weak_order(n: int) -> WeakOrder:
    return WeakOrder(n)


def mobius(x: Sequence[int], y: Sequence[int]) -> int:
    """Möbius function of ``[x, y]`` in the weak order."""
    return weak_order(len(x)).mobius(x, y)


# ---------------------------------------------------------------- join-irreducibles

@dataclass(frozen=True, order=True)
class JoinIrreducible:
    """A join-irreducible of S_n, stored by the set ``A`` of entries after its descent."""

    n: int
    A: frozenset

    def __post_init__(self):
        A = frozenset(self.A)
        object.__setattr__(self, "A", A)
        if not A or not A <= set(range(1, self.n + 1)):
            raise ValueError(f"A must be a nonempty subset of [{self.n}]")
        if self.M < self.m:
            raise ValueError(f"subset {sorted(A)} has max of complement below its min")

    @property
    def m(self) -> int:
        return min(self.A)

    @property
    def M(self) -> int:
        rest = set(range(1, self.n + 1)) - self.A
        return max(rest) if rest else 0

    @property
    def descent(self) -> int:
        return sum(1 for v in range(1, self.M + 1) if v not in self.A)

    @property
    def degree(self) -> int:
        return self.M - self.m

    @property
    def perm(self) -> Permutation:
        rest = [v for v in range(1, self.n + 1) if v not in self.A]
        return Permutation(rest + sorted(self.A))

    @classmethod
    def from_perm(cls, g: Sequence[int]) -> "JoinIrreducible":
        d = [i for i in range(len(g) - 1) if g[i] > g[i + 1]]
        if len(d) != 1:
            raise ValueError(f"{format_word(g)} is not join-irreducible")
        return cls(len(g), frozenset(g[d[0] + 1:]))

    def __str__(self):
        return format_word(self.perm)


def ji_from_subset(A, n: int) -> Permutation:
    return JoinIrreducible(n, frozenset(A)).perm


def subset_from_ji(g: Sequence[int]) -> frozenset:
    return JoinIrreducible.from_perm(g).A


@cache
def join_irreducibles(n: int) -> tuple[Permutation, ...]:
    """All join-irreducibles of S_n, ordered by (degree, word)."""
    out = []
    for mask in range(1, 1 << n):
        A = {v for v in range(1, n + 1) if mask >> (v - 1) & 1}
        rest = set(range(1, n + 1)) - A
        if rest and max(rest) > min(A):
            out.append(JoinIrreducible(n, frozenset(A)))
    out.sort(key=lambda g: (g.degree, g.perm))
    return tuple(g.perm for g in out)


def lower_cover(g: Sequence[int]) -> Permutation:
    """The unique element covered by a join-irreducible (written γ⁎)."""
    (i,) = [i for i in range(1, len(g)) if g[i - 1] > g[i]]
    return Permutation(swap(g, i))


def edge_ji_subset(x: Sequence[int], i: int) -> frozenset:
    """The subset ``A(x, i)`` labelling the edge at the descent ``i`` (1-based)."""
    hi, lo = x[i - 1], x[i]
    if hi < lo:
        raise ValueError(f"position {i} is not a descent of {format_word(x)}")
    return frozenset([v for v in x[:i] if v > hi] + [v for v in x[i:] if v >= lo])


def edge_ji(x: Sequence[int], i: int) -> Permutation:
    """The join-irreducible contracted together with the edge at descent ``i``."""
    return JoinIrreducible(len(x), edge_ji_subset(x, i)).perm


def edge_ji_word(x: Sequence[int], i: int) -> tuple[int, ...]:
    """Plain-tuple version of :func:`edge_ji` for inner loops."""
    hi, lo = x[i - 1], x[i]
    after = set(v for v in x[:i] if v > hi)
    after.update(v for v in x[i:] if v >= lo)
    n = len(x)
    return tuple([v for v in range(1, n + 1) if v not in after] + sorted(after))


def support(x: Sequence[int]) -> set[int]:
    """Indices ``i`` of the generators ``s_i`` appearing in reduced words for ``x``."""
    n = len(x)
    return {i for i in range(1, n) if set(x[:i]) != set(range(1, i + 1))}
