"""Lattice congruences of the weak order on S_n.

Two independent constructions are provided.  :func:`closure_bruteforce`
enforces join/meet compatibility directly on the materialized lattice, and
:func:`congruence_from_contracted` contracts exactly the cover edges whose
associated join-irreducible lies in a given order ideal of the forcing order.
"""

from __future__ import annotations

from collections import deque
from functools import cache, cached_property
from typing import Iterable, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .perm import Permutation, cliff_position, format_word, parabolic_factor, swap
from .poset import FinitePoset, _bits
from .weak_order import (
    JoinIrreducible,
    WeakOrder,
    edge_ji_word,
    join_irreducibles,
    lower_cover,
    weak_order,
)

MAX_BRUTEFORCE = 7
MAX_IRR_CON = 9


class CongruenceError(RuntimeError):
    """A partition that should have been a lattice congruence is not one."""


class Congruence:
    """A lattice congruence on S_n, stored as a class label per permutation.

    Classes are numbered in the order of their bottom elements along the
    lattice's linear extension.  Construction verifies that every class is
    an interval and that both projections are order preserving.
    """

    def __init__(self, lattice: WeakOrder, labels: Sequence, verify: bool = True):
        self.lattice = lattice
        self.n = lattice.n
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        # members are listed in increasing index, so the first is the bottom candidate
        classes = sorted(groups.values(), key=lambda c: c[0])
        self.classes = classes
        self.class_of = [0] * len(lattice)
        for c, members in enumerate(classes):
            for i in members:
                self.class_of[i] = c
        self.bottom = [members[0] for members in classes]
        self.top = [members[-1] for members in classes]
        if verify:
            self._verify()
        self.contracted = frozenset(
            g for g in join_irreducibles(self.n)
            if self.class_of[lattice.index[g]] == self.class_of[lattice.index[lower_cover(g)]]
        )

    def _verify(self):
        L = self.lattice
        for c, members in enumerate(self.classes):
            b, t = self.bottom[c], self.top[c]
            if not all(L.leq(b, i) and L.leq(i, t) for i in members):
                raise CongruenceError(f"class of {format_word(L.perms[b])} has no minimum or maximum")
            if L.interval_indices(b, t) != members:
                raise CongruenceError(f"class of {format_word(L.perms[b])} is not an interval")
        for j in range(len(L)):
            cj = self.class_of[j]
            for i in L.down[j]:
                ci = self.class_of[i]
                if not (L.leq(self.bottom[ci], self.bottom[cj]) and L.leq(self.top[ci], self.top[cj])):
                    raise CongruenceError("projections are not order preserving")

    # ------------------------------------------------------------ queries

    def __len__(self):
        return len(self.classes)

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.n == other.n and self.class_of == other.class_of

    def __hash__(self):
        return hash((self.n, tuple(self.class_of)))

    def _idx(self, x) -> int:
        return self.lattice.index[tuple(x)]

    def pi_down(self, x) -> Permutation:
        return self.lattice.perms[self.bottom[self.class_of[self._idx(x)]]]

    def pi_up(self, x) -> Permutation:
        return self.lattice.perms[self.top[self.class_of[self._idx(x)]]]

    def equivalent(self, x, y) -> bool:
        return self.class_of[self._idx(x)] == self.class_of[self._idx(y)]

    def class_members(self, x) -> list[Permutation]:
        return [self.lattice.perms[i] for i in self.classes[self.class_of[self._idx(x)]]]

    def is_bottom(self, x) -> bool:
        i = self._idx(x)
        return self.bottom[self.class_of[i]] == i

    @cached_property
    def bottoms(self) -> list[Permutation]:
        return [self.lattice.perms[b] for b in self.bottom]

    @cached_property
    def quotient(self) -> "QuotientPoset":
        return QuotientPoset(self)

    def contracted_atoms(self) -> int:
        return sum(1 for g in self.contracted if _is_atom(g))

    def to_json(self) -> dict:
        classes = [sorted(format_word(self.lattice.perms[i]) for i in members) for members in self.classes]
        order = sorted(range(len(classes)), key=lambda c: format_word(self.lattice.perms[self.bottom[c]]))
        return {"n": self.n, "classes": [classes[c] for c in order]}


def _is_atom(g) -> bool:
    return sum(1 for i, b in enumerate(g) for a in g[i + 1:] if a < b) == 1


class QuotientPoset(FinitePoset):
    """The class bottoms of a congruence, ordered as a subposet of S_n.

    Covers come from the bottoms: the classes covered by ``[x]`` are the
    classes of the elements covered by ``π_↓x``.
    """

    def __init__(self, congruence: Congruence):
        L = congruence.lattice
        self.congruence = congruence
        down = []
        for c, b in enumerate(congruence.bottom):
            down.append({congruence.class_of[i] for i in L.down[b]})
        super().__init__([L.perms[b] for b in congruence.bottom], down)


def induced_subposet(lattice: WeakOrder, members: Iterable[int]) -> FinitePoset:
    """Hasse diagram of the weak order restricted to ``members``, found by comparisons."""
    members = sorted(members)
    down = []
    for t, j in enumerate(members):
        below = [s for s in range(t) if lattice.leq(members[s], j)]
        hasse = [s for s in below if not any(lattice.leq(members[s], members[r]) for r in below if r != s)]
        down.append(hasse)
    return FinitePoset([lattice.perms[i] for i in members], down)


# ---------------------------------------------------------------- brute force

def closure_bruteforce(n: int, generator_pairs: Iterable[tuple]) -> Congruence:
    """Smallest congruence identifying each given cover pair.

    Works off a queue of pairs to identify.  After merging ``a`` and ``b``,
    the pairs ``(a∨z, b∨z)`` and ``(a∧z, b∧z)`` are queued.  Taking ``z``
    among join-irreducibles (for joins) and meet-irreducibles (for meets)
    suffices, since every element is a join of the former and a meet of
    the latter and compatibility with each factor composes.
    """
    if n > MAX_BRUTEFORCE:
        raise ValueError(f"closure_bruteforce is limited to n <= {MAX_BRUTEFORCE}")
    L = weak_order(n)
    P = L.poset
    queue = deque()
    for x, y in generator_pairs:
        i, j = L.index[tuple(x)], L.index[tuple(y)]
        if j not in L.up[i] and i not in L.up[j]:
            raise ValueError(f"{format_word(x)}, {format_word(y)} is not a cover pair")
        queue.append((i, j))
    jis = P.join_irreducibles()
    mis = P.meet_irreducibles()
    uf = DisjointSet(range(len(L)))
    while queue:
        a, b = queue.popleft()
        if not uf.merge(a, b):
            continue
        for z in jis:
            queue.append((P.join_index((a, z)), P.join_index((b, z))))
        for z in mis:
            queue.append((P.meet_index((a, z)), P.meet_index((b, z))))
    return Congruence(L, [uf[i] for i in range(len(L))])


def generator_pairs_for(gens: Iterable[Sequence[int]]) -> list[tuple]:
    """The cover pairs ``(γ⁎, γ)`` of the given join-irreducibles."""
    return [(lower_cover(g), tuple(g)) for g in gens]


# ---------------------------------------------------------------- forcing order

def forces(a: JoinIrreducible, b: JoinIrreducible) -> bool:
    """Arrow rule of the forcing order: contracting ``a`` forces contracting ``b``."""
    if a.M < b.M and {v for v in a.A if v < a.M} == {v for v in b.A if v < a.M}:
        return True
    if b.m < a.m and {v for v in a.A if v > a.m} == {v for v in b.A if v > a.m}:
        return True
    return False


def covered_jis(g: JoinIrreducible) -> set[JoinIrreducible]:
    """The join-irreducibles covered by ``g`` in the forcing order, by the four-case rule."""
    n, A, m, M = g.n, g.A, g.m, g.M
    out = []
    if M < n:
        out.append(A - {M + 1})
        out.append((A - {M + 1}) | {M})
    if m > 1:
        out.append(A | {m - 1})
        out.append((A | {m - 1}) - {m})
    result = set()
    for B in out:
        if B:
            rest = set(range(1, n + 1)) - B
            if rest and max(rest) > min(B):
                result.add(JoinIrreducible(n, frozenset(B)))
    return result


class IrrConOrder:
    """The forcing order on the join-irreducibles of S_n.

    ``below[i]`` is a bitset of everything forced by element ``i``
    (including itself).  Order ideals of this poset are exactly the sets of
    join-irreducibles contracted by some congruence.
    """

    def __init__(self, n: int):
        if n > MAX_IRR_CON:
            raise ValueError(f"forcing order is limited to n <= {MAX_IRR_CON}")
        self.n = n
        self.elements = list(join_irreducibles(n))
        self.index = {g: i for i, g in enumerate(self.elements)}
        jis = [JoinIrreducible.from_perm(g) for g in self.elements]
        N = len(jis)
        below = [1 << i for i in range(N)]
        for i, a in enumerate(jis):
            for j, b in enumerate(jis):
                if i != j and forces(a, b):
                    below[i] |= 1 << j
        changed = True
        while changed:
            changed = False
            for i in range(N):
                acc = below[i]
                for j in _bits(below[i]):
                    acc |= below[j]
                if acc != below[i]:
                    below[i] = acc
                    changed = True
        for i in range(N):
            for j in _bits(below[i] & ~(1 << i)):
                if below[j] >> i & 1:
                    raise CongruenceError("forcing arrows contain a cycle")
        self.below = below
        self.hasse = []
        for i in range(N):
            strict = below[i] & ~(1 << i)
            reach = 0
            for j in _bits(strict):
                reach |= below[j] & ~(1 << j)
            self.hasse.append(strict & ~reach)
        for i, g in enumerate(jis):
            expected = {self.index[h.perm] for h in covered_jis(g)}
            if set(_bits(self.hasse[i])) != expected:
                raise CongruenceError(f"cover rule and arrow rule disagree at {g}")
            if any(jis[j].degree != g.degree + 1 for j in expected):
                raise CongruenceError("forcing order is not graded by degree")
        for i, g in enumerate(self.elements):
            if cliff_position(g) is not None and self.below[i] != 1 << i:
                raise CongruenceError(f"{format_word(g)} has a cliff but is not minimal")

    def leq(self, g, h) -> bool:
        """``g`` lies below ``h``: contracting ``h`` forces contracting ``g``."""
        return bool(self.below[self.index[tuple(h)]] >> self.index[tuple(g)] & 1)

    def covers(self, g) -> set[Permutation]:
        return {self.elements[j] for j in _bits(self.hasse[self.index[tuple(g)]])}

    def ideal(self, gens: Iterable[Sequence[int]]) -> frozenset:
        acc = 0
        for g in gens:
            acc |= self.below[self.index[tuple(g)]]
        return frozenset(self.elements[j] for j in _bits(acc))

    def is_ideal(self, J: Iterable[Sequence[int]]) -> bool:
        J = {tuple(g) for g in J}
        return all(self.elements[j] in J for g in J for j in _bits(self.below[self.index[g]]))


@cache
def irr_con_order(n: int) -> IrrConOrder:
    return IrrConOrder(n)


def forcing_ideal(n: int, generators: Iterable[Sequence[int]]) -> frozenset:
    """Contracted set of the smallest congruence contracting the generators."""
    return irr_con_order(n).ideal(generators)


# ---------------------------------------------------------------- fast construction

def congruence_from_contracted(n: int, J: Iterable[Sequence[int]], verify: bool = True) -> Congruence:
    """Contract the cover edges whose associated join-irreducible lies in ``J``."""
    J = frozenset(tuple(g) for g in J)
    if not irr_con_order(n).is_ideal(J):
        raise ValueError("contracted set is not an order ideal of the forcing order")
    L = weak_order(n)
    uf = DisjointSet(range(len(L)))
    if J:
        for i, x in enumerate(L.perms):
            for d in range(1, n):
                if x[d - 1] > x[d] and edge_ji_word(x, d) in J:
                    uf.merge(i, L.index[swap(x, d)])
    theta = Congruence(L, [uf[i] for i in range(len(L))], verify=verify)
    if theta.contracted != J:
        raise CongruenceError("contracted join-irreducibles differ from the requested ideal")
    return theta


def trivial_congruence(n: int) -> Congruence:
    return congruence_from_contracted(n, ())


def meet_congruences(a: Congruence, b: Congruence) -> Congruence:
    """Intersection of the two equivalence relations."""
    if a.n != b.n:
        raise ValueError("congruences live on different S_n")
    return Congruence(a.lattice, list(zip(a.class_of, b.class_of)))


def join_congruences(a: Congruence, b: Congruence) -> Congruence:
    if a.n != b.n:
        raise ValueError("congruences live on different S_n")
    theta = congruence_from_contracted(a.n, forcing_ideal(a.n, a.contracted | b.contracted))
    if set(theta.bottoms) != set(a.bottoms) & set(b.bottoms):
        raise CongruenceError("join bottoms differ from the intersection of bottoms")
    return theta


def parabolic_congruence(n: int, K) -> Congruence:
    """Fibers of ``x -> x_K``, the left parabolic factor."""
    L = weak_order(n)
    return Congruence(L, [parabolic_factor(x, K, "left")[0] for x in L.perms])
