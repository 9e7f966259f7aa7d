"""Permutations in one-line notation, patterns, and the block products.

Permutations are tuples of the integers ``1..n``.  The :class:`Permutation`
subclass adds parsing and printing, but every function here also accepts
plain tuples, which is what the hot enumeration loops use.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations as _all_words
from typing import Iterable, Sequence


class Permutation(tuple):
    """A permutation of ``[n]`` stored as its one-line word.

    >>> Permutation("2413")
    Permutation('2413')
    >>> Permutation([3, 1, 2]).n
    3
    """

    __slots__ = ()

    def __new__(cls, word: Iterable[int] | str = ()):
        if isinstance(word, str):
            word = parse_word(word)
        word = tuple(int(v) for v in word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"not a permutation of [{len(word)}]: {word}")
        return super().__new__(cls, word)

    @property
    def n(self) -> int:
        return len(self)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Permutation('{format_word(self)}')"


def parse_word(text: str) -> tuple[int, ...]:
    """Read ``"2413"`` or ``"10,1,2,..."``; the empty string is the empty permutation."""
    text = text.strip()
    if text in ("", "()", "∅", "e"):
        return ()
    if "," in text:
        return tuple(int(t) for t in text.split(","))
    return tuple(int(c) for c in text)


def format_word(x: Sequence[int]) -> str:
    if len(x) > 9:
        return ",".join(str(v) for v in x)
    return "".join(str(v) for v in x)


def as_perm(x) -> Permutation:
    return x if isinstance(x, Permutation) else Permutation(x)


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def longest(n: int) -> tuple[int, ...]:
    return tuple(range(n, 0, -1))


def all_perms(n: int):
    """All of S_n in lexicographic order, as plain tuples."""
    return _all_words(range(1, n + 1))


def inverse(x: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(x)
    for i, v in enumerate(x, 1):
        inv[v - 1] = i
    return tuple(inv)


def compose(x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    """The product ``x·y`` acting as ``i -> x(y(i))``."""
    return tuple(x[v - 1] for v in y)


# ---------------------------------------------------------------- inversions

@lru_cache(maxsize=None)
def pair_index(n: int) -> tuple[tuple[int, ...], ...]:
    """Bit position of the value pair (a, b), a < b, as ``table[a][b]``."""
    table = [[-1] * (n + 1) for _ in range(n + 1)]
    k = 0
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            table[a][b] = k
            k += 1
    return tuple(tuple(row) for row in table)


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1))


def inversion_set(x: Sequence[int]) -> set[tuple[int, int]]:
    """Pairs ``(a, b)`` with ``a < b`` where ``b`` appears before ``a``."""
    out = set()
    for i, b in enumerate(x):
        for a in x[i + 1:]:
            if a < b:
                out.add((a, b))
    return out


def inversion_mask(x: Sequence[int]) -> int:
    """The inversion set as a bitmask over :func:`pair_index`."""
    idx = pair_index(len(x))
    mask = 0
    for i, b in enumerate(x):
        for a in x[i + 1:]:
            if a < b:
                mask |= 1 << idx[a][b]
    return mask


def length(x: Sequence[int]) -> int:
    return sum(1 for i, b in enumerate(x) for a in x[i + 1:] if a < b)


def perm_from_inversions(n: int, inversions) -> tuple[int, ...]:
    """Rebuild a permutation from its inversion set.

    Value ``v`` is preceded by exactly those ``b > v`` with ``(v, b)``
    inverted and those ``a < v`` with ``(a, v)`` not inverted, so the
    position of each value is a count.  Raises if the set is not the
    inversion set of any permutation.
    """
    inv = set(inversions)
    word = [0] * n
    for v in range(1, n + 1):
        before = sum(1 for b in range(v + 1, n + 1) if (v, b) in inv)
        before += sum(1 for a in range(1, v) if (a, v) not in inv)
        if word[before]:
            raise ValueError("not an inversion set")
        word[before] = v
    if inversion_set(word) != inv:
        raise ValueError("not an inversion set")
    return tuple(word)


def descents(x: Sequence[int]) -> list[int]:
    """1-based positions ``i`` with ``x_i > x_{i+1}``."""
    return [i + 1 for i in range(len(x) - 1) if x[i] > x[i + 1]]


def ascents(x: Sequence[int]) -> list[int]:
    return [i + 1 for i in range(len(x) - 1) if x[i] < x[i + 1]]


def swap(x: Sequence[int], i: int) -> tuple[int, ...]:
    """Exchange the entries in 1-based positions ``i`` and ``i+1``."""
    y = list(x)
    y[i - 1], y[i] = y[i], y[i - 1]
    return tuple(y)


# ---------------------------------------------------------------- patterns

def standardize(seq: Sequence[int]) -> Permutation:
    """Replace the entries of ``seq`` by their ranks.

    >>> str(standardize((7, 3, 5, 9, 1)))
    '42351'
    """
    if len(set(seq)) != len(seq):
        raise ValueError(f"repeated entries in {tuple(seq)}")
    return Permutation(_standardize(seq))


def _standardize(seq: Sequence[int]) -> tuple[int, ...]:
    rank = {v: r for r, v in enumerate(sorted(seq), 1)}
    return tuple(rank[v] for v in seq)


def _occurrences(y: Sequence[int], x: Sequence[int], pinned: int | None = None):
    """Yield position tuples of occurrences of ``y`` in ``x``.

    With ``pinned = j`` (0-based), only occurrences whose ``j``-th and
    ``j+1``-st positions are adjacent in ``x`` are produced.
    """
    k, n = len(y), len(x)
    chosen: list[int] = []

    def extend(start):
        t = len(chosen)
        if t == k:
            yield tuple(chosen)
            return
        if pinned is not None and t == pinned + 1:
            candidates = (chosen[-1] + 1,) if chosen[-1] + 1 < n else ()
        else:
            candidates = range(start, n - (k - t) + 1)
        for pos in candidates:
            v = x[pos]
            if all((x[p] < v) == (y[s] < y[t]) for s, p in enumerate(chosen)):
                chosen.append(pos)
                yield from extend(pos + 1)
                chosen.pop()

    yield from extend(0)


def occurs(y: Sequence[int], x: Sequence[int]) -> bool:
    """True iff some subsequence of ``x`` standardizes to ``y``."""
    if len(y) > len(x):
        return False
    return next(_occurrences(y, x), None) is not None


def cliff_position(y: Sequence[int]) -> int | None:
    """The 1-based ``j`` with ``y_j = k`` and ``y_{j+1} = 1``, if any."""
    k = len(y)
    for j in range(k - 1):
        if y[j] == k and y[j + 1] == 1:
            return j + 1
    return None


def occurs_with_adjacent_cliff(y: Sequence[int], x: Sequence[int]) -> bool:
    j = cliff_position(y)
    if j is None:
        raise ValueError(f"{format_word(y)} has no cliff")
    if len(y) > len(x):
        return False
    return next(_occurrences(y, x, pinned=j - 1), None) is not None


def is_join_irreducible(x: Sequence[int]) -> bool:
    return len(descents(x)) == 1


def is_untranslated_ji(x: Sequence[int]) -> bool:
    return is_join_irreducible(x) and cliff_position(x) is not None


def scrambles(g: Sequence[int]) -> set[tuple[int, ...]]:
    """Permutations sharing the cliff of ``g`` and its set of pre-cliff values."""
    if not is_untranslated_ji(g):
        raise ValueError(f"{format_word(g)} is not an untranslated join-irreducible")
    j = cliff_position(g)
    k = len(g)
    before = g[: j - 1]
    after = g[j + 1:]
    return {
        tuple(b) + (k, 1) + tuple(a)
        for b in _all_words(before)
        for a in _all_words(after)
    }


# ---------------------------------------------------------------- products

def times(u: Sequence[int], v: Sequence[int]) -> Permutation:
    """``u`` followed by ``v`` shifted up by ``len(u)``."""
    p = len(u)
    return Permutation(tuple(u) + tuple(p + w for w in v))


def ltimes(u: Sequence[int], v: Sequence[int]) -> Permutation:
    """``v`` shifted up by ``len(u)``, followed by ``u``."""
    p = len(u)
    return Permutation(tuple(p + w for w in v) + tuple(u))


def _blocks(n: int, K) -> list[tuple[int, int]]:
    """Maximal runs ``[s, e]`` of ``[n]`` joined by the generators in ``K``."""
    K = set(K)
    if any(not 1 <= i < n for i in K):
        raise ValueError(f"K must be a subset of [1, {n - 1}]")
    out, start = [], 1
    for i in range(1, n + 1):
        if i not in K:
            out.append((start, i))
            start = i + 1
    return out


def parabolic_factor(x: Sequence[int], K, side: str = "left"):
    """Factor ``x`` through the parabolic subgroup generated by ``K``.

    ``side="left"`` returns ``(x_K, ᴷx)`` with ``x = x_K·ᴷx``; the first
    factor permutes values inside each block of ``K``.  ``side="right"``
    returns ``(xᴷ, x_K)`` with ``x = xᴷ·x_K``; here the second factor
    permutes positions inside each block.  Lengths add in both cases.
    """
    n = len(x)
    blocks = _blocks(n, K)
    if side == "left":
        block_of = {}
        for s, e in blocks:
            for v in range(s, e + 1):
                block_of[v] = (s, e)
        seen = {b: [] for b in blocks}
        for v in x:
            seen[block_of[v]].append(v)
        par = [0] * n
        relabel = {}
        for (s, _), vals in seen.items():
            for r, v in enumerate(vals):
                par[s + r - 1] = v
                relabel[v] = s + r
        rest = tuple(relabel[v] for v in x)
        return Permutation(par), Permutation(rest)
    if side == "right":
        quot = list(x)
        par = [0] * n
        for s, e in blocks:
            chunk = x[s - 1: e]
            quot[s - 1: e] = sorted(chunk)
            for r, v in enumerate(_standardize(chunk)):
                par[s - 1 + r] = s - 1 + v
        return Permutation(quot), Permutation(par)
    raise ValueError("side must be 'left' or 'right'")


def in_parabolic(x: Sequence[int], K) -> bool:
    """Membership in the subgroup generated by the adjacent swaps in ``K``."""
    return all(s <= x[i - 1] <= e for s, e in _blocks(len(x), K) for i in range(s, e + 1))
