"""Finite posets given by their Hasse diagrams.

Elements are indexed ``0..N-1`` in an order that must be a linear extension
(every cover goes from a smaller index to a larger one).  Up-sets and
down-sets are kept as Python integers used as bitsets, which makes joins,
meets and interval queries cheap for the few thousand elements we need.
"""

from __future__ import annotations

import random
from functools import cached_property

import numpy as np


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class FinitePoset:
    def __init__(self, elements, down_covers):
        self.elements = list(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.down = [sorted(set(c)) for c in down_covers]
        self.up = [[] for _ in self.elements]
        for j, lows in enumerate(self.down):
            for i in lows:
                if i >= j:
                    raise ValueError("element order is not a linear extension")
                self.up[i].append(j)

    def __len__(self):
        return len(self.elements)

    @cached_property
    def upsets(self) -> list[int]:
        ups = [0] * len(self)
        for i in reversed(range(len(self))):
            m = 1 << i
            for j in self.up[i]:
                m |= ups[j]
            ups[i] = m
        return ups

    @cached_property
    def downsets(self) -> list[int]:
        downs = [0] * len(self)
        for i in range(len(self)):
            m = 1 << i
            for j in self.down[i]:
                m |= downs[j]
            downs[i] = m
        return downs

    def leq(self, i: int, j: int) -> bool:
        return bool(self.upsets[i] >> j & 1)

    def interval(self, i: int, j: int) -> list[int]:
        return list(_bits(self.upsets[i] & self.downsets[j]))

    def join_index(self, items) -> int:
        """Least upper bound; the uniqueness of the minimal upper bound is checked."""
        common = (1 << len(self)) - 1
        for i in items:
            common &= self.upsets[i]
        if not common:
            raise ValueError("no common upper bound")
        low = (common & -common).bit_length() - 1
        if common != self.upsets[low]:
            raise ValueError("minimal upper bound is not unique: not a lattice")
        return low

    def meet_index(self, items) -> int:
        common = (1 << len(self)) - 1
        for i in items:
            common &= self.downsets[i]
        if not common:
            raise ValueError("no common lower bound")
        high = common.bit_length() - 1
        if common != self.downsets[high]:
            raise ValueError("maximal lower bound is not unique: not a lattice")
        return high

    def join_irreducibles(self) -> list[int]:
        return [i for i in range(len(self)) if len(self.down[i]) == 1]

    def meet_irreducibles(self) -> list[int]:
        return [i for i in range(len(self)) if len(self.up[i]) == 1]

    # ------------------------------------------------------------ Möbius

    def mobius(self, i: int, j: int) -> int:
        """Möbius function by the defining recursion over ``[i, j]``."""
        if not self.leq(i, j):
            raise ValueError("mobius(x, y) needs x <= y")
        mu = {}
        for z in sorted(self.interval(i, j)):
            if z == i:
                mu[z] = 1
            else:
                mu[z] = -sum(mu[w] for w in _bits(self.upsets[i] & self.downsets[z]) if w != z)
        return mu[j]

    def mobius_matrix(self) -> np.ndarray:
        """All values of the Möbius function at once, as ``M[i, j]``.

        Solves ``M·Z = I`` column by column, where ``Z`` is the zeta matrix;
        the entries stay small integers, so int64 is exact.
        """
        N = len(self)
        zeta = self.zeta_matrix()
        M = np.zeros((N, N), dtype=np.int64)
        for j in range(N):
            col = -(M[:, :j] @ zeta[:j, j])
            col[j] = 1
            M[:, j] = col
            M[j + 1:, j] = 0
        return M

    def zeta_matrix(self) -> np.ndarray:
        N = len(self)
        Z = np.zeros((N, N), dtype=np.int64)
        for i, m in enumerate(self.upsets):
            Z[i, list(_bits(m))] = 1
        return Z

    # ------------------------------------------------------------ intervals

    def atomic_intervals(self) -> dict[tuple[int, int], int]:
        """Map each atomic interval ``(x, y)`` to its number of atoms.

        ``[x, y]`` is atomic when ``y`` is the join of the atoms of the
        interval; each such interval arises as the join of some set ``T`` of
        upper covers of ``x`` with ``T`` equal to all covers of ``x`` below it.
        """
        out = {}
        for x in range(len(self)):
            ups = self.up[x]
            for r in range(1 << len(ups)):
                chosen = [ups[t] for t in range(len(ups)) if r >> t & 1]
                y = self.join_index(chosen) if chosen else x
                atoms = [a for a in ups if self.leq(a, y)]
                if len(atoms) == len(chosen):
                    out[(x, y)] = len(atoms)
        return out

    def random_linear_extension(self, rng: random.Random) -> list[int]:
        indeg = [len(d) for d in self.down]
        ready = [i for i in range(len(self)) if indeg[i] == 0]
        order = []
        while ready:
            k = rng.randrange(len(ready))
            ready[k], ready[-1] = ready[-1], ready[k]
            i = ready.pop()
            order.append(i)
            for j in self.up[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
        return order

    def to_json(self, fmt=str) -> dict:
        return {
            "elements": [fmt(e) for e in self.elements],
            "covers": [[i, j] for j in range(len(self)) for i in self.down[j]],
        }
