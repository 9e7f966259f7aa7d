"""Exact linear algebra over the rationals for small dense matrices."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [[Fraction(v) for v in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        m[r] = [v / lead for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """A basis of ``{p : row·p = 0 for every row}``."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(m, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence) -> Vector:
    """Scale a rational vector to coprime integers, keeping its direction."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def orthonormal_free_basis(vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    """Orthogonal (not normalized) basis of the span, by exact Gram–Schmidt."""
    out: list[list[Fraction]] = []
    for v in vectors:
        w = [Fraction(x) for x in v]
        for b in out:
            w = [a - dot(w, b) / dot(b, b) * c for a, c in zip(w, b)]
        if any(w):
            out.append(w)
    return out


def project_off(v: Sequence, basis: Sequence[Sequence]) -> list[Fraction]:
    """Component of ``v`` orthogonal to the span of an orthogonal ``basis``."""
    w = [Fraction(x) for x in v]
    for b in basis:
        w = [a - dot(w, b) / dot(b, b) * c for a, c in zip(w, b)]
    return w
