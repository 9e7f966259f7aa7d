"""Quotient fans of the braid arrangement, computed with exact rationals.

A point ``p`` of Rⁿ lies in the chamber of ``x`` when
``p[x₁] ≤ p[x₂] ≤ … ≤ p[xₙ]``; the identity gives the base chamber and
``p = x⁻¹`` is an interior point of the chamber of ``x``.  Every cone here
is cut out by inequalities ``⟨ν, p⟩ ≥ 0`` with ``ν = e_a − e_b``, so each
cone is a union of closed chambers and every ray is spanned by some
indicator vector ``𝟙_S`` modulo the lineality space.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Sequence

import networkx as nx

from .congruence import Congruence
from .linalg import dot, nullspace, orthonormal_free_basis, primitive, project_off, rank
from .perm import all_perms, format_word, inverse, inversion_set
from .poset import _bits
from .weak_order import join_irreducibles, subset_from_ji

MAX_GEOMETRIC = 5
MAX_COMBINATORIAL = 6


def _unit(n: int, a: int, b: int) -> tuple[int, ...]:
    """The vector ``e_a − e_b`` (1-based)."""
    v = [0] * n
    v[a - 1] += 1
    v[b - 1] -= 1
    return tuple(v)


def indicator(n: int, S) -> tuple[int, ...]:
    return tuple(1 if v in S else 0 for v in range(1, n + 1))


class RationalCone:
    """The cone ``{p : ⟨ν, p⟩ ≥ 0 for every normal ν}`` in Rⁿ."""

    def __init__(self, n: int, normals):
        self.n = n
        self.normals = tuple(sorted(set(tuple(v) for v in normals)))

    def __repr__(self):
        return f"RationalCone(n={self.n}, normals={len(self.normals)})"

    def contains(self, p) -> bool:
        return all(dot(v, p) >= 0 for v in self.normals)

    def contains_strictly(self, p) -> bool:
        return all(dot(v, p) > 0 for v in self.normals)

    @cached_property
    def lineality_basis(self) -> list:
        return orthonormal_free_basis(nullspace(list(self.normals), self.n))

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality_basis)

    @cached_property
    def extreme_rays(self) -> list[tuple[int, ...]]:
        """Primitive generators modulo lineality, orthogonal to the lineality space.

        Each ray is the one-dimensional solution of ``D − 1`` independent
        tight normals plus orthogonality to the lineality space, where ``D`` is
        the dimension modulo lineality.
        """
        lin = [list(b) for b in self.lineality_basis]
        D = self.n - len(lin)
        found = set()
        if D == 0:
            return []
        for subset in combinations(self.normals, D - 1):
            rows = list(subset) + lin
            if rank(rows) != self.n - 1:
                continue
            (v,) = nullspace(rows, self.n)
            for sign in (1, -1):
                w = [sign * a for a in v]
                if self.contains(w):
                    found.add(primitive(w))
        return sorted(found)

    @cached_property
    def facets(self) -> list[tuple[int, ...]]:
        """The normals whose tight rays span a hyperplane (irredundant H-representation)."""
        D = self.n - self.lineality_dim
        out = []
        for v in self.normals:
            tight = [r for r in self.extreme_rays if dot(v, r) == 0]
            if (rank(tight) if tight else 0) == D - 1:
                out.append(v)
        return out

    def interior_point(self):
        total = [0] * self.n
        for r in self.extreme_rays:
            total = [a + b for a, b in zip(total, r)]
        return total


def region_cone(x: Sequence[int]) -> RationalCone:
    """The chamber of ``x``: ``p_b ≤ p_a`` for inversions ``(a, b)``, ``p_a ≤ p_b`` otherwise."""
    n = len(x)
    inv = inversion_set(x)
    normals = []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            normals.append(_unit(n, a, b) if (a, b) in inv else _unit(n, b, a))
    return RationalCone(n, normals)


def class_cone(theta: Congruence, x: Sequence[int]) -> RationalCone:
    """Union of the chambers in the class of ``x``, from its bottom and top."""
    n = theta.n
    low = inversion_set(theta.pi_down(x))
    high = inversion_set(theta.pi_up(x))
    normals = []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if (a, b) in low:
                normals.append(_unit(n, a, b))
            elif (a, b) not in high:
                normals.append(_unit(n, b, a))
    return RationalCone(n, normals)


def chamber_point(x: Sequence[int]) -> tuple[int, ...]:
    return tuple(inverse(x))


class FanError(RuntimeError):
    pass


def _lineality_dim(theta: Congruence) -> int:
    return 1 + theta.contracted_atoms()


# ---------------------------------------------------------------- combinatorial side

def is_simplicial(theta: Congruence) -> bool:
    """Every class has ``n − dim(lineality)`` covers: below its bottom plus above its top."""
    L = theta.lattice
    target = theta.n - _lineality_dim(theta)
    return all(len(L.down[b]) + len(L.up[t]) == target for b, t in zip(theta.bottom, theta.top))


def _projected_ray(n: int, S) -> tuple[int, ...]:
    k = len(S)
    return primitive([n * (v in S) - k for v in range(1, n + 1)])


def rays_by_type(theta: Congruence) -> dict[str, list[tuple[int, ...]]]:
    """Rays listed as facet rays of the base chamber and rays of top join-irreducibles."""
    n = theta.n
    if theta.contracted_atoms():
        raise ValueError("the congruence contracts an atom; restrict to a parabolic subarrangement first")
    base = [_projected_ray(n, set(range(i + 1, n + 1))) for i in range(1, n)]
    tops = [_projected_ray(n, subset_from_ji(g)) for g in join_irreducibles(n) if theta.pi_up(g) == g]
    return {"base": base, "join_irreducible": tops}


def rays(theta: Congruence) -> set[tuple[int, ...]]:
    """Primitive ray vectors orthogonal to ``(1, …, 1)``, from the combinatorial rule."""
    by = rays_by_type(theta)
    out = set(by["base"]) | set(by["join_irreducible"])
    if len(out) != len(by["base"]) + len(by["join_irreducible"]):
        raise FanError("combinatorial ray rule produced a repeated ray")
    return out


def f_vector_combinatorial(theta: Congruence) -> list[int]:
    """``f_{-1}, …, f_{d-1}`` from atomic intervals: a face of dimension ``n − k`` per interval with ``k`` atoms."""
    lin = _lineality_dim(theta)
    d = theta.n - lin
    f = [0] * (d + 1)
    for (_, _), atoms in theta.quotient.atomic_intervals().items():
        dim = theta.n - atoms
        f[dim - lin] += 1
    return f


def h_from_f(f: Sequence[int]) -> list[int]:
    """Solve ``Σ f_{i−1}(x−1)^{d−i} = Σ h_i x^{d−i}``."""
    d = len(f) - 1
    h = [0] * (d + 1)
    for i in range(d + 1):
        # x^j in (x−1)^e is the x^{d−(d−j)} slot, i.e. h_{d−j}
        e = d - i
        for j in range(e + 1):
            h[d - j] += f[i] * comb(e, j) * (-1) ** (e - j)
    return h


def h_from_covers(theta: Congruence) -> list[int]:
    """``h_i`` = number of classes covering exactly ``i`` classes."""
    d = theta.n - _lineality_dim(theta)
    h = [0] * (d + 1)
    for lows in theta.quotient.down:
        h[len(lows)] += 1
    return h


def f_vector(theta: Congruence) -> list[int]:
    return f_vector_combinatorial(theta)


def h_vector(theta: Congruence) -> list[int]:
    h = h_from_f(f_vector_combinatorial(theta))
    if is_simplicial(theta) and h != h_from_covers(theta):
        raise FanError("h-vector from faces disagrees with the cover counts")
    return h


@dataclass
class FaceComplex:
    """Faces as atomic intervals; ``cones[k]`` lists the classes in face ``k``."""

    intervals: list[tuple[int, int]]
    dims: list[int]
    cones: list[frozenset]

    def vertex_sets(self, theta: Congruence) -> list[frozenset]:
        """For each maximal cone, the set of ray faces it contains."""
        lin = _lineality_dim(theta)
        ray_faces = [k for k, dim in enumerate(self.dims) if dim == lin + 1]
        out = []
        for c in range(len(theta.quotient)):
            out.append(frozenset(k for k in ray_faces if c in self.cones[k]))
        return out


def face_complex(theta: Congruence) -> FaceComplex:
    P = theta.quotient
    ups, downs = P.upsets, P.downsets
    intervals, dims, cones = [], [], []
    for (x, y), atoms in sorted(P.atomic_intervals().items()):
        intervals.append((x, y))
        dims.append(theta.n - atoms)
        cones.append(frozenset(_bits(ups[x] & downs[y])))
    return FaceComplex(intervals, dims, cones)


# ---------------------------------------------------------------- geometric fan

class QuotientFan:
    """The fan whose maximal cones are the class cones of ``theta``.

    Construction checks that every chamber lies in exactly one maximal cone
    and that any two maximal cones meet in a common face.
    """

    def __init__(self, theta: Congruence, verify: bool = True):
        if theta.n > MAX_GEOMETRIC:
            raise ValueError(f"geometric fan construction is limited to n <= {MAX_GEOMETRIC}")
        self.theta = theta
        self.n = n = theta.n
        self.bottoms = list(theta.bottoms)
        self.cones = [class_cone(theta, b) for b in self.bottoms]
        self.lineality_dim = _lineality_dim(theta)
        self.d = n - self.lineality_dim
        self.braid_sets = [frozenset(v for v in range(1, n + 1) if m >> (v - 1) & 1) for m in range(1, (1 << n) - 1)]
        self.braid_vectors = [indicator(n, S) for S in self.braid_sets]
        self.membership = [
            sum(1 << k for k, v in enumerate(self.braid_vectors) if cone.contains(v)) for cone in self.cones
        ]
        if verify:
            self._verify_classes()
            self._verify_lineality()
            self._verify_intersections()

    # ------------------------------------------------------------ checks

    def _verify_classes(self):
        """Chambers in a class lie inside its cone, all others stay outside."""
        theta = self.theta
        for x in all_perms(self.n):
            p = chamber_point(x)
            own = theta.class_of[theta.lattice.index[x]]
            for c, cone in enumerate(self.cones):
                if c == own:
                    if not cone.contains_strictly(p):
                        raise FanError(f"chamber {format_word(x)} is not interior to its class cone")
                elif cone.contains(p):
                    raise FanError(f"chamber {format_word(x)} meets the cone of {format_word(self.bottoms[c])}")

    def _verify_lineality(self):
        lins = {cone.lineality_dim for cone in self.cones}
        # the fan's minimal cone is the intersection of all maximal cones
        common = set().union(*(cone.normals for cone in self.cones))
        total = self.n - rank(list(common)) if common else self.n
        if total != self.lineality_dim:
            raise FanError(f"lineality dimension {total}, expected {self.lineality_dim}")
        if any(lin > self.n for lin in lins):
            raise FanError("cone with impossible lineality")

    def _tight_facets(self, c: int) -> list[int]:
        """Braid-ray masks of the facets of cone ``c``."""
        cone = self.cones[c]
        out = []
        for v in cone.facets:
            out.append(sum(1 << k for k in _bits(self.membership[c]) if dot(v, self.braid_vectors[k]) == 0))
        return out

    @cached_property
    def facet_masks(self) -> list[list[int]]:
        return [self._tight_facets(c) for c in range(len(self.cones))]

    def _smallest_face_mask(self, c: int, R: int) -> int:
        g = self.membership[c]
        for m in self.facet_masks[c]:
            if R & ~m == 0:
                g &= m
        return g

    def _verify_intersections(self):
        """``C₁ ∩ C₂`` is the smallest face of each containing their common rays."""
        for i, j in combinations(range(len(self.cones)), 2):
            R = self.membership[i] & self.membership[j]
            for a, b in ((i, j), (j, i)):
                G = self._smallest_face_mask(a, R)
                if G & ~self.membership[b]:
                    raise FanError(
                        f"cones of {format_word(self.bottoms[i])} and {format_word(self.bottoms[j])} "
                        "meet outside a common face"
                    )

    # ------------------------------------------------------------ faces

    @cached_property
    def lineality_basis(self):
        common = set().union(*(cone.normals for cone in self.cones))
        return orthonormal_free_basis(nullspace(list(common), self.n))

    def project(self, v) -> tuple[int, ...]:
        return primitive(project_off(v, self.lineality_basis))

    @cached_property
    def rays(self) -> list[tuple[int, ...]]:
        """Geometric extreme rays of all maximal cones, lex-sorted."""
        found = set()
        for cone in self.cones:
            found.update(cone.extreme_rays)
        return sorted(found)

    @cached_property
    def cone_rays(self) -> list[frozenset]:
        index = {r: k for k, r in enumerate(self.rays)}
        return [frozenset(index[r] for r in cone.extreme_rays) for cone in self.cones]

    def _dim_of_rays(self, ray_ids) -> int:
        vecs = [self.rays[k] for k in ray_ids]
        return self.lineality_dim + (rank(vecs) if vecs else 0)

    @cached_property
    def faces(self) -> dict[frozenset, tuple[int, frozenset]]:
        """Every face, keyed by its ray set, with its dimension and the maximal cones containing it."""
        registry: dict[frozenset, int] = {}
        for c, cone in enumerate(self.cones):
            index = {r: k for k, r in enumerate(self.rays)}
            facet_sets = []
            for v in cone.facets:
                facet_sets.append(frozenset(index[r] for r in cone.extreme_rays if dot(v, r) == 0))
            level = {self.cone_rays[c]}
            seen = set(level)
            while level:
                nxt = set()
                for F in level:
                    for S in facet_sets:
                        G = F & S
                        if G != F and G not in seen:
                            seen.add(G)
                            nxt.add(G)
                level = nxt
            for F in seen:
                registry.setdefault(F, 0)
        out = {}
        for F in registry:
            holders = frozenset(c for c in range(len(self.cones)) if F <= self.cone_rays[c])
            out[F] = (self._dim_of_rays(F), holders)
        return out

    def f_vector(self) -> list[int]:
        f = [0] * (self.d + 1)
        for dim, _ in self.faces.values():
            f[dim - self.lineality_dim] += 1
        return f

    def is_simplicial(self) -> bool:
        return all(len(rs) == self.d for rs in self.cone_rays)

    def adjacency(self) -> set[frozenset]:
        """Pairs of maximal cones sharing a codimension-one face."""
        out = set()
        for i, j in combinations(range(len(self.cones)), 2):
            R = self.membership[i] & self.membership[j]
            vecs = [self.braid_vectors[k] for k in _bits(R)]
            dim = rank(vecs + [list(b) for b in self.lineality_basis]) if vecs else self.lineality_dim
            if dim == self.n - 1:
                out.add(frozenset((i, j)))
        return out

    def contains_fan(self, finer: "QuotientFan") -> bool:
        """Whether every maximal cone of ``finer`` lies in a maximal cone of this fan."""
        for cone in finer.cones:
            p = cone.interior_point()
            lin = [list(b) for b in cone.lineality_basis]
            holders = [c for c in self.cones if c.contains(p)]
            if len(holders) != 1:
                return False
            (host,) = holders
            if not all(host.contains(r) for r in cone.extreme_rays):
                return False
            if not all(host.contains(v) and host.contains([-a for a in v]) for v in lin):
                return False
        return True

    def to_json(self) -> dict:
        order = sorted(range(len(self.cones)), key=lambda c: format_word(self.bottoms[c]))
        return {
            "n": self.n,
            "lineality_dim": self.lineality_dim,
            "rays": [list(r) for r in self.rays],
            "maximal_cones": [sorted(self.cone_rays[c]) for c in order],
            "bottoms": [format_word(self.bottoms[c]) for c in order],
            "f_vector": self.f_vector(),
            "h_vector": h_from_f(self.f_vector()),
        }


def build_fan(theta: Congruence, verify: bool = True) -> QuotientFan:
    return QuotientFan(theta, verify=verify)


# ---------------------------------------------------------------- property report

B_FUNCTIONAL_NAME = "b = (n, n-1, ..., 1)"
_NO_GEOMETRY = "geometry not requested or n > 5"


@dataclass
class FanReport:
    n: int
    results: dict = field(default_factory=dict)

    def record(self, name: str, ok: bool | None, detail: str = ""):
        status = "skipped" if ok is None else ("pass" if ok else "fail")
        self.results[name] = (status, detail)

    @property
    def ok(self) -> bool:
        return all(status != "fail" for status, _ in self.results.values())

    def __str__(self):
        lines = []
        for name, (status, detail) in self.results.items():
            lines.append(f"{status:7s} {name}" + (f": {detail}" if detail else ""))
        return "\n".join(lines)


def _shelling_ok(facets: list[frozenset]) -> tuple[bool, str]:
    """Condition (ii): each facet meets the union of earlier ones in a pure codimension-one complex."""
    for j in range(1, len(facets)):
        Fj = facets[j]
        ridges = [facets[k] & Fj for k in range(j) if len(facets[k] & Fj) == len(Fj) - 1]
        if not ridges:
            return False, f"facet {j} meets earlier facets in no ridge"
        for i in range(j):
            common = facets[i] & Fj
            if not any(common <= r for r in ridges):
                return False, f"facets {i} and {j} meet outside the ridges of facet {j}"
    return True, ""


def _flag_ok(facets: list[frozenset]) -> tuple[bool, str]:
    G = nx.Graph()
    for F in facets:
        G.add_nodes_from(F)
        G.add_edges_from(combinations(sorted(F), 2))
    for clique in nx.find_cliques(G):
        S = frozenset(clique)
        if not any(S <= F for F in facets):
            return False, f"clique of {len(S)} rays spans no face"
    return True, ""


def _mobius_ok(theta: Congruence) -> tuple[bool, str]:
    P = theta.quotient
    M = P.mobius_matrix()
    atomic = P.atomic_intervals()
    for x in range(len(P)):
        for y in _bits(P.upsets[x]):
            want = (-1) ** atomic[(x, y)] if (x, y) in atomic else 0
            if M[x, y] != want:
                return False, f"mu({format_word(P.elements[x])}, {format_word(P.elements[y])}) = {M[x, y]}, expected {want}"
    return True, ""


def check_fan_poset_properties(theta: Congruence, seed: int = 0, extensions: int = 3,
                               geometric: bool = True, fan: QuotientFan | None = None) -> FanReport:
    """Combinatorial checks up to n = 6, geometric cross-checks up to n = 5."""
    n = theta.n
    if n > MAX_COMBINATORIAL:
        raise ValueError(f"fan/poset checks are limited to n <= {MAX_COMBINATORIAL}")
    rep = FanReport(n)
    P = theta.quotient
    simplicial = is_simplicial(theta)
    fc = face_complex(theta)
    if fan is None and geometric and n <= MAX_GEOMETRIC:
        fan = QuotientFan(theta)

    if fan is not None:
        hasse = {frozenset((i, j)) for j in range(len(P)) for i in P.down[j]}
        # quotient elements and fan cones share the class numbering
        rep.record("1-skeleton", hasse == fan.adjacency(), f"{len(hasse)} edges")
    else:
        rep.record("1-skeleton", None, _NO_GEOMETRY)

    rep.record("mobius", *_mobius_ok(theta))

    if fan is not None:
        geometric = {holders: dim for dim, holders in fan.faces.values()}
        combinatorial = {c: dim for c, dim in zip(fc.cones, fc.dims)}
        rep.record("atomic-facial", geometric == combinatorial,
                   f"{len(geometric)} faces, {len(combinatorial)} atomic intervals")
    else:
        rep.record("atomic-facial", None, _NO_GEOMETRY)

    h = h_from_f(f_vector_combinatorial(theta))
    if simplicial:
        d = len(h) - 1
        rep.record("dehn-sommerville", all(h[i] == h[d - i] for i in range(d + 1)) and h == h_from_covers(theta),
                   f"h = {tuple(h)}")
        facets = fc.vertex_sets(theta)
        rng = random.Random(seed)
        outcome, detail = True, ""
        for _ in range(extensions):
            order = P.random_linear_extension(rng)
            ok, why = _shelling_ok([facets[c] for c in order])
            if not ok:
                outcome, detail = False, why
                break
        rep.record("shelling", outcome, detail or f"{extensions} linear extensions, seed {seed}")
        rep.record("flag", *_flag_ok(facets))
    else:
        for name in ("dehn-sommerville", "shelling", "flag"):
            rep.record(name, None, "not simplicial")

    if fan is not None:
        b = [n - i for i in range(n)]
        outcome, detail = True, ""
        for c, cone in enumerate(fan.cones):
            outward = [tuple(-a for a in v) for v in cone.facets]
            pos = [v for v in outward if dot(b, v) > 0]
            neg = [v for v in outward if dot(b, v) < 0]
            if len(pos) + len(neg) != len(outward) or any(s and rank(s) != len(s) for s in (pos, neg)):
                outcome, detail = False, f"cone of {format_word(fan.bottoms[c])}"
                break
        rep.record("bisimplicial", outcome, detail or B_FUNCTIONAL_NAME)
        rep.record("simplicial", fan.is_simplicial() == simplicial, f"simplicial = {simplicial}")
        if theta.contracted_atoms():
            rep.record("rays", None, "an atom is contracted")
        else:
            rep.record("rays", rays(theta) == set(fan.rays), f"{len(fan.rays)} rays")
    else:
        rep.record("bisimplicial", None, _NO_GEOMETRY)
        rep.record("simplicial", None, _NO_GEOMETRY)
        rep.record("rays", None, _NO_GEOMETRY)
    return rep

