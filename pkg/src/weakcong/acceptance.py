"""The twelve acceptance criteria, shared by the CLI and the test suite.

Each criterion returns ``(ok, detail)``; :func:`run` times it, turns
exceptions into failures and enforces the wall-clock budget.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass
from math import comb, prod
from typing import Callable

from .congruence import (
    closure_bruteforce,
    congruence_from_contracted,
    forcing_ideal,
    generator_pairs_for,
    meet_congruences,
)
from .families import (
    H,
    contracted_jis,
    count_baxter,
    count_bottoms,
    count_twisted_baxter,
    family_congruence,
    named_family,
)
from .fan import (
    build_fan,
    check_fan_poset_properties,
    f_vector_combinatorial,
    h_from_covers,
    h_from_f,
    is_simplicial,
    rays,
    rays_by_type,
)
from .hopf import MRAlgebra, QuotientAlgebra, _MR, check_axioms
from .perm import all_perms
from .weak_order import join_irreducibles

HOPF_FAMILIES = ("tamari", "descent", "twisted-baxter", "snk 3", "pnk 3")
FAN_FAMILIES = ("trivial", "tamari", "descent", "twisted-baxter")
MOBIUS_FAMILIES = FAN_FAMILIES + ("snk 3", "pnk 3")


def catalan_numbers(count: int) -> list[int]:
    """``C_1, …, C_count`` from ``C_{m+1} = Σ C_i C_{m−i}``."""
    c = [1]
    for m in range(count):
        c.append(sum(c[i] * c[m - i] for i in range(m + 1)))
    return c[1:]


def baxter_closed_form(n: int) -> int:
    if n == 0:
        return 1
    top = sum(comb(n + 1, k - 1) * comb(n + 1, k) * comb(n + 1, k + 1) for k in range(1, n + 1))
    return top // (comb(n + 1, 1) * comb(n + 1, 2))


def is_baxter_west(x) -> bool:
    """Avoids 2-41-3 and 3-14-2, where the middle two letters are adjacent."""
    n = len(x)
    for j in range(n - 1):
        a, b = x[j], x[j + 1]
        lo, hi = min(a, b), max(a, b)
        before = [v for v in x[:j] if lo < v < hi]
        after = [v for v in x[j + 2:] if lo < v < hi]
        for u in before:
            for w in after:
                if a > b and u < w:   # 2-41-3
                    return False
                if a < b and u > w:   # 3-14-2
                    return False
    return True


def _threads(threads: int | None) -> int:
    return threads or os.cpu_count() or 1


# ---------------------------------------------------------------- criteria

def tamari_counts(threads=None):
    got = [count_bottoms(named_family("tamari"), n, _threads(threads)) for n in range(1, 10)]
    want = catalan_numbers(9)
    return got == want, f"counts {got}"


def descent_counts(threads=None):
    got = [count_bottoms(named_family("descent"), n, _threads(threads)) for n in range(1, 11)]
    want = [2 ** (n - 1) for n in range(1, 11)]
    return got == want, f"counts {got}"


def snk_product_formula(threads=None):
    bad = []
    for k in range(1, 9):
        spec = named_family(f"snk {k}")
        for n in range(1, 9):
            got = count_bottoms(spec, n, _threads(threads))
            want = prod(min(i, k) for i in range(1, n + 1))
            if got != want:
                bad.append((n, k, got, want))
    return not bad, f"mismatches {bad}" if bad else "64 values match"


def twisted_baxter_equals_baxter(threads=None):
    t = _threads(threads)
    twisted = [count_twisted_baxter(n, t) for n in range(1, 11)]
    bax = [count_baxter(n, t) for n in range(1, 11)]
    west = [sum(1 for x in all_perms(n) if is_baxter_west(x)) for n in range(1, 9)]
    closed = [baxter_closed_form(n) for n in range(1, 11)]
    ok = twisted == bax and bax[:8] == west and bax == closed
    return ok, f"twisted {twisted}; baxter {bax}; west (n<=8) {west}"


def meet_proposition(threads=None):
    tb, left, right = named_family("twisted-baxter"), H("231"), H("312")
    for n in range(1, 9):
        if contracted_jis(tb, n) != contracted_jis(left, n) & contracted_jis(right, n):
            return False, f"contracted sets differ at n={n}"
    for n in range(1, 8):
        if family_congruence(tb, n) != meet_congruences(family_congruence(left, n), family_congruence(right, n)):
            return False, f"partitions differ at n={n}"
    return True, "n <= 8 contracted sets, n <= 7 partitions"


def oracle_equivalence(threads=None, seed: int = 2024, samples: int = 50):
    checked = 0
    for n in range(2, 6):
        for g in join_irreducibles(n):
            brute = closure_bruteforce(n, generator_pairs_for([g]))
            fast = congruence_from_contracted(n, forcing_ideal(n, [g]))
            if brute != fast:
                return False, f"single generator {g} at n={n}"
            checked += 1
    rng = random.Random(seed)
    jis = list(join_irreducibles(6))
    for _ in range(samples):
        gens = rng.sample(jis, rng.randint(1, 3))
        brute = closure_bruteforce(6, generator_pairs_for(gens))
        fast = congruence_from_contracted(6, forcing_ideal(6, gens))
        if brute != fast:
            return False, f"generators {gens} at n=6"
    return True, f"{checked} single generators, {samples} random sets at n=6 (seed {seed})"


def hopf_axioms(threads=None):
    reports = [check_axioms(MRAlgebra(), 5)]
    reports += [check_axioms(QuotientAlgebra(named_family(f)), 6) for f in HOPF_FAMILIES]
    bad = [str(r) for r in reports if not r.ok]
    return not bad, "; ".join(bad) if bad else "MR to degree 5, five quotients to degree 6"


def embedding_theorems(threads=None, max_degree: int = 6):
    for name in HOPF_FAMILIES:
        Z = QuotientAlgebra(named_family(name))
        basis = {d: Z.basis(d) for d in range(max_degree + 1)}
        for p in range(max_degree + 1):
            for q in range(max_degree + 1 - p):
                for u in basis[p]:
                    for v in basis[q]:
                        if Z.c(Z.product(u, v)) != _MR.product(Z.c(u), Z.c(v)):
                            return False, f"{name}: product of {u} and {v}"
        for d in range(max_degree + 1):
            for x in basis[d]:
                if Z.c_tensor(Z.coproduct(x)) != _MR.coproduct(Z.c(x)):
                    return False, f"{name}: coproduct of {x}"
    return True, f"five families to total degree {max_degree}"


def pell_tower(threads=None):
    a = [count_bottoms(named_family("pnk 3"), n, _threads(threads)) for n in range(1, 10)]
    ok = all(a[i] == 2 * a[i - 1] + a[i - 2] for i in range(2, len(a)))
    return ok, f"dimensions {a}"


def fan_suite(threads=None):
    notes = []
    first_nonsimplicial = {}
    for name in FAN_FAMILIES:
        for n in range(2, 6):
            theta = family_congruence(named_family(name), n)
            fan = build_fan(theta)
            geometric_rays = set(fan.rays)
            if rays(theta) != geometric_rays:
                return False, f"{name} n={n}: combinatorial rays differ from extreme rays"
            by = rays_by_type(theta)
            tops = sum(1 for g in join_irreducibles(n) if theta.pi_up(g) == g)
            uncontracted = len(join_irreducibles(n)) - len(theta.contracted)
            if not (len(geometric_rays) == (n - 1) + tops == len(by["base"]) + len(by["join_irreducible"])):
                return False, f"{name} n={n}: ray count {len(geometric_rays)}"
            f_geo = fan.f_vector()
            if f_geo != f_vector_combinatorial(theta):
                return False, f"{name} n={n}: f-vectors {f_geo} vs {f_vector_combinatorial(theta)}"
            simplicial = is_simplicial(theta)
            # the count through uncontracted join-irreducibles goes via h_1 and needs simpliciality
            if simplicial and tops != uncontracted:
                return False, f"{name} n={n}: {tops} top join-irreducibles, {uncontracted} uncontracted"
            if simplicial != fan.is_simplicial():
                return False, f"{name} n={n}: simpliciality routes disagree"
            if simplicial and h_from_f(f_geo) != h_from_covers(theta):
                return False, f"{name} n={n}: h-vector routes disagree"
            if not simplicial:
                first_nonsimplicial.setdefault(name, n)
            rep = check_fan_poset_properties(theta, fan=fan)
            if not rep.ok:
                return False, f"{name} n={n}:\n{rep}"
            if name == "tamari" and n == 4:
                if f_geo[1:] != [9, 21, 14]:
                    return False, f"tamari n=4 face census {f_geo}"
                notes.append(f"tamari n=4 f={tuple(f_geo[1:])}")
    if first_nonsimplicial.get("twisted-baxter") != 4 or set(first_nonsimplicial) != {"twisted-baxter"}:
        return False, f"non-simplicial first seen at {first_nonsimplicial}"
    notes.append("twisted-baxter first non-simplicial at n=4")
    return True, "; ".join(notes)


def mobius_facial(threads=None):
    checked = 0
    for name in MOBIUS_FAMILIES:
        for n in range(1, 7):
            rep = check_fan_poset_properties(family_congruence(named_family(name), n), geometric=False)
            status, detail = rep.results["mobius"]
            if status != "pass":
                return False, f"{name} n={n}: {detail}"
            checked += 1
    return True, f"{checked} quotients"


def dehn_sommerville_shelling(threads=None, seed: int = 7):
    checked = 0
    for name in FAN_FAMILIES:
        for n in range(2, 6):
            theta = family_congruence(named_family(name), n)
            if not is_simplicial(theta):
                continue
            rep = check_fan_poset_properties(theta, seed=seed, geometric=False)
            for key in ("dehn-sommerville", "shelling", "flag"):
                status, detail = rep.results[key]
                if status != "pass":
                    return False, f"{name} n={n} {key}: {detail}"
            checked += 1
    return True, f"{checked} simplicial quotient fans (seed {seed})"


@dataclass
class Criterion:
    number: int
    title: str
    check: Callable
    budget: float  # seconds
    suite: str


CRITERIA = [
    Criterion(1, "Tamari counts are Catalan numbers, n=1..9", tamari_counts, 60, "lattice"),
    Criterion(2, "descent counts are 2^(n-1), n=1..10", descent_counts, 120, "lattice"),
    Criterion(3, "S_{n,k} sizes are prod min(i,k), n,k<=8", snk_product_formula, 60, "lattice"),
    Criterion(4, "twisted Baxter and Baxter counts agree, n=1..10", twisted_baxter_equals_baxter, 600, "lattice"),
    Criterion(5, "twisted-Baxter congruence is the meet of the two Tamari congruences", meet_proposition, 600, "lattice"),
    Criterion(6, "forcing-order congruences match brute-force closure", oracle_equivalence, 300, "lattice"),
    Criterion(7, "Hopf axioms for MR and five quotients", hopf_axioms, 600, "hopf"),
    Criterion(8, "quotient product and coproduct embed into MR", embedding_theorems, 600, "hopf"),
    Criterion(9, "P_{n,3} dimensions satisfy the Pell recurrence", pell_tower, 600, "lattice"),
    Criterion(10, "quotient fans: axioms, rays, 1-skeleton, faces, simpliciality", fan_suite, 600, "fan"),
    Criterion(11, "Mobius function on atomic and non-atomic intervals", mobius_facial, 600, "lattice"),
    Criterion(12, "Dehn-Sommerville, shelling and flag for simplicial fans", dehn_sommerville_shelling, 600, "fan"),
]


@dataclass
class Outcome:
    criterion: Criterion
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag} {self.criterion.number:2d} {self.criterion.title} ({self.seconds:.1f}s): {self.detail}"


def run(criterion: Criterion, threads: int | None = None) -> Outcome:
    start = time.perf_counter()
    try:
        ok, detail = criterion.check(threads)
    except Exception as exc:  # a crash is a failure of the criterion
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    if seconds > criterion.budget:
        ok, detail = False, f"took {seconds:.1f}s, budget {criterion.budget:.0f}s; {detail}"
    return Outcome(criterion, ok, detail, seconds)


def select(suite: str) -> list[Criterion]:
    if suite == "all":
        return list(CRITERIA)
    if suite not in {"lattice", "hopf", "fan"}:
        raise ValueError(f"unknown suite {suite!r}")
    return [c for c in CRITERIA if c.suite == suite]


def run_suite(suite: str = "all", threads: int | None = None, echo=print) -> list[Outcome]:
    out = []
    for c in select(suite):
        o = run(c, threads)
        if echo:
            echo(o.line())
        out.append(o)
    return out
