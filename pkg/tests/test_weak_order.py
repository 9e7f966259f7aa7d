import random

import numpy as np
import pytest

from weakcong.perm import all_perms, inversion_set
from weakcong.weak_order import (
    JoinIrreducible,
    WeakOrder,
    covers_down,
    edge_ji,
    join_by_inversions,
    join_irreducibles,
    leq,
    lower_cover,
    meet_by_inversions,
    mobius,
    weak_order,
)


def test_small_joins_and_meets():
    L = weak_order(3)
    assert L.meet([(3, 1, 2), (2, 3, 1)]) == (1, 2, 3)
    assert L.join([(2, 1, 3), (1, 3, 2)]) == (3, 2, 1)
    assert join_by_inversions([(2, 1, 3), (1, 3, 2)]) == (3, 2, 1)
    assert meet_by_inversions([(3, 1, 2), (2, 3, 1)]) == (1, 2, 3)


@pytest.mark.parametrize("n", [4, 5])
def test_join_routes_agree(n):
    L = weak_order(n)
    rng = random.Random(n)
    for _ in range(300):
        items = rng.sample(L.perms, rng.randint(1, 3))
        assert L.join(items) == join_by_inversions(items)
        assert L.meet(items) == meet_by_inversions(items)


def test_order_is_inversion_containment():
    L = weak_order(4)
    for i in range(len(L)):
        for j in range(len(L)):
            assert L.poset.leq(i, j) == (inversion_set(L.perms[i]) <= inversion_set(L.perms[j]))


def test_mobius_values():
    assert mobius((1, 2, 3), (3, 2, 1)) == 1
    assert mobius((1, 2, 3), (2, 1, 3)) == -1
    assert mobius((1, 2, 3), (2, 3, 1)) == 0


def test_mobius_matrix_matches_recursion():
    P = weak_order(4).poset
    M = P.mobius_matrix()
    Z = P.zeta_matrix()
    assert np.array_equal(M @ Z, np.eye(len(P), dtype=np.int64))
    for i in range(0, len(P), 5):
        for j in range(len(P)):
            if P.leq(i, j):
                assert M[i, j] == P.mobius(i, j)


@pytest.mark.parametrize("n", range(1, 7))
def test_join_irreducible_count(n):
    jis = join_irreducibles(n)
    assert len(jis) == 2 ** n - n - 1
    for g in jis:
        assert len(covers_down(g)) == 1
        assert lower_cover(g) in covers_down(g)


def test_join_irreducible_data():
    g = JoinIrreducible.from_perm((2, 4, 1, 3))
    assert g.A == {1, 3}
    assert (g.m, g.M, g.degree) == (1, 4, 3)
    assert g.perm == (2, 4, 1, 3)
    with pytest.raises(ValueError):
        JoinIrreducible(3, frozenset({3}))


def test_edge_label_example():
    assert edge_ji((3, 1, 4, 2), 3) == (1, 3, 4, 2)


def test_edge_label_is_minimal_ji_below_top_not_below_bottom():
    # the label of a cover y ⋖ x is the unique minimal join-irreducible g <= x with g not <= y
    for x in all_perms(4):
        for i in range(1, 4):
            if x[i - 1] > x[i]:
                y = tuple(x[: i - 1]) + (x[i], x[i - 1]) + tuple(x[i + 1:])
                cands = [g for g in join_irreducibles(4) if leq(g, x) and not leq(g, y)]
                least = [g for g in cands if all(leq(g, h) for h in cands)]
                assert least == [edge_ji(x, i)]


def test_capacity_guard():
    with pytest.raises(ValueError):
        WeakOrder(9)
