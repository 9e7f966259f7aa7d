import pytest

from weakcong.acceptance import is_baxter_west
from weakcong.congruence import irr_con_order, trivial_congruence
from weakcong.families import (
    H,
    Tr,
    baxter,
    bottoms,
    class_of_bottom,
    contracted_jis,
    count_bottoms,
    family_congruence,
    family_from_generators,
    h_covers,
    is_bottom,
    is_contracted_by_scrambles,
    is_contracted_perm,
    is_insertional,
    is_insertional_by_cosets,
    is_translational,
    left_insert,
    named_family,
    pi_down_fast,
    right_insert,
    tr_covers,
    twisted_baxter,
    untranslated_jis,
)
from weakcong.perm import all_perms, identity, ltimes, occurs, times
from weakcong.weak_order import join_irreducibles


def P(word):
    return tuple(int(c) for c in word)


def test_insertions():
    assert right_insert(P("312"), 1) == P("4123")
    assert left_insert(P("312"), 2) == P("2413")
    assert left_insert(P("312"), 4) == P("3412")


def test_cover_examples():
    assert tr_covers(P("312")) == {P("4123"), P("2413"), P("3412")}
    assert tr_covers(P("21")) == {P("231"), P("312")}
    assert h_covers(P("312")) >= tr_covers(P("312"))


def test_degree_three_rank():
    rank3 = set().union(*(tr_covers(g) for g in tr_covers(P("21"))))
    assert rank3 == {P("2341"), P("3412"), P("2413"), P("4123")}
    assert set(untranslated_jis(4)) == rank3


def test_h_infinity_adds_exactly_two_covers():
    extra = set()
    for size in (2, 3, 4):
        for g in untranslated_jis(size):
            for h in h_covers(g) - tr_covers(g):
                extra.add((g, h))
    assert extra == {(P("2341"), P("24513")), (P("4123"), P("35124"))}


def test_contracted_sets():
    assert contracted_jis(H("312"), 4) == {g for g in join_irreducibles(4) if occurs(P("312"), g)}
    assert contracted_jis(H(), 5) == frozenset()
    for g in ("312", "2413", "3412", "2341"):
        for n in range(2, 7):
            assert contracted_jis(Tr(g), n) <= contracted_jis(H(g), n)


def test_contracted_perm_examples():
    tam = H("312")
    assert is_contracted_perm(tam, P("312"))
    assert not is_contracted_perm(tam, P("321"))
    for spec in (tam, named_family("twisted-baxter"), named_family("snk 2")):
        assert not is_contracted_perm(spec, identity(5))
    assert pi_down_fast(tam, P("312")) == P("132")


@pytest.mark.parametrize("gens", [("312",), ("231",), ("2413", "3412"), ("2341",), ("4123", "231"), ("24513",), ("35124", "2341")])
def test_signature_rule_matches_scrambles(gens):
    spec = H(*gens)
    for n in range(1, 7):
        for x in all_perms(n):
            assert is_contracted_perm(spec, x) == is_contracted_by_scrambles(spec, x)


def test_twisted_baxter_predicate_matches_family():
    spec = named_family("twisted-baxter")
    for x in all_perms(6):
        assert is_contracted_perm(spec, x) == (not twisted_baxter(x))
    assert not twisted_baxter(P("2413"))


@pytest.mark.parametrize("name", ["twisted-baxter", "tamari", "pnk 3", "snk 3"])
def test_fast_projection_matches_lattice(name):
    spec = named_family(name)
    theta = family_congruence(spec, 6)
    for x in all_perms(6):
        assert pi_down_fast(spec, x) == theta.pi_down(x)


@pytest.mark.parametrize("name", ["tamari", "twisted-baxter", "descent"])
def test_class_walk_matches_lattice(name):
    spec = named_family(name)
    theta = family_congruence(spec, 5)
    for b in theta.bottoms:
        assert class_of_bottom(spec, b) == sorted(theta.class_members(b))
        assert is_bottom(spec, b)


def test_tr_family_uses_lattice():
    spec = Tr("2413")
    theta = family_congruence(spec, 5)
    assert count_bottoms(spec, 5) == len(theta)
    for x in all_perms(5):
        assert is_bottom(spec, x) == theta.is_bottom(x)


def test_312_bottoms_are_312_avoiders():
    for n in range(1, 9):
        assert set(bottoms(H("312"), n)) == {x for x in all_perms(n) if not occurs(P("312"), x)}


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_snk_contracts_large_adjacent_descents(k):
    spec = named_family(f"snk {k}")
    for n in range(1, 8):
        for x in all_perms(n):
            big = any(x[i] - x[i + 1] >= k for i in range(n - 1))
            assert is_contracted_perm(spec, x) == big


def test_named_families():
    assert named_family("tamari") == H("312")
    assert named_family("snk 1") == H("21")
    assert named_family("pnk 3") == H("231", "4123")
    assert family_from_generators("2413,3412") == named_family("twisted-baxter")
    with pytest.raises(ValueError):
        named_family("nope")
    with pytest.raises(ValueError):
        H("132")


def test_small_baxter_predicates():
    for x in all_perms(3):
        assert twisted_baxter(x) and baxter(x)


@pytest.mark.parametrize("n", range(1, 8))
def test_baxter_local_rule_matches_west(n):
    for x in all_perms(n):
        assert baxter(x) == is_baxter_west(x)


def test_h_families_are_translational_and_insertional():
    for spec in (H("312"), named_family("twisted-baxter"), H()):
        assert is_translational(spec, 6)
        assert is_insertional(spec, 6)
        assert is_insertional_by_cosets(spec, 5)


def test_broken_family_is_caught():
    def broken(n):
        if n == 4:
            return family_congruence(H("312"), 4)
        return trivial_congruence(n)

    assert not is_translational(broken, 5)
    assert not is_insertional(broken, 5)


def test_lift_lemmas():
    for k in range(2, 5):
        small = irr_con_order(k)
        for p in range(3):
            for q in range(3 - p):
                n = p + k + q
                if n > 6:
                    continue
                big = irr_con_order(n)
                pad = {g: times(times(identity(p), g), identity(q)) for g in small.elements}
                for a in small.elements:
                    for b in small.elements:
                        assert small.leq(a, b) == big.leq(pad[a], pad[b])
                    # everything above a translate is a translate with the same padding
                    image = set(pad.values())
                    for h in big.elements:
                        if big.leq(pad[a], h):
                            assert h in image


@pytest.mark.parametrize("name", ["tamari", "twisted-baxter", "pnk 3"])
def test_bottom_and_top_cosets_carry_the_same_partition(name):
    spec = named_family(name)
    for total in range(2, 7):
        theta = family_congruence(spec, total)
        for p in range(1, total):
            low, high = {}, {}
            for u in all_perms(p):
                for v in all_perms(total - p):
                    low[(u, v)] = theta.pi_down(times(u, v))
                    high[(u, v)] = theta.pi_down(ltimes(u, v))
            keys = list(low)
            for a in keys:
                for b in keys:
                    assert (low[a] == low[b]) == (high[a] == high[b])
