from hypothesis import given, strategies as st

from weakcong.perm import (
    Permutation,
    compose,
    cliff_position,
    descents,
    format_word,
    inverse,
    inversion_set,
    is_join_irreducible,
    is_untranslated_ji,
    length,
    ltimes,
    occurs,
    occurs_with_adjacent_cliff,
    parabolic_factor,
    parse_word,
    perm_from_inversions,
    scrambles,
    standardize,
    times,
)


def perms(max_n=7):
    return st.integers(0, max_n).flatmap(lambda n: st.permutations(list(range(1, n + 1)))).map(tuple)


def test_parse_and_format():
    assert parse_word("2413") == (2, 4, 1, 3)
    assert parse_word("10,1,2,3,4,5,6,7,8,9") == (10, 1, 2, 3, 4, 5, 6, 7, 8, 9)
    assert format_word((10, 1, 2, 3, 4, 5, 6, 7, 8, 9)) == "10,1,2,3,4,5,6,7,8,9"
    assert format_word((3, 1, 2)) == "312"
    assert parse_word("") == ()
    assert Permutation("312") == (3, 1, 2)


def test_standardize_example():
    assert standardize((7, 3, 5, 9, 1)) == (4, 2, 3, 5, 1)


def test_patterns_and_cliffs():
    assert occurs((2, 3, 1), (2, 5, 3, 1, 4))
    assert not occurs((3, 2, 1), (1, 2, 3))
    assert occurs_with_adjacent_cliff((2, 3, 1), (2, 4, 3, 1))
    assert not occurs_with_adjacent_cliff((2, 4, 1, 3), (2, 5, 3, 1, 4))
    assert cliff_position((2, 4, 1, 3)) == 2
    assert is_untranslated_ji((2, 4, 1, 3))
    assert not is_untranslated_ji((1, 3, 2))
    assert is_join_irreducible((1, 3, 2))


def test_scrambles_keep_cliff_and_prefix_set():
    out = scrambles((2, 4, 1, 3))
    assert (2, 4, 1, 3) in out
    for s in out:
        assert s[1:3] == (4, 1) and set(s[:1]) == {2}


def test_shifted_products():
    assert times((2, 1), (1, 2)) == (2, 1, 3, 4)
    assert ltimes((2, 1), (1, 2)) == (3, 4, 2, 1)


def test_parabolic_factorizations():
    assert parabolic_factor((2, 1, 4, 3), {1}, "left") == ((2, 1, 3, 4), (1, 2, 4, 3))
    assert parabolic_factor((2, 1, 4, 3), {1}, "right") == ((1, 2, 4, 3), (2, 1, 3, 4))


@given(perms())
def test_inversions_round_trip(x):
    assert perm_from_inversions(len(x), inversion_set(x)) == x
    assert length(x) == len(inversion_set(x))


@given(perms())
def test_inverse_composes_to_identity(x):
    assert compose(x, inverse(x)) == tuple(range(1, len(x) + 1))


@given(perms(6), st.data())
def test_parabolic_lengths_add(x, data):
    K = data.draw(st.sets(st.integers(1, max(len(x) - 1, 1))).map(lambda s: {k for k in s if k < len(x)}))
    for side in ("left", "right"):
        a, b = parabolic_factor(x, K, side)
        assert compose(a, b) == x
        assert length(a) + length(b) == length(x)


@given(perms())
def test_descents_match_inversions_of_adjacent_pairs(x):
    assert descents(x) == [i for i in range(1, len(x)) if (x[i], x[i - 1]) in inversion_set(x)]
