import json

import pytest

from weakcong import hopf
from weakcong.congruence import trivial_congruence
from weakcong.families import H, family_congruence, named_family
from weakcong.hopf import (
    GradedVector,
    MRAlgebra,
    QuotientAlgebra,
    TensorVector,
    antipode,
    c_map,
    check_axioms,
    mr_coproduct,
    mr_product,
    r_map,
    shuffles,
    weak_interval,
    z_coproduct,
    z_product,
)
from weakcong.perm import all_perms, times


def P(word):
    return tuple(int(c) for c in word)


def vec(*words):
    return GradedVector({P(w): 1 for w in words})


def test_small_products():
    assert mr_product(P("1"), P("1")) == vec("12", "21")
    assert mr_product(P("12"), P("1")) == vec("123", "132", "312")
    assert mr_product((), P("21")) == vec("21")


@pytest.mark.parametrize("p,q", [(a, b) for a in range(4) for b in range(4) if a + b <= 6])
def test_interval_product_equals_shuffles(p, q):
    for u in all_perms(p):
        for v in all_perms(q):
            assert set(weak_interval(times(u, v), hopf.ltimes(u, v))) == set(shuffles(u, v))


def test_coproduct_example():
    assert str(mr_coproduct(P("213"))) == "+1·∅ ⊗ 213 +1·1 ⊗ 12 +1·21 ⊗ 1 +1·213 ⊗ ∅"


def test_antipode_examples():
    assert antipode(None, ()) == GradedVector({(): 1})
    assert antipode(None, P("1")) == GradedVector({P("1"): -1})
    s = antipode(None, P("21"))
    total = GradedVector()
    for (a, b), c in mr_coproduct(P("21")).terms.items():
        total = total + mr_product(antipode(None, a), b) * c
    assert total == GradedVector()
    assert s == vec("12")


def test_c_and_r_maps():
    tam = named_family("tamari")
    assert c_map(tam, P("132")) == vec("132", "312")
    assert c_map(tam, P("123")) == vec("123")
    assert r_map(tam, vec("312")) == GradedVector()
    Z = QuotientAlgebra(tam)
    for n in range(7):
        for b in Z.basis(n):
            assert Z.r(Z.c(b)) == GradedVector({b: 1})


def test_quotient_rejects_non_bottoms():
    with pytest.raises(ValueError):
        z_product(named_family("tamari"), P("312"), P("1"))


def test_descent_degree_three_dimensions():
    Z = QuotientAlgebra(named_family("descent"))
    assert len(Z.basis(3)) == 4
    for x in Z.basis(3):
        dx = Z.coproduct(x)
        assert {len(a) + len(b) for a, b in dx.terms} == {3}


@pytest.mark.parametrize("name", ["tamari", "descent", "twisted-baxter", "pnk 3"])
def test_coproduct_routes_agree(name):
    Z = QuotientAlgebra(named_family(name))
    for n in range(6):
        for x in Z.basis(n):
            assert Z.coproduct_basis(x) == Z.coproduct_rearranged(x)


@pytest.mark.parametrize("name", ["tamari", "twisted-baxter", "snk 3"])
def test_product_routes_agree(name):
    Z = QuotientAlgebra(named_family(name))
    for p in range(4):
        for q in range(4 - p + 1):
            for u in Z.basis(p):
                for v in Z.basis(q):
                    assert Z.product_basis(u, v) == Z.product_via_classes(u, v)


def test_grading():
    Z = QuotientAlgebra(named_family("twisted-baxter"))
    for u in Z.basis(2):
        for v in Z.basis(3):
            assert Z.product(u, v).degrees() == {5}


def test_degree_zero_and_one_are_one_dimensional():
    for name in ("tamari", "descent", "twisted-baxter", "snk 3", "pnk 3"):
        Z = QuotientAlgebra(named_family(name))
        assert len(Z.basis(0)) == len(Z.basis(1)) == 1


def test_axioms_small():
    assert check_axioms(MRAlgebra(), 4).ok
    assert check_axioms(QuotientAlgebra(named_family("tamari")), 5).ok


def test_axiom_degree_guard():
    with pytest.raises(ValueError):
        check_axioms(MRAlgebra(), 7)


def test_off_by_one_shifted_product_breaks_axioms(monkeypatch):
    def shifted_wrong(u, v):
        # one letter too few of the shifted v is moved in front of u
        p, q = len(u), len(v)
        shifted = tuple(p + w for w in v)
        cut = max(q - 1, 0)
        return shifted[:cut] + tuple(u) + shifted[cut:]

    monkeypatch.setattr(hopf, "ltimes", shifted_wrong)
    rep = check_axioms(MRAlgebra(), 3)
    assert not rep.ok
    assert rep.first_failure() is not None


class _BrokenQuotient(QuotientAlgebra):
    """Tamari classes in degree 4 only, singletons elsewhere."""

    def __init__(self):
        super().__init__(H())
        self.name = "broken"

    def _theta(self, n):
        return family_congruence(H("312"), 4) if n == 4 else trivial_congruence(n)

    def basis(self, n):
        return list(self._theta(n).bottoms)

    def is_bottom(self, x):
        return self._theta(len(x)).is_bottom(x)

    def class_of(self, x):
        return sorted(self._theta(len(x)).class_members(x))


def test_broken_family_fails_and_localizes():
    rep = check_axioms(_BrokenQuotient(), 5)
    assert not rep.ok
    axiom, where = rep.first_failure()
    assert axiom in {"product routes", "morphism", "comorphism", "associativity", "compatibility"}
    assert where


def test_printing_and_json():
    v = GradedVector({P("21"): -2, (): 1, P("1"): 3})
    assert str(v) == "+1·∅ +3·1 -2·21"
    assert v.to_json() == [["1", ""], ["3", "1"], ["-2", "21"]]
    t = TensorVector({((), P("1")): 1})
    assert json.loads(json.dumps(t.to_json())) == [["1", "", "1"]]
    assert str(GradedVector()) == "0"


def test_linear_algebra_of_vectors():
    a, b = vec("12"), vec("21")
    assert a + b - b == a
    assert (a * 3)[P("12")] == 3
    assert -a + a == GradedVector()
    assert z_coproduct(named_family("tamari"), P("1")) == TensorVector({((), P("1")): 1, (P("1"), ()): 1})
