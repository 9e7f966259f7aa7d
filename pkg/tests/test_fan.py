import json
from pathlib import Path

import pytest

from weakcong.congruence import trivial_congruence
from weakcong.families import family_congruence, named_family
from weakcong.fan import (
    FanError,
    RationalCone,
    build_fan,
    chamber_point,
    check_fan_poset_properties,
    class_cone,
    f_vector,
    h_from_covers,
    h_from_f,
    h_vector,
    is_simplicial,
    rays,
    region_cone,
)
from weakcong.linalg import nullspace, primitive, rank
from weakcong.perm import all_perms, inversion_set

GOLDEN = Path(__file__).parent / "data" / "tamari_4_fan.json"


def theta_of(name, n):
    return family_congruence(named_family(name), n)


def P(word):
    return tuple(int(c) for c in word)


def test_exact_linear_algebra():
    assert rank([[1, 2], [2, 4]]) == 1
    (v,) = nullspace([[1, -1, 0], [0, 1, -1]], 3)
    assert primitive(v) == (1, 1, 1)
    assert primitive([0.5, -1.5]) == (1, -3)


def test_region_cones():
    base = region_cone((1, 2, 3))
    assert base.contains((1, 2, 3)) and not base.contains((2, 1, 3))
    top = region_cone((3, 2, 1))
    assert set(top.normals) == {tuple(-a for a in v) for v in base.normals}
    # every chamber's interior point matches its inversion set
    for x in all_perms(4):
        p = chamber_point(x)
        assert region_cone(x).contains_strictly(p)
        assert {(a, b) for a in range(1, 5) for b in range(a + 1, 5) if p[b - 1] < p[a - 1]} == inversion_set(x)


def test_class_cone_examples():
    triv = trivial_congruence(3)
    for x in all_perms(3):
        assert set(class_cone(triv, x).normals) == set(region_cone(x).normals)
    tam = theta_of("tamari", 3)
    cone = class_cone(tam, P("132"))
    assert set(cone.normals) == {(0, 1, -1), (-1, 1, 0)}
    for x in all_perms(3):
        assert cone.contains_strictly(chamber_point(x)) == (x in {P("132"), P("312")})
    full = theta_of("full", 4)
    assert class_cone(full, (1, 2, 3, 4)).normals == ()


def test_trivial_rank_two():
    fan = build_fan(trivial_congruence(3))
    assert len(fan.cones) == 6
    assert fan.lineality_dim == 1
    assert len(fan.rays) == 6 == len(rays(trivial_congruence(3)))
    assert fan.f_vector() == [1, 6, 6]


def test_full_congruence_is_one_cone():
    theta = theta_of("full", 4)
    fan = build_fan(theta)
    assert len(fan.cones) == 1 and fan.lineality_dim == 4
    assert fan.f_vector() == [1] == f_vector(theta)
    with pytest.raises(ValueError):
        rays(theta)


def test_tamari_four():
    theta = theta_of("tamari", 4)
    fan = build_fan(theta)
    assert len(fan.cones) == 14
    assert len(rays(theta)) == 9 == len(fan.rays)
    assert fan.f_vector() == [1, 9, 21, 14] == f_vector(theta)
    assert h_vector(theta) == [1, 6, 6, 1] == h_from_covers(theta)
    assert is_simplicial(theta) and fan.is_simplicial()


def test_descent_fan_is_a_cube():
    for n in range(2, 6):
        theta = theta_of("descent", n)
        assert len(rays(theta)) == 2 * (n - 1)
        assert f_vector(theta)[-1] == 2 ** (n - 1)


def test_twisted_baxter_is_not_simplicial_from_four():
    assert is_simplicial(theta_of("twisted-baxter", 3))
    theta = theta_of("twisted-baxter", 4)
    assert not is_simplicial(theta)
    assert not build_fan(theta).is_simplicial()


def test_h_vector_identity():
    assert h_from_f([1, 6, 6]) == [1, 4, 1]
    assert h_from_f([1, 9, 21, 14]) == [1, 6, 6, 1]
    assert h_from_f([1]) == [1]


@pytest.mark.parametrize("name", ["trivial", "tamari", "twisted-baxter"])
def test_property_report(name):
    rep = check_fan_poset_properties(theta_of(name, 4))
    assert rep.ok, str(rep)
    skipped = {k for k, (s, _) in rep.results.items() if s == "skipped"}
    if name == "twisted-baxter":
        assert skipped == {"dehn-sommerville", "shelling", "flag"}
    else:
        assert not skipped


def test_combinatorial_checks_at_six():
    rep = check_fan_poset_properties(theta_of("tamari", 6), geometric=False)
    assert rep.ok
    assert rep.results["mobius"][0] == "pass"
    assert rep.results["shelling"][0] == "pass"


def test_refinement_tamari_into_descent():
    for n in range(2, 6):
        coarse = build_fan(theta_of("descent", n))
        fine = build_fan(theta_of("tamari", n))
        assert coarse.contains_fan(fine)
        assert not fine.contains_fan(coarse) or n <= 2


def test_interior_points_are_strict():
    fan = build_fan(theta_of("twisted-baxter", 4))
    for cone in fan.cones:
        assert cone.contains_strictly(cone.interior_point())


def test_non_fan_is_rejected():
    theta = theta_of("tamari", 3)
    fan = build_fan(theta, verify=False)
    # shrink one class cone to a single chamber so a region is left uncovered
    fan.cones[1] = region_cone(fan.bottoms[1])
    with pytest.raises(FanError):
        fan._verify_classes()


def test_golden_export():
    golden = json.loads(GOLDEN.read_text())
    data = build_fan(theta_of("tamari", 4)).to_json()
    data["family"] = str(named_family("tamari"))
    assert data == golden
    assert golden["f_vector"] == [1, 9, 21, 14] and golden["h_vector"] == [1, 6, 6, 1]
    assert all(len(c) == 3 for c in golden["maximal_cones"])
    assert golden["rays"] == sorted(golden["rays"])


def test_rational_cone_rays():
    cone = RationalCone(3, [(-1, 1, 0), (0, -1, 1)])
    assert cone.lineality_dim == 1
    assert cone.extreme_rays == [(-2, 1, 1), (-1, -1, 2)]
