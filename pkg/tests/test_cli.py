import json
from pathlib import Path

import pytest

from weakcong.cli import closed_form, main

GOLDEN = Path(__file__).parent / "data" / "tamari_4_fan.json"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_count_tamari_with_closed_form(capsys):
    code, out = run(capsys, "count", "--family", "tamari", "--range", "1..8", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert [r["count"] for r in data["counts"]] == [1, 2, 5, 14, 42, 132, 429, 1430]
    assert all(r["count"] == r["expected"] for r in data["counts"])


def test_count_snk(capsys):
    code, out = run(capsys, "count", "--family", "snk 2", "--range", "1..8", "--format", "json")
    assert [r["count"] for r in json.loads(out)["counts"]] == [2 ** (n - 1) for n in range(1, 9)]
    code, out = run(capsys, "count", "--family", "snk 6", "--range", "1..5", "--format", "json")
    assert [r["count"] for r in json.loads(out)["counts"]] == [1, 2, 6, 24, 120]


def test_count_generators(capsys):
    code, out = run(capsys, "count", "--generators", "2413,3412", "--n", "6", "--threads", "1")
    assert code == 0 and out.split() == ["6", "422"]


def test_capacity_guard():
    with pytest.raises(SystemExit):
        main(["count", "--family", "tamari", "--n", "20"])


def test_unknown_family(capsys):
    assert main(["count", "--family", "nope", "--n", "3"]) == 2


def test_bottoms_and_quotient(capsys):
    code, out = run(capsys, "bottoms", "--family", "descent", "--n", "3")
    assert out.strip() == "3: 123 132 213 321"
    code, out = run(capsys, "quotient", "--family", "tamari", "--n", "3", "--format", "json")
    data = json.loads(out)
    assert data["classes"] == [["123"], ["132", "312"], ["213"], ["231"], ["321"]]
    assert len(data["poset"]["elements"]) == 5


def test_hopf_verbs_are_deterministic(capsys):
    code, out = run(capsys, "hopf", "product", "1", "1")
    assert out.strip() == "+1·12 +1·21"
    code, out = run(capsys, "hopf", "coproduct", "213")
    assert out.strip() == "+1·∅ ⊗ 213 +1·1 ⊗ 12 +1·21 ⊗ 1 +1·213 ⊗ ∅"
    code, first = run(capsys, "hopf", "antipode", "21", "--format", "json")
    code, second = run(capsys, "hopf", "antipode", "21", "--format", "json")
    assert first == second and json.loads(first)["terms"] == [["1", "12"]]
    code, out = run(capsys, "hopf", "product", "132", "1", "--family", "tamari", "--format", "json")
    assert json.loads(out)["algebra"] == "H({312})"
    code, out = run(capsys, "hopf", "check", "--family", "descent", "--degree", "4")
    assert code == 0 and "ok" in out


def test_fan_export_matches_golden(tmp_path, capsys):
    out = tmp_path / "fan.json"
    code, _ = run(capsys, "fan", "export", "--family", "tamari", "--n", "4", "--out", str(out))
    assert code == 0
    assert json.loads(out.read_text()) == json.loads(GOLDEN.read_text())


def test_fan_export_full_is_single_cone(capsys):
    code, out = run(capsys, "fan", "export", "--family", "full", "--n", "3", "--format", "json")
    data = json.loads(out)
    assert data["maximal_cones"] == [[]] and data["rays"] == [] and data["lineality_dim"] == 3


def test_fan_verify(capsys):
    code, out = run(capsys, "fan", "verify", "--family", "tamari", "--n", "4", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert data["checks"]["shelling"]["status"] == "pass"


def test_accept_fast_suite(capsys):
    code, out = run(capsys, "accept", "hopf")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[-1] == "2/2 criteria passed"
    assert all(line.startswith("PASS") for line in lines[:-1])


def test_closed_forms():
    assert closed_form("tamari")(5) == 42
    assert closed_form("pnk 3")(8) == 408
    assert closed_form("twisted-baxter")(10) == 326240
    assert closed_form("snk 3")(5) == 54
    assert closed_form("pnk 4") is None
