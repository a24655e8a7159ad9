import json
from importlib import resources

import jsonschema
import pytest

from smallq import cli

SCHEMA = json.loads(resources.files("smallq").joinpath("report_schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    return code, rep


def test_blocks_l3_r6(capsys):
    code, rep = run_json(capsys, "blocks", "--l", "3", "--r", "6")
    assert code == 0
    (cell,) = rep["payload"]["cells"]
    assert len(cell["gamma"]) == 6
    got = sorted((b["size"], b["class"]) for b in cell["blocks"])
    assert got == [(1, "Steinberg-semisimple"), (5, "non-semisimple")]


def test_blocks_semisimple_when_l_exceeds_r(capsys):
    code, rep = run_json(capsys, "blocks", "--l", "5", "--r", "4")
    assert code == 0
    assert all(b["class"] != "non-semisimple" for b in rep["payload"]["cells"][0]["blocks"])


@pytest.mark.parametrize("argv", [
    ("blocks", "--l", "4", "--r", "2"),
    ("blocks", "--l", "3", "--r", "0"),
    ("blocks", "--l", "3", "--r", "x"),
    ("decompose", "--l", "3", "--r", "2", "--field", "fp:11"),
    ("decompose", "--l", "3", "--r", "2", "--field", "gf"),
    ("verify", "--l", "3", "--jobs", "0"),
    ("endo", "--l", "3", "--r", "2", "--seed", "-1"),
    ("frobnicate", "--l", "3"),
    ("blocks", "--r", "2"),
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_even_l_names_the_error(capsys):
    _, _, err = run(capsys, "blocks", "--l", "4", "--r", "2")
    assert "EvenOrSmallL" in err


def test_decompose_examples(capsys):
    code, rep = run_json(capsys, "decompose", "--l", "3", "--r", "3")
    assert code == 0
    cell = rep["payload"]["cells"][0]
    assert cell["catalog"] == "PASS"
    assert sorted((s["kind"], s["dim"], s["multiplicity"]) for s in cell["summands"]) == [
        ("projective", 6, 1), ("simple", 2, 1)]
    code, rep = run_json(capsys, "decompose", "--l", "3", "--r", "1")
    (s,) = rep["payload"]["cells"][0]["summands"]
    assert (s["kind"], s["dim"], s["multiplicity"]) == ("simple", 2, 1)


def test_decompose_cross_field(capsys):
    _, a = run_json(capsys, "decompose", "--l", "3", "--r", "4")
    code, b = run_json(capsys, "decompose", "--l", "3", "--r", "4", "--field", "fp:1000003", "--seed", "7")
    assert code == 0

    def table(rep):
        return sorted((s["label"], s["multiplicity"]) for s in rep["payload"]["cells"][0]["summands"])

    assert table(a) == table(b)


def test_catalog_mismatch_exits_1(capsys, monkeypatch):
    import smallq.weights
    monkeypatch.setattr(smallq.weights, "predicted_catalog", lambda l, r: set())
    code, _, _ = run(capsys, "decompose", "--l", "3", "--r", "2")
    assert code == 1


def test_endo_examples(capsys):
    code, rep = run_json(capsys, "endo", "--l", "3", "--r", "4")
    assert code == 0
    cell = rep["payload"]["cells"][0]
    assert sorted((f["matched"], f["dim"]) for f in cell["factors"]) == [("Fig2", 5), ("k", 1)]
    assert cell["a_observed"] == 1
    _, rep = run_json(capsys, "endo", "--l", "3", "--r", "6")
    assert ("Fig3", 11) in {(f["matched"], f["dim"]) for f in rep["payload"]["cells"][0]["factors"]}
    _, rep = run_json(capsys, "endo", "--l", "5", "--r", "3")
    assert {f["matched"] for f in rep["payload"]["cells"][0]["factors"]} == {"k"}


def test_verify_r3_warns_but_passes(capsys):
    code, rep = run_json(capsys, "verify", "--l", "3", "--rmax", "3")
    assert code == 0
    summary = rep["payload"]["summary"]
    assert summary["5"] == "WARN"
    assert "FAIL" not in summary.values()


def test_verify_small_grid(capsys):
    code, rep = run_json(capsys, "verify", "--l", "3,5,7", "--rmax", "4", "--jobs", "2")
    assert code == 0
    assert len(rep["payload"]["results"]) == 10


def test_determinism(capsys):
    argv = ("endo", "--l", "3", "--r", "3-5", "--seed", "12345", "--format", "json")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def leaves(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from leaves(v)
    elif isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        for v in obj:
            yield from leaves(v)
    else:
        yield obj


@pytest.mark.parametrize("argv", [("blocks", "--l", "3", "--r", "5-6"), ("decompose", "--l", "3", "--r", "4"),
                                  ("endo", "--l", "3", "--r", "4")])
def test_text_and_json_carry_the_same_numbers(capsys, argv):
    _, rep = run_json(capsys, *argv)
    _, text, _ = run(capsys, *argv, "--format", "text")
    rep["config"]["format"] = "text"
    for leaf in leaves(rep):
        if isinstance(leaf, (int, list)) and not isinstance(leaf, bool):
            want = json.dumps(leaf) if isinstance(leaf, list) else str(leaf)
            assert want in text, want


def test_verify_acceptance_restricted_to_one_l(capsys):
    code, rep = run_json(capsys, "verify", "--l", "3", "--acceptance")
    assert code == 0
    assert rep["payload"]["summary"]["9"] == "PASS"
