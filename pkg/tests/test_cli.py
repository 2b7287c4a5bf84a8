import json
from pathlib import Path

import jsonschema
import pytest

from commcalc.cli import UsageError, main, run
from commcalc.words import Alphabet, parse_word

DOCS = Path(__file__).resolve().parent.parent / "docs"
SCHEMA = json.loads((DOCS / "schema.json").read_text())


def ok(argv):
    result, code = run(argv)
    jsonschema.validate(result, SCHEMA)
    assert code == 0, result
    return result["payload"]


def test_expand():
    p = ok(["expand", "--gens", "x,y", "--word", "[x,y]", "--degree", "2"])
    assert p["terms"] == {"xy": "1", "yx": "-1"}
    assert p["constant"] == "1"


def test_weight_identity():
    assert ok(["weight", "--gens", "x,y", "--word", "1"])["weight"] == "identity"


def test_weight_value():
    assert ok(["weight", "--gens", "x,y,z", "--word", "[[x,y],z]"])["weight"] == "3"


def test_class():
    p = ok(["class", "--gens", "x,y,z", "--word", "[[x,y],z]", "--degree", "3"])
    assert p["coords"] == {"xyz": "1", "xzy": "1"}
    assert p["terms"] == ["1*[x,[y,z]]", "1*[[x,z],y]"]


def test_class_weight_too_low():
    result, code = run(["class", "--gens", "x,y", "--word", "x", "--degree", "2"])
    assert code == 1 and result["status"] == "weight_too_low"


def test_lyndon_basis():
    p = ok(["lyndon-basis", "--gens", "x,y", "--degree", "3"])
    assert p["words"] == ["xxy", "xyy"] and p["count"] == "2"


def test_snf():
    p = ok(["snf", "--matrix", "2,0;0,3"])
    assert p["invariant_factors"] == ["1", "6"]


def test_homology_and_file(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("# comment\ngens: x\nr: x^2\n")
    p = ok(["homology", "--file", str(f)])
    assert p["h1"] == "Z/2" and p["h2_free_rank"] == "0"


def test_cockcroft_check():
    p = ok(["cockcroft-check", "--gens", "x,y,z", "--r", "[x^2,y]", "--s", "[y^3,z]", "--s", "[z^5,x]"])
    assert p["certificate"]["n"] == "2"
    assert p["efficiency"]["efficient"] is True


def test_cockcroft_failures():
    result, code = run(["cockcroft-check", "--gens", "x,y", "--r", "[x,y]", "--s", "[x,y^2]"])
    assert code == 1 and result["status"] == "dependent"
    assert result["payload"]["dependency"] in (["-2", "1"], ["2", "-1"])
    result, code = run(["cockcroft-check", "--gens", "x,y", "--r", "x", "--s", "[x,y]"])
    assert code == 1 and result["status"] == "unequal_weights"
    jsonschema.validate(result, SCHEMA)


def test_member_and_witness_check(tmp_path):
    mu = "x z x^-1 y x y^-1 z^-1 y x^-1 y^-1"
    base = ["--gens", "x,y,z", "--r", "[x,y]", "--s", "[y,z]", "--s", "[z,x]", "--word", mu]
    p = ok(["member", *base, "--part", "s"])
    assert p["evidence"]["kind"] == "SearchProved"
    assert set(p["evidence"]["exponent_balance"].values()) == {"0"}
    wfile = tmp_path / "w.json"
    wfile.write_text(json.dumps(p["evidence"]["witness"]))
    q = ok(["witness-check", *base, "--part", "s", "--witness", str(wfile)])
    assert q["valid"] is True
    other = base[:-1] + ["[y,z]"]
    result, code = run(["witness-check", *other, "--part", "s", "--witness", str(wfile)])
    assert code == 1 and result["status"] == "invalid_witness"
    # indices refer to the chosen part; the r part has a single relator
    with pytest.raises(UsageError):
        run(["witness-check", *base, "--part", "r", "--witness", str(wfile)])


def test_member_unknown():
    result, code = run(["member", "--gens", "x,y", "--r", "[x,y]", "--word", "x"])
    assert code == 1 and result["status"] == "unknown"


def test_member_bounds():
    result, code = run(
        ["member", "--gens", "x,y,z", "--r", "[x,y]", "--word", "[x,z]", "--bounds", "max_length=6,max_steps=100"]
    )
    assert code == 1


def test_e_class():
    p = ok([
        "e-class", "--gens", "x,y,z", "--r", "[x,y]", "--s", "[y,z]", "--s", "[z,x]",
        "--word", "x z x^-1 y x y^-1 z^-1 y x^-1 y^-1", "--degree", "3",
    ])
    assert p["vector"]["coords"] == {"xyz": "1", "xzy": "1"} and p["target_exact"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["demo", "example1", "--a", "0"],
        ["demo", "example2", "--c", "0"],
        ["expand", "--gens", "x,y", "--word", "[x,q]"],
        ["snf", "--matrix", "1,2;3"],
        ["member", "--gens", "x", "--r", "x", "--word", "x", "--bounds", "max_steps=0"],
        ["homology", "--file", "/nonexistent/presentation.txt"],
    ],
)
def test_usage_errors(argv, capsys):
    with pytest.raises(UsageError):
        run(argv)
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_demo_example1_scalar():
    p = ok(["demo", "example1", "--a", "2", "--b", "3", "--c", "5"])
    assert p["scalar_found"] == "30" and p["matches_formula"] is True
    assert p["e_vector"]["coords"] == {"xyz": "30", "xzy": "30"}


def test_demo_example2_scalar():
    p = ok(["demo", "example2", "--c", "3"])
    assert p["scalar_found"] == "9" and p["matches_formula"] is True


@pytest.mark.parametrize("name, argv", [("example1", ["demo", "example1"]), ("example2", ["demo", "example2"])])
def test_golden(name, argv):
    golden = json.loads((DOCS / "golden" / f"{name}.json").read_text())
    result, code = run([*argv, "--json"])
    assert code == 0
    assert result == golden
    jsonschema.validate(golden, SCHEMA)


def test_deterministic():
    assert run(["demo", "example1", "--json"]) == run(["demo", "example1", "--json"])


def test_printed_words_reparse(capsys):
    main(["demo", "example1", "--a", "2", "--b", "3", "--c", "5", "--json"])
    payload = json.loads(capsys.readouterr().out)["payload"]
    a = Alphabet("x,y,z")
    mu = parse_word(payload["mu"], a)
    assert parse_word(str(mu), a) == mu
    for part in ("R", "S"):
        for f in payload["membership"][part]["witness"]["factors"]:
            parse_word(f["conjugator"], a)


def test_pretty_output(capsys):
    assert main(["weight", "--gens", "x,y", "--word", "[x,y]"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("weight: ok") and "weight: 2" in out


def test_failure_exit_code(capsys):
    assert main(["cockcroft-check", "--gens", "x,y", "--r", "[x,y]", "--s", "[x,y^2]", "--json"]) == 1
    captured = capsys.readouterr()
    assert json.loads(captured.out)["status"] == "dependent"
    assert "dependent" in captured.err
