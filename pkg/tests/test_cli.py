import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpalie import catalog, cpa, io
from cpalie.cli import main
from strategies import small_rationals

A1 = {"dim": 3, "products": [{"i": 0, "j": 0, "coeffs": {"1": "1"}}, {"i": 0, "j": 1, "coeffs": {"2": "1"}}]}


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_catalog_verbs(capsys):
    code, out, _ = run(["catalog", "list"], capsys)
    assert code == 0 and "heisenberg" in out
    code, out, _ = run(["catalog", "emit", "borel_sl(2)"], capsys)
    data = json.loads(out)
    assert code == 0 and data["dim"] == 2 and data["brackets"] == [{"i": 0, "j": 1, "coeffs": {"0": "-2"}}]
    code, _, err = run(["catalog", "emit", "nope(3)"], capsys)
    assert code == 2 and "nope" in err


def test_validate_broken_algebra(tmp_path, capsys):
    broken = {"dim": 3, "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}, {"i": 1, "j": 0, "coeffs": {"2": "1"}}]}
    code, out, _ = run(["validate", write(tmp_path, "broken.json", broken)], capsys)
    data = json.loads(out)
    assert code == 1 and data["violations"][0]["kind"] == "antisymmetry"
    assert data["violations"][0]["indices"] == [0, 1, 2]
    code, out, _ = run(["validate", "heisenberg"], capsys)
    assert code == 0 and json.loads(out)["ok"]


def test_verify_heisenberg_a_mu(tmp_path, capsys):
    h = write(tmp_path, "heisenberg.json", io.algebra_to_json(catalog.heisenberg()))
    code, out, _ = run(["verify", h, write(tmp_path, "a_mu_1.json", A1)], capsys)
    assert code == 0 and json.loads(out)["ok"]
    bad = {"dim": 3, "products": [{"i": 0, "j": 0, "coeffs": {"0": "1"}}]}
    code, out, _ = run(["verify", h, write(tmp_path, "bad.json", bad)], capsys)
    data = json.loads(out)
    assert code == 1 and data["first_violation"] == {"equation": 6, "triple": [0, 0, 1], "residual": ["0", "0", "-1"]}


def test_classify_borel_inner(tmp_path, capsys):
    b = write(tmp_path, "borel_sl2.json", io.algebra_to_json(catalog.borel_sl(2)))
    code, out, _ = run(["classify", b, "--method", "inner"], capsys)
    data = json.loads(out)
    assert code == 0 and data["kind"] == "ComponentUnion"
    assert "t2^2 - 2*t2" in data["residual_normal_form"]
    assert [c["equations"] for c in data["components"]] == [["t1 = 0", "t2 = 0"], ["t1 = 0", "t2 - 2 = 0"]]
    code, _, err = run(["classify", "heisenberg", "--method", "inner"], capsys)
    assert code == 1 and "NotComplete" in err


def test_chain_inner_decompose(tmp_path, capsys):
    p = write(tmp_path, "a1.json", A1)
    code, out, _ = run(["chain", "heisenberg", p], capsys)
    data = json.loads(out)
    assert code == 0 and [c["dim"] for c in data["chain"]] == [0, 1, 2, 3]
    code, out, _ = run(["inner", "heisenberg", p], capsys)
    assert code == 0 and json.loads(out)["weakly_inner"] is False
    phi = write(tmp_path, "phi.json", {"dim": 2, "matrix": [["-1", "0"], ["0", "1"]]})
    code, out, _ = run(["decompose", "borel_sl(2)", phi], capsys)
    data = json.loads(out)
    assert code == 0 and data["status"] == "pass" and data["h_part"]["dim"] == 2
    rot = write(tmp_path, "rot.json", {"dim": 2, "matrix": [["0", "-1"], ["1", "0"]]})
    code, out, _ = run(["decompose", "abelian(2)", rot], capsys)
    assert code == 1 and json.loads(out)["status"] == "unsupported"


def test_construct_recipes(tmp_path, capsys):
    code, out, _ = run(["construct", "central-z", "borel_sl(3)", "0,1,0,0,0"], capsys)
    assert code == 0 and len(json.loads(out)["products"]) == 3
    code, out, _ = run(["construct", "cocycle", "borel_sl(3)"], capsys)
    assert code == 0 and json.loads(out)["cocycle_space_dim"] == 1
    code, out, _ = run(["construct", "eigenfunctional", "borel_sl(2)", "1,0"], capsys)
    assert code == 0 and json.loads(out)["lambda"] == ["0", "2"]
    code, out, _ = run(["construct", "center-construction", "heisenberg"], capsys)
    assert code == 0 and json.loads(out)["case"] == 1
    code, _, err = run(["construct", "center-construction", "sl(2)"], capsys)
    assert code == 1 and "IsPerfect" in err
    z = write(tmp_path, "z.json", {"dim": 3, "products": []})
    code, out, _ = run(["construct", "componentwise", "heisenberg", write(tmp_path, "a.json", A1), "heisenberg", z], capsys)
    assert code == 0 and json.loads(out)["algebra"]["dim"] == 6
    code, _, _ = run(["construct", "central-z", "borel_sl(3)", "1,2"], capsys)
    assert code == 2


def test_usage_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    capsys.readouterr()
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["validate", str(bad)], capsys)
    assert code == 2 and "invalid JSON" in err
    floaty = write(tmp_path, "f.json", {"dim": 1, "products": [{"i": 0, "j": 0, "coeffs": {"0": 0.5}}]})
    code, _, _ = run(["verify", "abelian(1)", floaty], capsys)
    assert code == 2
    code, _, _ = run(["suite", "--case", "NOPE"], capsys)
    assert code == 2


def test_suite_json_is_byte_stable():
    cmd = [sys.executable, "-m", "cpalie", "suite", "--json"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b
    cases = json.loads(a)
    assert [c["id"] for c in cases] == sorted(c["id"] for c in cases)
    assert all(c["status"] == "pass" for c in cases)


# round trips ------------------------------------------------------------------------


@pytest.mark.parametrize("key", ["heisenberg", "sl(3)", "example_3_6", "sl2_semidirect_V(3)", "parabolic_sl(4,1,3)"])
def test_algebra_round_trip(key):
    L = catalog.make(key)
    text = io.dumps(io.algebra_to_json(L))
    back = io.algebra_from_json(json.loads(text))
    assert back == L
    assert io.dumps(io.algebra_to_json(back)) == text


@settings(max_examples=50)
@given(st.integers(1, 4), st.data())
def test_product_round_trip(n, data):
    prods = {}
    for i in range(n):
        for j in range(i, n):
            if data.draw(st.booleans()):
                prods[(i, j)] = tuple(data.draw(st.lists(small_rationals, min_size=n, max_size=n)))
    P = cpa.CPAProduct.from_products(n, prods)
    text = io.dumps(io.product_to_json(P))
    assert io.product_from_json(json.loads(text)) == P


@given(small_rationals)
def test_rational_strings(x):
    assert io.parse_rational(io.format_fraction(x)) == x
    assert io.parse_rational(str(x.numerator) + "/" + str(x.denominator)) == x
    assert isinstance(io.parse_rational(3), Fraction)
