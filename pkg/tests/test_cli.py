import io
import json

import pytest

from omegaconst.cli import run

OMEGA_60 = "0.567143290409783872999968662210355549753815787186512508135131"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_omega_text():
    code, out, _ = call("omega", "--digits", "60")
    assert code == 0
    assert out.startswith("# ")
    assert out.count(OMEGA_60) == 2
    assert "|x e^x - 1| <=" in out


def test_omega_json_schema():
    code, out, _ = call("omega", "--digits", "30", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["config"] == {
        "subcommand": "omega", "digits": 30, "method": "both", "x": "1", "terms": 10, "json": True,
    }
    res = doc["result"]
    assert {r["method"] for r in res["results"]} == {"iterate", "newton"}
    for r in res["results"]:
        assert r["digits"] == OMEGA_60[:32]
        assert r["certified_digits"] == 30
        assert float(r["residual_bound"]) < 1e-29
    assert res["enclosures_overlap"] and res["minus_log_contains_zero"] and res["abel_all_contain_one"]


def test_composite_p_is_usage_error():
    code, out, err = call("padic-omega", "--p", "4", "--prec", "10")
    assert code == 2
    assert out == ""
    assert "p must be prime" in err
    code, _, err = call("artin-hasse", "--p", "9")
    assert code == 2 and "p must be prime" in err


def test_bad_flags_exit_2():
    assert call("omega", "--digits", "zero")[0] == 2
    assert call("nonsense")[0] == 2
    assert call("lambert", "--x", "1/2", "--method", "series")[0] == 2


def test_paper_iteration_exit_3_with_report():
    code, out, _ = call("padic-omega", "--p", "3", "--prec", "50", "--method", "paper-iteration", "--json")
    assert code == 3
    res = json.loads(out)["result"]
    assert res["verdict"] == "stagnation"
    assert [t["step"] for t in res["trace"]] == list(range(51))
    assert all(t["distance_valuation"] == 2 for t in res["trace"])


def test_padic_hensel_json():
    code, out, _ = call("padic-omega", "--p", "3", "--prec", "3", "--json")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["value"] == {"p": 3, "precN": 3, "digits": [0, 1, 2]}
    assert res["defect_valuation"] >= 3


def test_lambert_json():
    code, out, _ = call("lambert", "--terms", "4", "--x", "1/4", "--digits", "20", "--json")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["coefficients"] == ["1/1", "-1/1", "3/2", "-8/3"]
    assert res["evaluation"]["method"] == "series"
    assert res["evaluation"]["value"].startswith("0.20388835470224")


def test_artin_hasse_text_and_json():
    code, out, _ = call("artin-hasse", "--p", "2", "--order", "4")
    assert code == 0
    assert "E_2(x) = 1 + 1*x + 1*x^2 + 2/3*x^3 + 2/3*x^4 + O(x^5)" in out
    code, out, _ = call("artin-hasse", "--p", "1", "--order", "4", "--json")
    res = json.loads(out)["result"]
    assert res["coefficients"] == ["1/1", "1/1", "1/2", "1/6", "1/24"]
    assert "integrality" not in res


def test_cf_exit_codes():
    code, out, _ = call("cf", "--digits", "100", "--terms", "40", "--json")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["certified_terms"] == 40
    assert res["partial_quotients"][:6] == [0, 1, 1, 3, 4, 2]
    assert "empirical" in res["label"]
    assert len(res["diagnostics"]) == 40
    code, out, _ = call("cf", "--digits", "20", "--terms", "100", "--csv")
    assert code == 3
    assert "empirical" in out.split("\n")[1]


@pytest.mark.parametrize(
    "argv",
    [
        ("omega", "--digits", "50"),
        ("cf", "--digits", "60", "--json"),
        ("padic-omega", "--p", "5", "--prec", "30", "--method", "series"),
    ],
)
def test_deterministic(argv):
    assert call(*argv) == call(*argv)


def test_out_file(tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = call("artin-hasse", "--p", "3", "--order", "6", "--json", "--out", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["config"]["p"] == 3
