import json

import pytest

import wcop


def test_classify_polynomial_symbol():
    doc = wcop.classify("1", "x^2+1")
    assert doc["tool"] == "wcop"
    assert doc["verdicts"]["power_bounded"]["value"] == "Yes"
    assert doc["verdicts"]["iterates_to_zero"]["value"] == "Yes"
    assert doc["verdicts"]["power_bounded"]["rationale"][0]["citation"]


def test_classify_translation_and_exp():
    assert wcop.classify("1/2", "x+1")["verdicts"]["power_bounded"]["value"] == "Yes"
    assert wcop.classify("2", "x+1")["verdicts"]["power_bounded"]["value"] == "No"
    doc = wcop.classify("exp(x)", "exp(x)")
    assert doc["verdicts"]["acts_on_S"]["value"] == "Yes"
    assert doc["verdicts"]["power_bounded"]["value"] == "Yes"


def test_classify_is_deterministic():
    a = wcop.classify("x^3-2", "x^2+1")
    b = wcop.classify("x^3-2", "x^2+1")
    assert json.dumps(a) == json.dumps(b)


def test_errors():
    with pytest.raises(wcop.ParseError):
        wcop.classify("x+", "x")
    with pytest.raises(wcop.DimensionMismatch):
        wcop.classify("1", "x", dim=2)
    with pytest.raises(wcop.Error):
        wcop.exists_q("exp(x)", "x", "1")


def test_expr():
    e = wcop.Expr("x^3 + 1")
    assert str(e.derivative([1])) == str(wcop.Expr("3*x^2"))
    assert e.compose([wcop.Expr("x+1")]) == wcop.Expr("(x+1)^3 + 1")
    assert e.evaluate([2.0]) == pytest.approx(9.0)
    assert (e * e).is_polynomial()
    assert not wcop.Expr("exp(x)").is_exp_free()


def test_exact_helpers():
    assert wcop.exists_q("x^3", "x^2+1", "1") == "2"
    assert wcop.exists_q("0", "x", "1") == "0"
    assert wcop.has_fixed_point("x^2")
    assert not wcop.has_fixed_point("x^2+1")


def test_exp_inequality():
    r = wcop.check_exp_inequality(alphas=[1], n_min=1, n_max=5)
    assert r["holds"]
    assert r["n_alpha"]["1"] == 2


def test_corpus_and_cli():
    passed, entries, mismatches = wcop.run_corpus()
    assert passed == entries == len(wcop.corpus())
    assert mismatches == []
    _, _, mismatches = wcop.run_corpus(["pb.translation"])
    assert ("shift-two", "power_bounded") in mismatches
    code, out, _ = wcop.cli(["classify", "--psi", "x", "--phi", "x+1", "--format", "json"])
    assert code == 0
    assert json.loads(out)["verdicts"]["topologizable"]["value"] == "No"
    assert wcop.cli(["classify", "--psi", "x+"])[0] == 2
