import pytest

import bfoml


def test_parse_and_print():
    f = bfoml.parse("!E x [] P(x)")
    assert str(bfoml.nnf(f)) == "A x <> !P(x)"
    assert f == bfoml.Formula("!E x [] P(x)")
    assert f.modal_depth == 1
    assert bfoml.classify(bfoml.parse("E x [] P(x)")) == "ExistsBox"
    assert bfoml.free_vars(bfoml.parse("(P(x) & E y [] Q(y))")) == ["x"]


def test_errors():
    with pytest.raises(bfoml.ParseError):
        bfoml.parse("E x [] (P(x)")
    with pytest.raises(bfoml.ArityError):
        bfoml.parse("(P(x) & P(x,y))")
    with pytest.raises(bfoml.FragmentError):
        bfoml.decide("A x [] P(x)", semantics="constant")
    with pytest.raises(bfoml.ResourceLimit):
        bfoml.decide("(E x <> P(x) & E y <> Q(y))", budget=1)
    assert issubclass(bfoml.ParseError, ValueError)


def test_decide_and_check():
    r = bfoml.decide("E x [] P(x)")
    assert r["sat"]
    assert bfoml.validate(r["model"]) is None
    assert bfoml.check(r["model"], r["root"], "E x [] P(x)")
    assert not bfoml.decide("(E x [] P(x) & A y <> !P(y))")["sat"]
    c = bfoml.decide("A x <> E y [] Friend(x,y)", semantics="constant")
    assert c["sat"]
    local = c["model"]["local"]
    assert all(sorted(v) == sorted(c["model"]["domain"]) for v in local.values())


def test_separation():
    f = "((A x [] A y [] !P(x) & A z [] E u <> P(u)) & E v <> T)"
    inc = bfoml.enumerate_sat(f, semantics="increasing")
    assert inc is not None and bfoml.check(inc["model"], "w0", f)
    assert bfoml.enumerate_sat(f, semantics="constant") is None


def test_translation():
    sentence = "EX x . EX y . R(x,y)"
    fo = {"domain": ["a", "b"], "R": [["a", "b"]]}
    assert bfoml.fo_check(fo, sentence)
    psi = bfoml.translate(sentence)
    assert bfoml.is_clean(psi)
    literal = bfoml.witness_model(fo, sentence)
    repaired = bfoml.witness_model(fo, sentence, repaired=True)
    assert len(literal["worlds"]) == 6
    assert not bfoml.check(literal, "v1", psi)
    assert bfoml.check(repaired, "v1", psi)
