import os
from fractions import Fraction
from pathlib import Path

import pytest

import adl

EXAMPLES = Path(os.environ.get("ADL_EXAMPLES", Path(__file__).resolve().parents[2] / "examples"))


def example(name):
    return adl.load(EXAMPLES / name)


def test_parse_round_trip():
    o = example("chase.adl")
    assert not o.temporal
    assert adl.parse(str(o)) == o
    assert "a" in o.individuals
    assert len(o) == len(o.axioms)


def test_parse_error_carries_position():
    with pytest.raises(adl.ParseError, match="expected"):
        adl.parse("A(a\n")
    assert issubclass(adl.ParseError, adl.AdlError)


def test_satisfiability():
    assert adl.is_satisfiable(example("chase.adl"))
    assert not adl.is_satisfiable(example("clash.adl"))
    assert adl.is_satisfiable(example("chase.adl"), mode="exhaustive")
    with pytest.raises(ValueError):
        adl.is_satisfiable(example("chase.adl"), mode="sideways")


def test_ground_and_translate():
    g = adl.ground(adl.parse("X:{p:q} | A@X sub B@{r:s}"))
    assert g.axioms == ["A@{p:q} sub B@{r:s}"]
    plain, names = adl.translate(example("employment.adl"))
    assert "sub" in plain
    assert "concept" in names


def test_build_and_verify():
    o = example("chase.adl")
    eta = adl.build_model(o)
    assert eta.verify(o) == []
    assert eta.m == len(eta.individuals)
    for v in eta.individuals.values():
        assert sorted(v) == [Fraction(0)] * (eta.m - 1) + [Fraction(1)]
    assert adl.import_model(eta.export("json")) == eta
    assert adl.import_model(eta.export("text")) == eta
    with pytest.raises(adl.Unsatisfiable):
        adl.build_model(example("clash.adl"))


def test_linear_maps_and_transport():
    assert adl.validate_linear_map([[1, 0], [0, 1]])
    assert not adl.validate_linear_map([[1, 0], [0, 0]])
    assert adl.validate_linear_map([["1/2", 0], [0, Fraction(3, 4)]])
    with pytest.raises(adl.DimensionMismatch):
        adl.validate_linear_map([[1, 0, 0]])

    o = adl.parse("A(a)\nR(a, b)\nexists R- sub B")
    eta = adl.build_model(o)
    swap = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    moved = eta.transport(swap)
    assert moved.verify(o) == []
    for axiom in ["A(a)", "B(b)", "R(a, b)", "R(b, a)", "A@{} sub B@{}"]:
        assert eta.satisfies(axiom) == moved.satisfies(axiom)
    with pytest.raises(adl.UnvalidatedMap):
        eta.transport([[0] * 4] * 4)


def test_probes():
    d9 = adl.probe(example("paper_ex9.adl"))
    assert len(d9) == 1
    assert d9[0]["point"] == "mid(a,b)"
    assert d9[0]["coords"] == [Fraction(1, 2), Fraction(1, 2)]
    assert d9[0]["violated"] == "exists R@{time:1} and A sub bot"

    ex10 = example("paper_ex10.adl")
    assert adl.probe(ex10) == []
    assert adl.probe(ex10, role_conj=["R1 and R2 sub R3"])[0]["violated"] == "exists R3 and A sub bot"


def test_temporal():
    ex9 = example("paper_ex9.adl")
    assert len(adl.check_restrictions(ex9)) == 6
    with pytest.raises(adl.RestrictionViolated):
        adl.build_temporal_model(ex9)

    assert adl.temporal_implies("during:[1,3]", "time:2", 1, 5)
    assert not adl.temporal_implies("time:2", "during:[1,3]", 1, 5)
    with pytest.raises(adl.UnsupportedAttribute):
        adl.temporal_implies("before:3", "time:1", 1, 5)

    b = adl.build_temporal_model(adl.parse("A(a)@{time:1}"))
    assert b.check_global() == []
    assert b.times == list(range(max(b.kmin - 1, 0), b.kmax + 2))
    a = b.global_model.individuals["a"]
    assert a in b.at(1).concepts["A@{}"]
    assert "A@{}" not in b.at(0).concepts or a not in b.at(0).concepts["A@{}"]
    assert adl.import_bundle(b.export("json")) == b
    assert adl.import_bundle(b.export("text")) == b
