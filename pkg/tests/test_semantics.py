from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rbinc import ThreeValuedInterpretation, TruthValue, is_consistent, minimal_model, parse_rule, parse_rule_base, satisfies3
from rbinc.core import Literal
from rbinc.semantics import UnknownAtom, eval3

from conftest import B1, B3, B6
from strategies import bases, configs
from rbinc.postulates import generate_rule_base
import oracles


def lits(*names):
    from rbinc import parse_literal

    return {parse_literal(n) for n in names}


def test_minimal_model_b3():
    assert minimal_model(parse_rule_base(B3)) == lits("a", "b", "!b")


def test_minimal_model_b6():
    assert minimal_model(parse_rule_base(B6)) == lits("a", "b", "c", "d")


def test_minimal_model_b1():
    assert minimal_model(parse_rule_base(B1)) == lits("platinumCustomer", "mentalCondition", "creditWorthy", "!creditWorthy")


def test_chaining_needs_whole_body():
    assert minimal_model(parse_rule_base("a. a, b -> c.")) == lits("a")
    assert minimal_model(parse_rule_base("a. b. a, b -> c. c -> d.")) == lits("a", "b", "c", "d")


@pytest.mark.parametrize("text,expected", [("a. !a.", False), (B6, True), (B1, False), ("", True)])
def test_is_consistent(text, expected):
    assert is_consistent(parse_rule_base(text)) is expected


def v(**kw):
    return ThreeValuedInterpretation(kw)


def test_eval3_examples():
    assert eval3(v(a="t", b="b"), parse_rule("a -> b")) is TruthValue.B
    assert eval3(v(a="f"), parse_rule("a")) is TruthValue.F
    assert eval3(v(a="t", b="f"), parse_rule("a -> b")) is TruthValue.F
    assert eval3(v(a="f", b="f"), parse_rule("a -> b")) is TruthValue.T
    assert eval3(v(a="t", b="t"), parse_rule("a -> !b")) is TruthValue.F


def test_satisfies3_examples():
    b3 = parse_rule_base(B3)
    assert satisfies3(v(a="t", b="b"), b3)
    assert satisfies3(v(a="f"), [])
    assert not satisfies3(v(a="t", b="t"), b3)


def test_truth_order_and_negation():
    F, B, T = TruthValue.F, TruthValue.B, TruthValue.T
    assert F < B < T
    assert [x.neg() for x in (F, B, T)] == [T, B, F]
    assert [x.designated for x in (F, B, T)] == [False, True, True]
    assert str(B) == "b"


def test_unknown_atom():
    with pytest.raises(UnknownAtom):
        eval3(v(a="t"), parse_rule("a -> z"))


@settings(max_examples=100, deadline=None)
@given(bases, st.data())
def test_minimal_model_monotone(b, data):
    elements = list(b.elements)
    keep = data.draw(st.lists(st.sampled_from(elements), unique=True)) if elements else []
    assert minimal_model(keep) <= minimal_model(b)


@settings(max_examples=100, deadline=None)
@given(bases)
def test_minimal_model_closed(b):
    m = minimal_model(b)
    for r in b:
        if r.body <= m:
            assert r.head in m


def closed(rules, s):
    return all(not r.body <= s or r.head in s for r in rules)


@settings(max_examples=60, deadline=None)
@given(configs.filter(lambda c: c.atom_count <= 4 and c.fact_count + c.rule_count <= 10))
def test_minimal_model_is_intersection_of_closed_sets(config):
    b = generate_rule_base(config)
    space = sorted(Literal(a, p) for a in b.signature for p in (False, True))
    meet = set(space)
    for k in range(len(space) + 1):
        for s in combinations(space, k):
            s = set(s)
            if closed(b, s):
                meet &= s
    assert minimal_model(b) == meet
    assert {oracles.lit(l) for l in minimal_model(b)} == oracles.closure(b)


@settings(max_examples=60, deadline=None)
@given(bases)
def test_two_valued_models_are_closed_and_consistent(b):
    atoms = sorted(b.signature)
    for values in product("tf", repeat=len(atoms)):
        interp = ThreeValuedInterpretation(dict(zip(atoms, values)))
        if not satisfies3(interp, b):
            continue
        true = {Literal(a, p) for a in atoms for p in (False, True) if interp.value(Literal(a, p)) is TruthValue.T}
        assert closed(b, true)
        assert not any(l.complement() in true for l in true)
