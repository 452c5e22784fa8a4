import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from epiprob.errors import CapacityError, VocabularyError
from epiprob.logic import (And, Atom, Implies, Not, Or, World, atoms, conjoin, entails,
                           evaluate, is_tautology, satisfiable)

from oracles import random_sentence, truth_table_entails

A, B, C, D = (Atom(x, "x") for x in "ABCD")


def worlds(vocab):
    vocab = sorted(vocab)
    for bits in itertools.product((False, True), repeat=len(vocab)):
        yield World(dict(zip(vocab, bits)))


def sentences(depth=3):
    leaves = st.sampled_from([A, B, C, D])
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            sub.map(Not),
            st.tuples(sub, sub).map(lambda t: And(*t)),
            st.tuples(sub, sub).map(lambda t: Or(*t)),
            st.tuples(sub, sub).map(lambda t: Implies(*t)),
        ),
        max_leaves=8,
    )


def test_atom_rendering_and_validation():
    assert str(Atom("Fly", "tweety")) == "Fly(tweety)"
    assert Atom("Fly", "tweety") == Atom("Fly", "tweety")
    with pytest.raises(ValueError):
        Atom("9lives", "cat")
    with pytest.raises(ValueError):
        Atom("Fly", "")


@pytest.mark.parametrize("w", list(worlds({A})))
def test_contradiction_and_tautology(w):
    assert evaluate(And(A, Not(A)), w) is False
    assert evaluate(Or(A, Not(A)), w) is True


def test_material_implication_truth_table():
    assert evaluate(Implies(A, B), {A: True, B: False}) is False
    assert evaluate(Implies(A, B), {A: False, B: False}) is True


def test_missing_atom_is_vocabulary_error():
    with pytest.raises(VocabularyError):
        evaluate(And(A, B), {A: True})


def test_entailment_examples():
    assert entails({A, Implies(A, B)}, B)
    assert not entails({Or(A, B)}, A)
    ostrich, bird = Atom("Ostrich", "t"), Atom("Bird", "t")
    assert entails({ostrich, Implies(ostrich, bird)}, bird)


def test_entailment_capacity_guard():
    many = [Atom("P", f"i{k}") for k in range(21)]
    with pytest.raises(CapacityError):
        entails(many, A)
    # exactly at the cap is fine
    assert entails(many[:19], many[0])


def test_str_roundtrip_precedence():
    s = Implies(Or(And(A, Not(B)), C), Implies(D, A))
    assert str(s) == "A(x) & ~B(x) | C(x) -> D(x) -> A(x)"
    assert str(And(A, Or(B, C))) == "A(x) & (B(x) | C(x))"
    assert str(Implies(Implies(A, B), C)) == "(A(x) -> B(x)) -> C(x)"


@given(sentences(), st.data())
def test_negation_and_de_morgan_pointwise(s, data):
    t = data.draw(sentences())
    for w in worlds(atoms(s) | atoms(t)):
        assert evaluate(Not(s), w) == (not evaluate(s, w))
        assert evaluate(Not(And(s, t)), w) == evaluate(Or(Not(s), Not(t)), w)
        assert evaluate(Not(Or(s, t)), w) == evaluate(And(Not(s), Not(t)), w)


@given(sentences(), sentences(), sentences())
def test_entailment_reflexive_transitive_weakening(s, t, u):
    assert entails({s}, s)
    assert entails({s}, Or(s, t))
    if entails({s}, t) and entails({t}, u):
        assert entails({s}, u)


@given(sentences())
def test_tautology_matches_truth_table(s):
    assert is_tautology(s) == truth_table_entails([], s)


@given(st.integers(0, 2**32 - 1))
def test_entails_matches_truth_table_oracle(seed):
    rng = np.random.default_rng(seed)
    vocab = [A, B, C, D]
    premises = [random_sentence(rng, vocab, 2) for _ in range(int(rng.integers(0, 3)))]
    s = random_sentence(rng, vocab, 3)
    assert entails(premises, s) == truth_table_entails(premises, s)


def test_satisfiable_and_conjoin():
    assert satisfiable([A, Implies(A, B)])
    assert not satisfiable([A, Not(A)])
    assert conjoin([A, B, C]) == And(And(A, B), C)
    with pytest.raises(ValueError):
        conjoin([])
