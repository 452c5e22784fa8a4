"""Ground propositional sentences over ``Attr(ind)`` atoms.

Semantics are classical. Entailment is decided by enumerating every world
of the combined vocabulary; the enumeration is vectorised with numpy so the
20-atom cap stays cheap.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

import numpy as np

from .errors import CapacityError, VocabularyError

MAX_ENTAILMENT_ATOMS = 20

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _check_ident(name, what):
    if not isinstance(name, str) or not _IDENT.match(name):
        raise ValueError(f"invalid {what} identifier: {name!r}")


@dataclass(frozen=True, order=True)
class Atom:
    attribute: str
    individual: str

    def __post_init__(self):
        _check_ident(self.attribute, "attribute")
        _check_ident(self.individual, "individual")

    def __str__(self):
        return f"{self.attribute}({self.individual})"


@dataclass(frozen=True)
class Not:
    operand: "Sentence"

    def __str__(self):
        return "~" + _render(self.operand, _PREC_NOT)


@dataclass(frozen=True)
class And:
    left: "Sentence"
    right: "Sentence"

    def __str__(self):
        return f"{_render(self.left, _PREC_AND)} & {_render(self.right, _PREC_AND + 1)}"


@dataclass(frozen=True)
class Or:
    left: "Sentence"
    right: "Sentence"

    def __str__(self):
        return f"{_render(self.left, _PREC_OR)} | {_render(self.right, _PREC_OR + 1)}"


@dataclass(frozen=True)
class Implies:
    antecedent: "Sentence"
    consequent: "Sentence"

    def __str__(self):
        # right-associative
        return (f"{_render(self.antecedent, _PREC_IMPLIES + 1)} -> "
                f"{_render(self.consequent, _PREC_IMPLIES)}")


Sentence = Union[Atom, Not, And, Or, Implies]

_PREC_IMPLIES, _PREC_OR, _PREC_AND, _PREC_NOT, _PREC_ATOM = range(5)


def _prec(s):
    return {Implies: _PREC_IMPLIES, Or: _PREC_OR, And: _PREC_AND,
            Not: _PREC_NOT, Atom: _PREC_ATOM}[type(s)]


def _render(s, context):
    text = str(s)
    return f"({text})" if _prec(s) < context else text


def conjoin(sentences: Iterable[Sentence]) -> Sentence:
    """Left-nested conjunction of a nonempty iterable."""
    it = iter(sentences)
    try:
        out = next(it)
    except StopIteration:
        raise ValueError("conjoin() of no sentences") from None
    for s in it:
        out = And(out, s)
    return out


def disjoin(sentences: Iterable[Sentence]) -> Sentence:
    it = iter(sentences)
    try:
        out = next(it)
    except StopIteration:
        raise ValueError("disjoin() of no sentences") from None
    for s in it:
        out = Or(out, s)
    return out


def atoms(s: Sentence) -> frozenset:
    """Atom vocabulary of ``s``."""
    out = set()
    stack = [s]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node)
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (And, Or)):
            stack.extend((node.left, node.right))
        elif isinstance(node, Implies):
            stack.extend((node.antecedent, node.consequent))
        else:
            raise TypeError(f"not a sentence: {node!r}")
    return frozenset(out)


def vocabulary(sentences: Iterable[Sentence]) -> frozenset:
    out = frozenset()
    for s in sentences:
        out |= atoms(s)
    return out


def is_literal(s: Sentence) -> bool:
    return isinstance(s, Atom) or (isinstance(s, Not) and isinstance(s.operand, Atom))


def negate(s: Sentence) -> Sentence:
    """Negation that strips a double ``~``."""
    return s.operand if isinstance(s, Not) else Not(s)


class World(Mapping):
    """Total truth assignment over a finite atom vocabulary."""

    def __init__(self, assignment: Mapping[Atom, bool]):
        self._values = {a: bool(v) for a, v in assignment.items()}
        for a in self._values:
            if not isinstance(a, Atom):
                raise TypeError(f"world keys must be atoms, got {a!r}")

    def __getitem__(self, atom):
        return self._values[atom]

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def __repr__(self):
        inner = ", ".join(f"{a}={int(v)}" for a, v in sorted(self._values.items()))
        return f"World({inner})"


def evaluate(s: Sentence, w: Mapping[Atom, bool]) -> bool:
    if isinstance(s, Atom):
        try:
            return bool(w[s])
        except KeyError:
            raise VocabularyError(f"atom {s} is not assigned by the world") from None
    if isinstance(s, Not):
        return not evaluate(s.operand, w)
    if isinstance(s, And):
        return evaluate(s.left, w) and evaluate(s.right, w)
    if isinstance(s, Or):
        return evaluate(s.left, w) or evaluate(s.right, w)
    if isinstance(s, Implies):
        return (not evaluate(s.antecedent, w)) or evaluate(s.consequent, w)
    raise TypeError(f"not a sentence: {s!r}")


def truth_table(vocab) -> tuple:
    """All ``2**n`` worlds of an ordered vocabulary as a boolean matrix.

    Returns ``(order, table)`` where ``table[k, i]`` is the value of
    ``order[i]`` in world ``k``.
    """
    order = tuple(sorted(vocab))
    n = len(order)
    idx = np.arange(1 << n, dtype=np.int64)
    table = ((idx[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(bool)
    return order, table


def evaluate_table(s: Sentence, order, table) -> np.ndarray:
    """Vectorised ``evaluate`` over the rows of a truth table."""
    column = {a: i for i, a in enumerate(order)}

    def ev(node):
        if isinstance(node, Atom):
            try:
                return table[:, column[node]]
            except KeyError:
                raise VocabularyError(f"atom {node} is not in the vocabulary") from None
        if isinstance(node, Not):
            return ~ev(node.operand)
        if isinstance(node, And):
            return ev(node.left) & ev(node.right)
        if isinstance(node, Or):
            return ev(node.left) | ev(node.right)
        if isinstance(node, Implies):
            return ~ev(node.antecedent) | ev(node.consequent)
        raise TypeError(f"not a sentence: {node!r}")

    return ev(s)


def _models(premises, extra=()):
    premises = tuple(premises)
    vocab = vocabulary(premises) | vocabulary(extra)
    if len(vocab) > MAX_ENTAILMENT_ATOMS:
        raise CapacityError(
            f"vocabulary of {len(vocab)} atoms exceeds the limit of {MAX_ENTAILMENT_ATOMS}"
        )
    order, table = truth_table(vocab)
    mask = np.ones(len(table), dtype=bool)
    for p in premises:
        mask &= evaluate_table(p, order, table)
    return order, table, mask


def entails(premises: Iterable[Sentence], s: Sentence) -> bool:
    """True iff every world satisfying all premises satisfies ``s``."""
    order, table, mask = _models(premises, (s,))
    if not mask.any():
        return True
    return bool(evaluate_table(s, order, table)[mask].all())


def satisfiable(sentences: Iterable[Sentence]) -> bool:
    _, _, mask = _models(sentences)
    return bool(mask.any())


def is_tautology(s: Sentence) -> bool:
    return entails((), s)
