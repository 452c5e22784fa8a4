"""Reference classes and direct inference.

A statistical statement says that the frequency of an attribute within a
reference class lies in an interval. Direct inference picks, among the
classes an individual is known to belong to, the one whose statistics
should govern the individual, and returns its interval.

Selection: a more specific class defeats a more general one unless the
general interval is nested inside the specific one (the general statistic
is then simply stronger). Among undefeated candidates the narrowest interval
wins; ties go to the lexicographically first class name.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .credal import Interval
from .errors import ConsistencyError
from .logic import Atom, Not, _check_ident


@dataclass(frozen=True, order=True)
class StatStatement:
    attribute: str
    refclass: str
    freq: Interval

    def __post_init__(self):
        _check_ident(self.attribute, "attribute")
        _check_ident(self.refclass, "class")


@dataclass(frozen=True, order=True)
class TaxonomyFact:
    sub: str
    sup: str

    def __post_init__(self):
        _check_ident(self.sub, "class")
        _check_ident(self.sup, "class")
        if self.sub == self.sup:
            raise ConsistencyError(f"reflexive subset fact for {self.sub}")


@dataclass(frozen=True, order=True)
class Membership:
    individual: str
    refclass: str

    def __post_init__(self):
        _check_ident(self.individual, "individual")
        _check_ident(self.refclass, "class")


@dataclass(frozen=True)
class Candidate:
    refclass: str
    freq: Interval
    provenance: StatStatement


class Taxonomy:
    """Transitive closure of subset facts; cycles are rejected."""

    def __init__(self, facts: Iterable[TaxonomyFact] = ()):
        direct = {}
        for f in facts:
            direct.setdefault(f.sub, set()).add(f.sup)
        self._supers = {}
        state = {}

        def visit(c, path):
            if state.get(c) == "done":
                return self._supers[c]
            if state.get(c) == "active":
                cycle = " -> ".join(path[path.index(c):] + [c])
                raise ConsistencyError(f"taxonomy cycle: {cycle}")
            state[c] = "active"
            out = set()
            for s in sorted(direct.get(c, ())):
                out.add(s)
                out |= visit(s, path + [c])
            state[c] = "done"
            self._supers[c] = frozenset(out)
            return self._supers[c]

        for c in sorted(direct):
            visit(c, [])

    def supers(self, cls) -> frozenset:
        """Strict superclasses of ``cls``."""
        return self._supers.get(cls, frozenset())

    def is_subset(self, sub, sup) -> bool:
        return sub == sup or sup in self.supers(sub)


def classes_of(kb, individual) -> frozenset:
    """Every class the individual belongs to, directly or by closure."""
    out = set()
    for m in kb.memberships:
        if m.individual == individual:
            out.add(m.refclass)
            out |= kb.taxonomy.supers(m.refclass)
    return frozenset(out)


def _split_literal(lit) -> tuple:
    if isinstance(lit, Atom):
        return lit, False
    if isinstance(lit, Not) and isinstance(lit.operand, Atom):
        return lit.operand, True
    raise TypeError(f"direct inference needs an atom or a negated atom, got {lit}")


def candidates_for(kb, a: Union[Atom, Not]) -> list:
    """All (class, interval) pairs that could ground the literal ``a``.

    For a negated atom each statistic contributes its complement interval.
    """
    atom, negated = _split_literal(a)
    classes = classes_of(kb, atom.individual)
    out = []
    for st in sorted(kb.stats):
        if st.attribute == atom.attribute and st.refclass in classes:
            freq = st.freq.complement() if negated else st.freq
            out.append(Candidate(st.refclass, freq, st))
    return out


def defeats(c1: Candidate, c2: Candidate, kb) -> bool:
    if c1.refclass == c2.refclass:
        return False
    return kb.taxonomy.is_subset(c1.refclass, c2.refclass) and not c2.freq.issubset(c1.freq)


def direct_inference(kb, a) -> tuple:
    """``(interval, candidate)`` for the literal; candidate is None if vacuous."""
    cands = candidates_for(kb, a)
    survivors = [c for c in cands
                 if not any(defeats(d, c, kb) for d in cands if d is not c)]
    if not survivors:
        return Interval.vacuous(), None
    # widths compared at 1e-12 so decimal round-off cannot break a tie
    best = min(survivors, key=lambda c: (round(c.freq.width, 12), c.refclass))
    return best.freq, best
