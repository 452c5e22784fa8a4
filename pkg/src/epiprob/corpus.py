"""Evidential and practical corpora.

The evidential corpus holds what we take as evidence: logical sentences, a
class taxonomy, memberships, interval statistics and independence
declarations. A sentence enters the practical corpus when its lower
probability relative to the evidential corpus reaches the practical
certainty level ``p``, which is fixed by the widest odds ratio at stake.
Evidence itself enters only if its reliability reaches ``e = sqrt(p)``.

Corpora are immutable; every update returns a new snapshot.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Union

from .credal import Interval, sentence_bounds
from .errors import ConsistencyError, DomainError, EvidenceRejected
from .logic import (Atom, Implies, Not, Sentence, _check_ident, atoms, entails,
                    is_literal, satisfiable)
from .refclass import (Candidate, Membership, StatStatement, TaxonomyFact, Taxonomy,
                       classes_of, direct_inference)

# absorbs LP round-off when comparing a computed lower bound with p
ACCEPT_TOL = 1e-9


@dataclass(frozen=True)
class Thresholds:
    stake_ratio: float
    p: float
    impossibility: float
    e: float

    def as_dict(self):
        return {"stake_ratio": self.stake_ratio, "p": self.p,
                "impossibility": self.impossibility, "e": self.e}


def thresholds_from_stakes(ratio: float) -> Thresholds:
    """Practical-certainty levels implied by ``ratio``:1 stakes.

    >>> t = thresholds_from_stakes(99)
    >>> round(t.p, 6), round(t.impossibility, 6), round(t.e, 6)
    (0.99, 0.01, 0.994987)
    """
    ratio = float(ratio)
    if not math.isfinite(ratio) or ratio <= 1:
        raise DomainError(f"stake ratio must exceed 1, got {ratio}")
    p = ratio / (ratio + 1)
    return Thresholds(ratio, p, 1 / (ratio + 1), math.sqrt(p))


@dataclass(frozen=True, order=True)
class ClassDecl:
    name: str

    def __post_init__(self):
        _check_ident(self.name, "class")


@dataclass(frozen=True, order=True)
class Independence:
    """Two individuals whose attributes are independent."""

    first: str
    second: str

    def __post_init__(self):
        _check_ident(self.first, "individual")
        _check_ident(self.second, "individual")
        if self.first == self.second:
            raise ConsistencyError(f"individual {self.first} declared independent of itself")
        if self.second < self.first:
            a, b = self.second, self.first
            object.__setattr__(self, "first", a)
            object.__setattr__(self, "second", b)


CorpusItem = Union[Sentence, TaxonomyFact, Membership, StatStatement, Independence, ClassDecl]


@dataclass(frozen=True)
class EvidentialCorpus:
    thresholds: Thresholds
    sentences: frozenset = frozenset()
    classes: frozenset = frozenset()
    subsets: frozenset = frozenset()
    memberships: frozenset = frozenset()
    stats: frozenset = frozenset()
    independents: frozenset = frozenset()
    # non-fatal notes from parsing (rejected evidence and the like)
    diagnostics: tuple = field(default=(), compare=False)

    def __post_init__(self):
        for name in ("sentences", "classes", "subsets", "memberships", "stats", "independents"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        object.__setattr__(self, "taxonomy", Taxonomy(self.subsets))
        seen = {}
        for st in self.stats:
            key = (st.attribute, st.refclass)
            if key in seen and seen[key] != st.freq:
                raise ConsistencyError(
                    f"conflicting statistics for {st.attribute} | {st.refclass}: "
                    f"{seen[key]} and {st.freq}")
            seen[key] = st.freq
        for component in _components(self.premises()):
            if not satisfiable(component):
                raise ConsistencyError("evidential corpus is logically inconsistent")

    # logical content -------------------------------------------------

    def individuals(self) -> frozenset:
        out = {m.individual for m in self.memberships}
        for s in self.sentences:
            out |= {a.individual for a in atoms(s)}
        return frozenset(out)

    def premises(self, extra_individuals=()) -> list:
        """Logical sentences plus the membership and taxonomy facts compiled to
        ground atoms and implications."""
        out = set(self.sentences)
        for m in self.memberships:
            for cls in {m.refclass} | self.taxonomy.supers(m.refclass):
                out.add(Atom(cls, m.individual))
        for ind in self.individuals() | frozenset(extra_individuals):
            for fact in self.subsets:
                out.add(Implies(Atom(fact.sub, ind), Atom(fact.sup, ind)))
        return sorted(out, key=str)

    def relevant_premises(self, s: Sentence) -> list:
        """Premises connected to ``s`` through shared atoms.

        The corpus is consistent, so premises sharing no atoms with ``s``
        (directly or transitively) cannot affect whether ``s`` is entailed.
        """
        pool = self.premises({a.individual for a in atoms(s)})
        vocab = set(atoms(s))
        chosen = []
        remaining = [(p, atoms(p)) for p in pool]
        changed = True
        while changed:
            changed = False
            keep = []
            for p, va in remaining:
                if va & vocab:
                    chosen.append(p)
                    vocab |= va
                    changed = True
                else:
                    keep.append((p, va))
            remaining = keep
        return chosen

    # updates -----------------------------------------------------------

    def add(self, item: CorpusItem) -> "EvidentialCorpus":
        """New snapshot with ``item`` added; raises ConsistencyError."""
        if isinstance(item, TaxonomyFact):
            return replace(self, subsets=self.subsets | {item})
        if isinstance(item, Membership):
            return replace(self, memberships=self.memberships | {item})
        if isinstance(item, StatStatement):
            return replace(self, stats=self.stats | {item})
        if isinstance(item, Independence):
            return replace(self, independents=self.independents | {item})
        if isinstance(item, ClassDecl):
            return replace(self, classes=self.classes | {item.name})
        atoms(item)  # TypeError for non-sentences
        return replace(self, sentences=self.sentences | {item})

    def independent_pairs(self):
        return {(i.first, i.second) for i in self.independents}


def _components(premises) -> list:
    """Partition sentences into groups with pairwise disjoint vocabularies."""
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in premises:
        va = sorted(atoms(p))
        for a in va[1:]:
            parent[find(a)] = find(va[0])
    groups = {}
    for p in premises:
        root = find(min(atoms(p)))
        groups.setdefault(root, []).append(p)
    return list(groups.values())


def add_evidence(kb: EvidentialCorpus, item: CorpusItem, error_rate: float) -> EvidentialCorpus:
    """Admit a report whose chance of error is ``error_rate``.

    Raises :class:`EvidenceRejected` when ``1 - error_rate < e`` and
    :class:`ConsistencyError` when the report contradicts the corpus.
    """
    if not 0.0 <= error_rate <= 1.0:
        raise DomainError(f"error rate must lie in [0, 1], got {error_rate}")
    if 1.0 - error_rate < kb.thresholds.e:
        raise EvidenceRejected(item, error_rate, kb.thresholds.e)
    return kb.add(item)


@dataclass(frozen=True)
class Assessment:
    interval: Interval
    provenance: str
    candidate: Optional[Candidate] = None


def assess(kb: EvidentialCorpus, s: Sentence) -> Assessment:
    """Probability interval of ``s`` relative to ``kb`` with its source."""
    premises = kb.relevant_premises(s)
    if entails(premises, s):
        return Assessment(Interval(1.0, 1.0), "entailed")
    if entails(premises, Not(s)):
        return Assessment(Interval(0.0, 0.0), "refuted")
    if is_literal(s):
        interval, cand = direct_inference(kb, s)
        if cand is None:
            return Assessment(interval, "vacuous")
        return Assessment(interval, f"reference class {cand.refclass}", cand)
    marginals = {a: assess(kb, a).interval for a in atoms(s)}
    return Assessment(sentence_bounds(marginals, s, kb.independent_pairs()), "combined")


def prob(kb: EvidentialCorpus, s: Sentence) -> Interval:
    return assess(kb, s).interval


def accepted(kb: EvidentialCorpus, s: Sentence) -> bool:
    # ">= p": lower probability at exactly p is accepted
    return prob(kb, s).lower >= kb.thresholds.p - ACCEPT_TOL


@dataclass(frozen=True)
class PracticalCorpus:
    accepted: tuple
    p: float

    def __contains__(self, s):
        return s in self.accepted

    def __len__(self):
        return len(self.accepted)

    def __iter__(self):
        return iter(self.accepted)


def practical_corpus(kb: EvidentialCorpus, candidates: Iterable[Sentence]) -> PracticalCorpus:
    """The candidates whose lower probability reaches ``p``, in input order."""
    return PracticalCorpus(tuple(s for s in candidates if accepted(kb, s)), kb.thresholds.p)
